#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <pac/construction.hpp>

using namespace pac;

namespace {
// Tree with hand-set caps at a single level, for mechanism tests.
NodeCutoffTree caps_tree(std::size_t N, int level, const std::vector<long>& caps) {
    NodeCutoffTree t;
    t.N = N;
    t.levels = level;
    t.epsilon = 0.1;
    t.nodes.resize(static_cast<std::size_t>(level) + 1);
    t.nodes[static_cast<std::size_t>(level)].resize(caps.size());
    for (std::size_t k = 0; k < caps.size(); ++k)
        t.nodes[static_cast<std::size_t>(level)][k].cap = caps[k];
    return t;
}
} // namespace

TEST_CASE("channel base parameters") {
    CHECK(bhattacharyya_base(ChannelModel::biawgn(1.0)) == Catch::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(bhattacharyya_base(ChannelModel::bec(0.3)) == Catch::Approx(0.3).epsilon(1e-12));
    CHECK_THROWS_AS(ChannelModel::bec(1.5), std::invalid_argument);
    CHECK_THROWS_AS(ChannelModel::biawgn(-1.0), std::invalid_argument);
}

TEST_CASE("cutoff from Z") {
    CHECK(cutoff_from_z(0.0) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(cutoff_from_z(1.0) == Catch::Approx(0.0).margin(1e-12));
    CHECK_THROWS_AS(cutoff_from_z(-0.1), std::domain_error);
    CHECK_THROWS_AS(cutoff_from_z(1.1), std::domain_error);
}

TEST_CASE("rate cap floor rule") {
    CHECK(rate_cap(128, 0.175718680742, 0.1) == 22);
    CHECK(rate_cap(4, 0.476438043942987, 0.1) == 2);
    CHECK(rate_cap(16, 0.0, 0.1) == 0);
    CHECK(rate_cap(16, 1.0, 0.1) == 16);
}

TEST_CASE("BEC recursion values at N=4") {
    auto t = node_cutoff_tree(ChannelModel::bec(0.5), 4, 2, 0.1, 0, 1);
    CHECK(t.node(0, 0).z == Catch::Approx(0.5).epsilon(1e-14));
    CHECK(t.node(1, 0).z == Catch::Approx(0.75).epsilon(1e-14));
    CHECK(t.node(1, 1).z == Catch::Approx(0.25).epsilon(1e-14));
    const double leaf_z[] = {0.9375, 0.5625, 0.4375, 0.0625};
    const double leaf_r0[] = {0.0458036896131248, 0.356143810225275, 0.476438043942987,
                              0.912537158749661};
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(t.node(2, k).z == Catch::Approx(leaf_z[k]).epsilon(1e-14));
        CHECK(t.node(2, k).r0 == Catch::Approx(leaf_r0[k]).epsilon(1e-13));
        CHECK(t.node(2, k).z_stderr == 0.0);
    }
    CHECK(t.node(2, 3).cap == 1); // floor(1*0.9125 + 0.1)
    CHECK(t.node(2, 0).cap == 0);
}

TEST_CASE("BEC bias vector equals the leaf cutoff rates") {
    auto b = bias_vector(ChannelModel::bec(0.5), 4, 0, 1);
    REQUIRE(b.size() == 4);
    CHECK(b[0] == Catch::Approx(0.0458036896131248).epsilon(1e-13));
    CHECK(b[1] == Catch::Approx(0.356143810225275).epsilon(1e-13));
    CHECK(b[2] == Catch::Approx(0.476438043942987).epsilon(1e-13));
    CHECK(b[3] == Catch::Approx(0.912537158749661).epsilon(1e-13));
}

TEST_CASE("BEC polar profile picks the most reliable leaves") {
    CHECK(polar_profile(ChannelModel::bec(0.5), 8, 4, 0, 1).positions() ==
          std::vector<int>{4, 6, 7, 8});
    CHECK(polar_profile(ChannelModel::bec(0.5), 8, 5, 0, 1).positions() ==
          std::vector<int>{4, 5, 6, 7, 8});
}

TEST_CASE("MC root node matches the closed form") {
    // E[2^{-z/2}] over the channel is exactly e^{-Es/N0}.
    auto t = node_cutoff_tree(ChannelModel::biawgn(1.0), 64, 0, 0.1, 400000, 7);
    const auto& root = t.node(0, 0);
    CHECK(root.z_stderr > 0.0);
    CHECK(root.z_stderr < 2e-3);
    CHECK(std::abs(root.z - std::exp(-1.0)) < 4 * root.z_stderr);
}

TEST_CASE("MC level-1 nodes match high-precision references") {
    double esn0 = 0.575761980073764;
    auto t = node_cutoff_tree(ChannelModel::biawgn(esn0), 2, 1, 0.1, 400000, 3);
    // r0(W+) is exact: Z+ = (e^{-Es/N0})^2. r0(W-) reference from 2-D
    // quadrature of the boxplus combine.
    double sm = t.r0_stderr(1, 0), sp = t.r0_stderr(1, 1);
    CHECK(std::abs(t.node(1, 0).r0 - 0.175718680742) < 4 * sm);
    CHECK(std::abs(t.node(1, 1).r0 - 0.603671042515145) < 4 * sp);
    CHECK(t.node(1, 0).r0 < t.node(1, 1).r0);
}

TEST_CASE("MC tree is a pure function of the seed") {
    auto a = node_cutoff_tree(ChannelModel::biawgn(1.0), 8, 2, 0.1, 20000, 5);
    auto b = node_cutoff_tree(ChannelModel::biawgn(1.0), 8, 2, 0.1, 20000, 5);
    auto c = node_cutoff_tree(ChannelModel::biawgn(1.0), 8, 2, 0.1, 20000, 6);
    for (int s = 0; s <= 2; ++s)
        for (std::size_t k = 0; k < (std::size_t{1} << s); ++k)
            CHECK(a.node(s, k).z == b.node(s, k).z);
    CHECK(a.node(2, 0).z != c.node(2, 0).z);
}

TEST_CASE("tree input validation") {
    CHECK_THROWS_AS(node_cutoff_tree(ChannelModel::biawgn(1.0), 8, 4, 0.1, 100, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(node_cutoff_tree(ChannelModel::biawgn(1.0), 8, 2, 0.1, 0, 1),
                    std::invalid_argument);
}

TEST_CASE("taming freezes smallest positions of over-cap nodes") {
    auto rm = rm_profile(8, 4); // info {4,6,7,8}
    CHECK(tame_profile(rm, caps_tree(8, 1, {1, 3}), 1) == rm);
    CHECK(tame_profile(rm, caps_tree(8, 1, {0, 3}), 1).positions() == std::vector<int>{6, 7, 8});
    CHECK(tame_profile(rm, caps_tree(8, 1, {1, 2}), 1).positions() == std::vector<int>{4, 7, 8});
    CHECK(tame_profile(rm, caps_tree(8, 1, {0, 0}), 1).K() == 0);
    CHECK_THROWS_AS(tame_profile(rm, caps_tree(8, 1, {1, 3}), 2), std::invalid_argument);
    CHECK_THROWS_AS(tame_profile(rm_profile(16, 8), caps_tree(8, 1, {1, 3}), 1),
                    std::invalid_argument);
}

TEST_CASE("merge adds donor rows of one weight class under caps") {
    auto base = RateProfile::from_positions(8, {8});
    auto donor = RateProfile::from_positions(8, {4, 6, 7, 8});
    std::vector<int> added;
    auto m = merge_profiles(base, donor, 3, 4, caps_tree(8, 1, {1, 2}), 1, &added);
    CHECK(m.positions() == std::vector<int>{4, 6, 8});
    CHECK(added == std::vector<int>{4, 6});

    added.clear();
    auto m2 = merge_profiles(base, donor, 3, 4, caps_tree(8, 1, {0, 3}), 1, &added);
    CHECK(m2.positions() == std::vector<int>{6, 7, 8});
    CHECK(added == std::vector<int>{6, 7});

    // weight filter: weight 8 from the donor is position 8 only, already present
    CHECK_THROWS_AS(merge_profiles(base, donor, 2, 8, caps_tree(8, 1, {4, 4}), 1),
                    UnsatisfiableConstruction);
}

TEST_CASE("unsatisfiable merge reports the achieved size") {
    auto base = RateProfile::from_positions(8, {8});
    auto donor = RateProfile::from_positions(8, {4, 6, 7, 8});
    try {
        merge_profiles(base, donor, 5, 4, caps_tree(8, 1, {4, 4}), 1);
        FAIL("expected UnsatisfiableConstruction");
    } catch (const UnsatisfiableConstruction& e) {
        CHECK(e.achieved_K == 4);
    }
}

TEST_CASE("built-in merge recipes") {
    auto r = standard_merge_recipe(512, 256);
    CHECK(r.base_rm_K == 256);
    CHECK(r.donor_rm_K == 382);
    CHECK(r.level == 5);
    CHECK(r.weight == 16);
    auto r2 = standard_merge_recipe(256, 128);
    CHECK(r2.base_rm_K == 93);
    CHECK(r2.donor_rm_K == 163);
    CHECK(r2.level == 4);
    CHECK_THROWS_AS(standard_merge_recipe(128, 64), std::invalid_argument);
}

TEST_CASE("node spans are in natural order") {
    auto t = node_cutoff_tree(ChannelModel::bec(0.4), 8, 1, 0.1, 0, 1);
    CHECK(t.node(1, 0).z == Catch::Approx(2 * 0.4 - 0.16).epsilon(1e-14)); // minus branch first
    CHECK(t.node(1, 1).z == Catch::Approx(0.16).epsilon(1e-14));
    CHECK(t.node_len(1) == 4);
}
