#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <pac/bounds.hpp>
#include <pac/quadrature.hpp>

using namespace pac;

TEST_CASE("Gauss-Hermite order 5 matches the classical table") {
    auto q = gauss_hermite(5);
    REQUIRE(q.nodes.size() == 5);
    const double xs[] = {-2.02018287045609, -0.958572464613819, 0.0, 0.958572464613819,
                         2.02018287045609};
    const double ws[] = {0.0199532420590459, 0.393619323152241, 0.945308720482942,
                         0.393619323152241, 0.0199532420590459};
    for (int i = 0; i < 5; ++i) {
        CHECK(q.nodes[static_cast<std::size_t>(i)] == Catch::Approx(xs[i]).margin(1e-12));
        CHECK(q.weights[static_cast<std::size_t>(i)] == Catch::Approx(ws[i]).margin(1e-12));
    }
}

TEST_CASE("Gauss-Hermite moments of exp(-x^2)") {
    auto q = gauss_hermite(63);
    double sqrt_pi = std::sqrt(std::acos(-1.0));
    for (int k = 0; k <= 8; ++k) {
        double m = 0;
        for (std::size_t i = 0; i < q.nodes.size(); ++i)
            m += q.weights[i] * std::pow(q.nodes[i], 2 * k);
        // E[x^{2k}] under exp(-x^2)/sqrt(pi) is (2k-1)!!/2^k
        double want = 1.0;
        for (int j = 1; j <= k; ++j) want *= (2.0 * j - 1.0) / 2.0;
        CHECK(m / sqrt_pi == Catch::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("quadrature input validation") {
    CHECK_THROWS_AS(gauss_hermite(0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_hermite(-3), std::invalid_argument);
}

TEST_CASE("cutoff rate closed form") {
    CHECK(r0_biawgn(0.575761980073764) == Catch::Approx(0.356350407659322).epsilon(1e-12));
    CHECK(r0_biawgn(1.0) == Catch::Approx(0.548058916916952).epsilon(1e-12));
}

TEST_CASE("capacity and dispersion against numeric integration") {
    // Reference values from a 400k-point Simpson integration of the
    // information density over the Gaussian output law.
    struct Row {
        double esn0, c, v;
    };
    const Row rows[] = {
        {0.25, 0.29048011336081, 0.554436275640005},
        {0.575761980073764, 0.532572817774966, 0.65630497812063},
        {1.0, 0.721451590790302, 0.533271940478593},
        {2.0, 0.912822285774384, 0.222215543522784},
    };
    for (const auto& r : rows) {
        auto cc = biawgn_constants(r.esn0);
        CHECK(cc.capacity == Catch::Approx(r.c).epsilon(5e-8));
        CHECK(cc.dispersion == Catch::Approx(r.v).epsilon(5e-7));
        CHECK(cc.cutoff == Catch::Approx(r0_biawgn(r.esn0)).epsilon(1e-12));
        CHECK(cc.cutoff < cc.capacity);
    }
}

TEST_CASE("capacity is monotone in SNR and approaches 1") {
    double prev = 0;
    for (double e : {0.1, 0.3, 1.0, 3.0, 5.0}) {
        double c = biawgn_constants(e).capacity;
        CHECK(c > prev);
        CHECK(c < 1.0);
        prev = c;
    }
    CHECK(prev > 0.996);
    CHECK(biawgn_constants(5.0).dispersion < biawgn_constants(1.0).dispersion);
}

TEST_CASE("dispersion approximation reference point") {
    CHECK(dispersion_fer(128, 64, 0.99763115748444) ==
          Catch::Approx(6.17391099151602e-05).epsilon(1e-5));
    CHECK(dispersion_fer(128, 64, 0.2) > 0.99);
    CHECK(dispersion_fer(128, 64, 5.0) < 1e-12);
    double lo = dispersion_fer(128, 64, 0.9), hi = dispersion_fer(128, 64, 1.1);
    CHECK(lo > hi);
}

TEST_CASE("Q function basics") {
    CHECK(q_function(0.0) == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(q_function(3.0) + q_function(-3.0) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(q_function(1.0) > q_function(2.0));
}
