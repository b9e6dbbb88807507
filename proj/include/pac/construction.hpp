#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "channel.hpp"
#include "llr.hpp"
#include "polar.hpp"
#include "profile.hpp"
#include "rng.hpp"

namespace pac {

struct ChannelModel {
    enum class Kind { BiAwgn, Bec };
    Kind kind;
    double param; // Es/N0 (linear) for BiAwgn, erasure probability for Bec

    static ChannelModel biawgn(double esn0) {
        if (esn0 <= 0) throw std::invalid_argument("esn0 must be positive");
        return {Kind::BiAwgn, esn0};
    }
    static ChannelModel bec(double eps) {
        if (eps < 0 || eps > 1) throw std::invalid_argument("erasure probability outside [0,1]");
        return {Kind::Bec, eps};
    }
};

inline double bhattacharyya_base(const ChannelModel& ch) {
    return ch.kind == ChannelModel::Kind::BiAwgn ? std::exp(-ch.param) : ch.param;
}

inline double cutoff_from_z(double z) {
    if (z < 0.0 || z > 1.0) throw std::domain_error("Z outside [0,1]");
    return std::log2(2.0 / (1.0 + z));
}

struct NodeInfo {
    double z = 0;
    double r0 = 0;
    long cap = 0;
    double z_stderr = 0; // 0 for exact (Bec) nodes
};

struct NodeCutoffTree {
    std::size_t N = 0;
    int levels = 0;
    double epsilon = 0;
    std::vector<std::vector<NodeInfo>> nodes; // nodes[s] has 2^s entries, span order

    std::size_t node_len(int s) const { return N >> s; }
    const NodeInfo& node(int s, std::size_t k) const { return nodes[static_cast<std::size_t>(s)][k]; }
    double r0_stderr(int s, std::size_t k) const {
        const auto& nd = node(s, k);
        return nd.z_stderr / (ln2 * (1.0 + nd.z));
    }
};

inline long rate_cap(std::size_t n_bits, double r0, double eps) {
    return static_cast<long>(std::floor(static_cast<double>(n_bits) * r0 + eps));
}

namespace detail {

// Density evolution over `levels` polarization steps under the all-zero
// word with genie partial sums (so the plus branch is a plain sum). One
// frame holds 2^levels channel draws; a level-s node accumulates
// 2^(levels-s) samples of 2^(-z/2) per frame.
inline NodeCutoffTree mc_tree(double esn0, std::size_t N, int levels, double eps,
                              std::uint64_t mc_samples, std::uint64_t seed) {
    std::size_t frame_len = std::size_t{1} << levels;
    std::size_t total = (static_cast<std::size_t>(levels) + 1) * frame_len;
    std::vector<double> acc(total, 0.0), acc2(total, 0.0);
    std::vector<double> buf(frame_len), nxt(frame_len);
    double sigma = std::sqrt(1.0 / (2.0 * esn0));
    double scale = 4.0 * esn0 / ln2;
    auto tally = [&](int s, const std::vector<double>& v) {
        double* a = acc.data() + static_cast<std::size_t>(s) * frame_len;
        double* a2 = acc2.data() + static_cast<std::size_t>(s) * frame_len;
        for (std::size_t j = 0; j < frame_len; ++j) {
            double e = std::exp2(-0.5 * v[j]);
            a[j] += e;
            a2[j] += e * e;
        }
    };
    for (std::uint64_t fr = 0; fr < mc_samples; ++fr) {
        for (std::size_t j = 0; j < frame_len; ++j)
            buf[j] = llr_clamp(scale * (1.0 + sigma * rng::gaussian(seed, fr, j)));
        tally(0, buf);
        std::size_t len = frame_len;
        for (int s = 0; s < levels; ++s, len >>= 1) {
            std::size_t half = len >> 1;
            for (std::size_t base = 0; base < frame_len; base += len) {
                for (std::size_t j = 0; j < half; ++j) {
                    double a = buf[base + j], b = buf[base + half + j];
                    nxt[base + j] = llr_clamp(boxplus2(a, b));
                    nxt[base + half + j] = llr_clamp(a + b);
                }
            }
            buf.swap(nxt);
            tally(s + 1, buf);
        }
    }
    NodeCutoffTree tree;
    tree.N = N;
    tree.levels = levels;
    tree.epsilon = eps;
    tree.nodes.resize(static_cast<std::size_t>(levels) + 1);
    for (int s = 0; s <= levels; ++s) {
        std::size_t count = std::size_t{1} << s;
        std::size_t span = frame_len >> s;
        auto& row = tree.nodes[static_cast<std::size_t>(s)];
        row.resize(count);
        const double* a = acc.data() + static_cast<std::size_t>(s) * frame_len;
        const double* a2 = acc2.data() + static_cast<std::size_t>(s) * frame_len;
        for (std::size_t k = 0; k < count; ++k) {
            double sum = 0.0, sum2 = 0.0;
            for (std::size_t j = 0; j < span; ++j) {
                sum += a[k * span + j];
                sum2 += a2[k * span + j];
            }
            double n = static_cast<double>(mc_samples) * static_cast<double>(span);
            double mean = sum / n;
            double var = std::max(0.0, sum2 / n - mean * mean);
            NodeInfo& nd = row[k];
            nd.z = std::min(mean, 1.0);
            nd.z_stderr = std::sqrt(var / n);
            nd.r0 = cutoff_from_z(nd.z);
            nd.cap = rate_cap(tree.node_len(s), nd.r0, eps);
        }
    }
    return tree;
}

inline NodeCutoffTree bec_tree(double eps_ch, std::size_t N, int levels, double eps_cap) {
    NodeCutoffTree tree;
    tree.N = N;
    tree.levels = levels;
    tree.epsilon = eps_cap;
    tree.nodes.resize(static_cast<std::size_t>(levels) + 1);
    std::vector<double> zs{eps_ch};
    for (int s = 0; s <= levels; ++s) {
        auto& row = tree.nodes[static_cast<std::size_t>(s)];
        row.resize(zs.size());
        for (std::size_t k = 0; k < zs.size(); ++k) {
            NodeInfo& nd = row[k];
            nd.z = zs[k];
            nd.r0 = cutoff_from_z(nd.z);
            nd.cap = rate_cap(tree.node_len(s), nd.r0, eps_cap);
        }
        if (s == levels) break;
        std::vector<double> nz(zs.size() * 2);
        for (std::size_t k = 0; k < zs.size(); ++k) {
            double z = zs[k];
            nz[2 * k] = 2 * z - z * z;
            nz[2 * k + 1] = z * z;
        }
        zs = std::move(nz);
    }
    return tree;
}

} // namespace detail

inline NodeCutoffTree node_cutoff_tree(const ChannelModel& ch, std::size_t N, int levels,
                                       double eps, std::uint64_t mc_samples, std::uint64_t seed) {
    if (levels < 0 || (std::size_t{1} << levels) > N)
        throw std::invalid_argument("levels must satisfy 2^levels <= N");
    log2_exact(N);
    if (ch.kind == ChannelModel::Kind::Bec) return detail::bec_tree(ch.param, N, levels, eps);
    if (mc_samples == 0) throw std::invalid_argument("mc_samples must be positive for BiAwgn");
    return detail::mc_tree(ch.param, N, levels, eps, mc_samples, seed);
}

// Bit-channel cutoff rates, the leaves of the full-depth tree.
inline std::vector<double> bias_vector(const ChannelModel& ch, std::size_t N,
                                       std::uint64_t mc_samples, std::uint64_t seed) {
    int n = log2_exact(N);
    auto tree = node_cutoff_tree(ch, N, n, 0.0, mc_samples, seed);
    std::vector<double> b(N);
    for (std::size_t i = 0; i < N; ++i) b[i] = tree.node(n, i).r0;
    return b;
}

// K most reliable positions (smallest Z), ties toward the larger index.
inline RateProfile polar_profile(const ChannelModel& ch, std::size_t N, std::size_t K,
                                 std::uint64_t mc_samples, std::uint64_t seed) {
    if (K > N) throw std::invalid_argument("K > N");
    int n = log2_exact(N);
    auto tree = node_cutoff_tree(ch, N, n, 0.0, mc_samples, seed);
    std::vector<std::size_t> idx(N);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        double za = tree.node(n, a).z, zb = tree.node(n, b).z;
        if (za != zb) return za < zb;
        return a > b;
    });
    RateProfile p(N);
    for (std::size_t k = 0; k < K; ++k) p.set(idx[k], true);
    return p;
}

// Freeze the excess info bits of every over-cap level-l node, smallest
// positions within the node span first.
inline RateProfile tame_profile(const RateProfile& profile, const NodeCutoffTree& tree, int level) {
    if (level < 0 || level > tree.levels) throw std::invalid_argument("level outside tree");
    if (profile.N() != tree.N) throw std::invalid_argument("profile/tree length mismatch");
    RateProfile out = profile;
    std::size_t span = tree.node_len(level);
    for (std::size_t k = 0; k < (std::size_t{1} << level); ++k) {
        long count = 0;
        for (std::size_t j = 0; j < span; ++j)
            if (out.info(k * span + j)) ++count;
        long excess = count - tree.node(level, k).cap;
        for (std::size_t j = 0; j < span && excess > 0; ++j) {
            if (out.info(k * span + j)) {
                out.set(k * span + j, false);
                --excess;
            }
        }
    }
    return out;
}

class UnsatisfiableConstruction : public std::runtime_error {
public:
    UnsatisfiableConstruction(std::size_t achieved, std::size_t target)
        : std::runtime_error("merge target unreachable without violating caps: reached K=" +
                             std::to_string(achieved) + " of " + std::to_string(target)),
          achieved_K(achieved) {}
    std::size_t achieved_K;
};

// Grow `base` toward target_K with donor positions of the given row weight,
// in increasing position order, skipping positions whose level-l node is at
// its cap. Returns the profile and reports the added positions if asked.
inline RateProfile merge_profiles(const RateProfile& base, const RateProfile& donor,
                                  std::size_t target_K, std::uint64_t weight,
                                  const NodeCutoffTree& tree, int level,
                                  std::vector<int>* added_out = nullptr) {
    if (base.K() > target_K) throw std::invalid_argument("base already exceeds target_K");
    if (base.N() != donor.N() || base.N() != tree.N)
        throw std::invalid_argument("profile/tree length mismatch");
    RateProfile out = base;
    std::size_t span = tree.node_len(level);
    std::vector<long> count(std::size_t{1} << level, 0);
    for (std::size_t i = 0; i < out.N(); ++i)
        if (out.info(i)) ++count[i / span];
    std::size_t k_now = out.K();
    for (std::size_t i = 0; i < out.N() && k_now < target_K; ++i) {
        if (!donor.info(i) || out.info(i)) continue;
        if (row_weight(out.N(), i + 1) != weight) continue;
        std::size_t nodek = i / span;
        if (count[nodek] + 1 > tree.node(level, nodek).cap) continue;
        out.set(i, true);
        ++count[nodek];
        ++k_now;
        if (added_out) added_out->push_back(static_cast<int>(i + 1));
    }
    if (k_now < target_K) throw UnsatisfiableConstruction(k_now, target_K);
    return out;
}

// Built-in arbitrary-rate recipes: tame two weight-threshold profiles at
// their own design points, then merge the donor's weight-w rows into the
// base under the base tree's caps.
struct MergeRecipe {
    std::size_t N = 0;
    std::size_t target_K = 0;
    std::size_t base_rm_K = 0;
    double base_design_db = 0; // Eb/N0 at the base RM rate
    std::size_t donor_rm_K = 0;
    double donor_design_db = 0; // Eb/N0 at the donor RM rate
    int level = 0;
    std::uint64_t weight = 0;
};

inline MergeRecipe standard_merge_recipe(std::size_t N, std::size_t K) {
    if (N == 512 && K == 256) return {512, 256, 256, 1.5, 382, 0.5, 5, 16};
    if (N == 256 && K == 128) return {256, 128, 93, 3.5, 163, 2.0, 4, 16};
    throw std::invalid_argument("no built-in merge recipe for this (N,K)");
}

struct MergedBuild {
    RateProfile profile;
    RateProfile base;
    RateProfile donor;
    NodeCutoffTree base_tree;
    std::vector<int> added;
};

inline MergedBuild build_merged(const MergeRecipe& r, double eps, std::uint64_t mc_samples,
                                std::uint64_t seed) {
    double base_esn0 = ebn0_to_esn0(r.base_design_db, static_cast<double>(r.base_rm_K) / r.N);
    double donor_esn0 = ebn0_to_esn0(r.donor_design_db, static_cast<double>(r.donor_rm_K) / r.N);
    auto base_tree = node_cutoff_tree(ChannelModel::biawgn(base_esn0), r.N, r.level, eps,
                                      mc_samples, seed);
    auto donor_tree = node_cutoff_tree(ChannelModel::biawgn(donor_esn0), r.N, r.level, eps,
                                       mc_samples, seed + 1);
    MergedBuild out{RateProfile(r.N), RateProfile(r.N), RateProfile(r.N), {}, {}};
    out.base = tame_profile(rm_profile(r.N, r.base_rm_K), base_tree, r.level);
    out.donor = tame_profile(rm_profile(r.N, r.donor_rm_K), donor_tree, r.level);
    out.profile = merge_profiles(out.base, out.donor, r.target_K, r.weight, base_tree, r.level,
                                 &out.added);
    out.base_tree = std::move(base_tree);
    return out;
}

} // namespace pac
