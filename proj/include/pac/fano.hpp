#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "code.hpp"
#include "demapper.hpp"
#include "llr.hpp"

namespace pac {

// Branch metric for one decoded bit: 1 - log2(1 + 2^{-z*(-1)^u}) - b.
inline double bit_metric(double z, std::uint8_t u, double b) {
    double t = u ? -z : z;
    double pen = t >= 0 ? log2_1p_exp2_neg(t) : -t + log2_1p_exp2_neg(-t);
    return 1.0 - pen - b;
}

struct FanoConfig {
    double delta = 1.0;
    std::vector<double> bias; // per-position cutoff rates b_1..b_N
    std::uint64_t max_visits = std::numeric_limits<std::uint64_t>::max();
};

enum class DecodeOutcome { Completed, VisitBudgetExceeded };

struct DecodeResult {
    BitWord v_hat;
    BitWord u_hat;
    std::uint64_t visits = 0;
    DecodeOutcome outcome = DecodeOutcome::Completed;
};

// Fano search over the irregular code tree: info positions branch on
// v in {0,1} (metric-ordered, v=0 first on ties), frozen positions have the
// single dynamically-frozen branch. T moves in steps of delta; tightening
// happens only on first visits, so no node is forward-searched twice at the
// same threshold.
inline DecodeResult fano_decode(LlrLattice& lat, const CodeSpec& spec, const FanoConfig& cfg) {
    std::size_t N = spec.N();
    if (lat.size() != N) throw std::invalid_argument("lattice/code length mismatch");
    if (cfg.bias.size() != N) throw std::invalid_argument("bias length != N");
    if (cfg.delta <= 0) throw std::invalid_argument("delta must be positive");

    struct Level {
        double bm[2];      // branch metrics, best first
        std::uint8_t v[2]; // carrier bit per branch
        std::uint8_t u[2]; // pre-transformed bit per branch
        int branches;
        int rank; // branch currently taken
    };
    std::vector<Level> node(N);
    std::vector<double> M(N + 1, 0.0); // cumulative metric after d decisions
    DecodeResult res;
    res.v_hat.assign(N, 0);
    res.u_hat.assign(N, 0);

    auto enter = [&](std::size_t d) {
        Level& nd = node[d];
        double z = lat.soft_out();
        std::uint8_t past = spec.g.step_past(res.v_hat, d);
        if (spec.profile.info(d)) {
            double m0 = bit_metric(z, past, cfg.bias[d]);
            double m1 = bit_metric(z, past ^ 1, cfg.bias[d]);
            nd.branches = 2;
            if (m1 > m0) {
                nd.bm[0] = m1; nd.v[0] = 1; nd.u[0] = past ^ 1;
                nd.bm[1] = m0; nd.v[1] = 0; nd.u[1] = past;
            } else {
                nd.bm[0] = m0; nd.v[0] = 0; nd.u[0] = past;
                nd.bm[1] = m1; nd.v[1] = 1; nd.u[1] = past ^ 1;
            }
        } else {
            nd.branches = 1;
            nd.bm[0] = bit_metric(z, past, cfg.bias[d]);
            nd.v[0] = 0;
            nd.u[0] = past;
        }
        nd.rank = 0;
    };

    double T = 0.0;
    std::size_t d = 0;
    enter(0);
    for (;;) {
        Level& nd = node[d];
        double m_next = M[d] + nd.bm[nd.rank];
        if (m_next >= T) {
            // forward move
            ++res.visits;
            res.v_hat[d] = nd.v[nd.rank];
            res.u_hat[d] = nd.u[nd.rank];
            lat.advance(nd.u[nd.rank]);
            bool first_visit = M[d] < T + cfg.delta;
            ++d;
            M[d] = m_next;
            if (d == N) break;
            if (res.visits > cfg.max_visits) {
                res.outcome = DecodeOutcome::VisitBudgetExceeded;
                break;
            }
            if (first_visit)
                while (m_next >= T + cfg.delta) T += cfg.delta;
            enter(d);
        } else {
            // look back, sidestep to a worse branch if one exists
            for (;;) {
                if (d == 0 || M[d - 1] < T) {
                    T -= cfg.delta;
                    node[d].rank = 0;
                    break;
                }
                --d;
                lat.retreat(d + 1);
                if (node[d].rank + 1 < node[d].branches) {
                    ++node[d].rank;
                    break;
                }
            }
        }
    }
    // complete a budget-exhausted path so u_hat stays conv-consistent
    if (res.outcome == DecodeOutcome::VisitBudgetExceeded) {
        for (std::size_t i = d; i < N; ++i) {
            res.v_hat[i] = 0;
            res.u_hat[i] = spec.g.step(res.v_hat, i);
        }
    }
    return res;
}

inline double anv(const std::vector<DecodeResult>& results, std::size_t N) {
    if (results.empty()) throw std::invalid_argument("empty result collection");
    double total = 0;
    for (const auto& r : results) total += static_cast<double>(r.visits);
    return total / (static_cast<double>(results.size()) * static_cast<double>(N));
}

} // namespace pac
