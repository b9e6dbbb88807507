#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "llr.hpp"

namespace pac {

// Finite joint distribution of a channel input X in {1..M} (prior) and a
// finite output alphabet: cond[x][y] = P(y|x).
struct FiniteJointDist {
    std::vector<double> prior;
    std::vector<std::vector<double>> cond;

    std::size_t M() const { return prior.size(); }
    std::size_t Y() const { return cond.empty() ? 0 : cond.front().size(); }

    void validate() const {
        if (prior.empty() || cond.size() != prior.size()) throw std::invalid_argument("shape mismatch");
        double ps = 0;
        for (double p : prior) {
            if (p < 0) throw std::invalid_argument("negative prior");
            ps += p;
        }
        if (std::abs(ps - 1.0) > 1e-9) throw std::invalid_argument("prior does not sum to 1");
        for (const auto& row : cond) {
            if (row.size() != Y()) throw std::invalid_argument("ragged conditional");
            double rs = 0;
            for (double p : row) {
                if (p < 0) throw std::invalid_argument("negative probability");
                rs += p;
            }
            if (std::abs(rs - 1.0) > 1e-9) throw std::invalid_argument("conditional row does not sum to 1");
        }
    }
};

// E[G(X|Y)] under the optimal strategy: guess posteriors in decreasing
// order, ties broken by input index.
inline double expected_guesses(const FiniteJointDist& d) {
    d.validate();
    double total = 0;
    std::vector<double> post(d.M());
    for (std::size_t y = 0; y < d.Y(); ++y) {
        double py = 0;
        for (std::size_t x = 0; x < d.M(); ++x) {
            post[x] = d.prior[x] * d.cond[x][y];
            py += post[x];
        }
        if (py <= 0) continue;
        std::vector<std::size_t> order(d.M());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return post[a] > post[b]; });
        for (std::size_t k = 0; k < order.size(); ++k)
            total += static_cast<double>(k + 1) * post[order[k]];
    }
    return total;
}

inline double massey_lower_bound(double entropy_bits) {
    if (entropy_bits < 2.0) throw std::domain_error("bound stated only for H(X) >= 2");
    return std::exp2(entropy_bits) / 4.0 + 1.0;
}

struct GuessBounds {
    double lower;
    double upper;
};

inline GuessBounds arikan_bounds(const FiniteJointDist& d) {
    d.validate();
    double upper = 0;
    for (std::size_t y = 0; y < d.Y(); ++y) {
        double s = 0;
        for (std::size_t x = 0; x < d.M(); ++x) s += std::sqrt(d.prior[x] * d.cond[x][y]);
        upper += s * s;
    }
    double lower = upper / (1.0 + std::log(static_cast<double>(d.M())));
    return {lower, upper};
}

// Cutoff rate of the single-use channel with input distribution `prior`,
// in bits: -log2 sum_y [sum_x P(x) sqrt(P(y|x))]^2.
inline double cutoff_rate_bits(const FiniteJointDist& d) {
    d.validate();
    double s = 0;
    for (std::size_t y = 0; y < d.Y(); ++y) {
        double inner = 0;
        for (std::size_t x = 0; x < d.M(); ++x) inner += d.prior[x] * std::sqrt(d.cond[x][y]);
        s += inner * inner;
    }
    return -std::log2(s);
}

// Average-computation lower bound 2^{N(R - R0)}; R and R0 both in bits.
inline double guess_lower_bound(std::size_t N, double rate_bits, double r0_bits) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    return std::exp2(static_cast<double>(N) * (rate_bits - r0_bits));
}

} // namespace pac
