#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "llr.hpp"
#include "quadrature.hpp"

namespace pac {

struct ChannelConstants {
    double capacity;   // bits/use
    double dispersion; // bits^2/use
    double cutoff;     // bits/use
};

inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

inline double r0_biawgn(double esn0) {
    if (esn0 <= 0) throw std::invalid_argument("esn0 must be positive");
    return 1.0 - std::log2(1.0 + std::exp(-esn0));
}

// C and V of BPSK on BI-AWGN by Gauss-Hermite integration of the information
// density i(y) = 1 - log2(1 + e^{-L(y)}), L = natural LLR given x=+1.
// The order doubles until both constants move < 1e-9.
inline ChannelConstants biawgn_constants(double esn0, int order = 63) {
    if (esn0 <= 0) throw std::invalid_argument("esn0 must be positive");
    auto moments = [&](int m) {
        auto q = gauss_hermite(m);
        double sigma = std::sqrt(1.0 / (2.0 * esn0));
        double c = 0.0, second = 0.0, wsum = 0.0;
        for (std::size_t k = 0; k < q.nodes.size(); ++k) {
            // y = 1 + sqrt(2)*sigma*t, weight e^{-t^2}; normalize by 1/sqrt(pi)
            double y = 1.0 + std::sqrt(2.0) * sigma * q.nodes[k];
            double lnat = 4.0 * esn0 * y;
            double info = 1.0 - std::log1p(std::exp(-lnat)) / ln2;
            c += q.weights[k] * info;
            second += q.weights[k] * info * info;
            wsum += q.weights[k];
        }
        c /= wsum;
        second /= wsum;
        return std::pair<double, double>{c, second - c * c};
    };
    auto [c, v] = moments(order);
    for (int m = order;; m = 2 * m + 1) {
        if (2 * m + 1 > 2048)
            throw std::runtime_error("quadrature failed to converge at esn0=" + std::to_string(esn0) +
                                     " (order " + std::to_string(m) + ")");
        auto [c2, v2] = moments(2 * m + 1);
        bool done = std::abs(c2 - c) < 1e-9 && std::abs(v2 - v) < 1e-9;
        c = c2;
        v = v2;
        if (done) break;
    }
    return {c, v, r0_biawgn(esn0)};
}

// Normal approximation with the +0.5*log2(N) refinement term.
inline double dispersion_fer(std::size_t N, std::size_t K, double esn0) {
    if (K < 1 || K > N) throw std::invalid_argument("need 1 <= K <= N");
    auto cc = biawgn_constants(esn0);
    double num = static_cast<double>(N) * cc.capacity - static_cast<double>(K) +
                 0.5 * std::log2(static_cast<double>(N));
    return q_function(num / std::sqrt(static_cast<double>(N) * cc.dispersion));
}

} // namespace pac
