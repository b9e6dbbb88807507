#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "llr.hpp"
#include "polar.hpp"
#include "rng.hpp"

namespace pac {

inline double ebn0_to_esn0(double ebn0_db, double rate) {
    if (rate <= 0) throw std::invalid_argument("rate must be positive");
    return rate * std::pow(10.0, ebn0_db / 10.0);
}

// BPSK over BI-AWGN: bit 0 -> +1, bit 1 -> -1, noise variance 1/(2 Es/N0).
// Emits base-2 LLRs: natural LLR 4*y*EsN0 divided by ln 2.
inline std::vector<double> transmit(const BitWord& x, double esn0, std::uint64_t seed,
                                    std::uint64_t frame) {
    if (esn0 <= 0) throw std::invalid_argument("esn0 must be positive");
    double sigma = std::sqrt(1.0 / (2.0 * esn0));
    double scale = 4.0 * esn0 / ln2;
    std::vector<double> llrs(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double y = (x[i] ? -1.0 : 1.0) + sigma * rng::gaussian(seed, frame, i);
        llrs[i] = llr_clamp(scale * y);
    }
    return llrs;
}

// Saturated LLRs of a codeword; the noiseless limit.
inline std::vector<double> transmit_noiseless(const BitWord& x) {
    std::vector<double> llrs(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) llrs[i] = x[i] ? -llr_max : llr_max;
    return llrs;
}

} // namespace pac
