#pragma once

#include <algorithm>
#include <cmath>

namespace pac {

// All LLRs in this library are base-2: z = log2 P(y|0) - log2 P(y|1).
inline constexpr double llr_max = 60.0;
inline constexpr double ln2 = 0.6931471805599453;

inline double llr_clamp(double z) { return std::clamp(z, -llr_max, llr_max); }

// log2(1 + 2^-x) for x >= 0, stable
inline double log2_1p_exp2_neg(double x) { return std::log1p(std::exp2(-x)) / ln2; }

// Check-node combine in base-2 log domain: log2((1 + 2^(a+b)) / (2^a + 2^b)).
// Stable form valid for all sign combinations.
inline double boxplus2(double a, double b) {
    double s = std::copysign(1.0, a) * std::copysign(1.0, b);
    double m = s * std::min(std::abs(a), std::abs(b));
    return m + log2_1p_exp2_neg(std::abs(a + b)) - log2_1p_exp2_neg(std::abs(a - b));
}

} // namespace pac
