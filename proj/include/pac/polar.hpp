#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace pac {

using BitWord = std::vector<std::uint8_t>;

inline bool is_pow2(std::size_t n) { return n && !(n & (n - 1)); }

inline int log2_exact(std::size_t n) {
    if (!is_pow2(n)) throw std::invalid_argument("length must be a power of two");
    return std::countr_zero(n);
}

// x = u * (n-fold Kronecker power of [[1,0],[1,1]]), natural bit order;
// involution over GF(2), in place.
inline void polar_transform(BitWord& u) {
    std::size_t n = u.size();
    log2_exact(n);
    for (std::size_t h = 1; h < n; h <<= 1)
        for (std::size_t b = 0; b < n; b += h << 1)
            for (std::size_t j = b; j < b + h; ++j)
                u[j] ^= u[j + h];
}

inline BitWord polar_transformed(BitWord u) {
    polar_transform(u);
    return u;
}

// Hamming weight of row i (1-based) of the transform: 2^popcount(i-1).
inline std::uint64_t row_weight(std::size_t /*N*/, std::size_t i) {
    if (i == 0) throw std::invalid_argument("row index is 1-based");
    return std::uint64_t{1} << std::popcount(std::uint64_t{i - 1});
}

} // namespace pac
