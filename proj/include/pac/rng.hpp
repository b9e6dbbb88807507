#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace pac {

// Counter-based streams: every draw is a pure function of (seed, frame, pos),
// so results never depend on how frames are scheduled across workers.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t key(std::uint64_t seed, std::uint64_t frame, std::uint64_t pos) {
    return splitmix64(splitmix64(splitmix64(seed) ^ frame) ^ pos);
}

// uniform in (0,1]
inline double u01(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1p-53;
}

// one standard normal per (seed, frame, pos) via Box-Muller
inline double gaussian(std::uint64_t seed, std::uint64_t frame, std::uint64_t pos) {
    std::uint64_t k = key(seed, frame, pos);
    double u1 = u01(k);
    double u2 = u01(splitmix64(k));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline double uniform(std::uint64_t seed, std::uint64_t frame, std::uint64_t pos) {
    return u01(key(seed, frame, pos));
}

inline std::uint64_t bits(std::uint64_t seed, std::uint64_t frame, std::uint64_t pos) {
    return key(seed, frame, pos);
}

} // namespace rng
} // namespace pac
