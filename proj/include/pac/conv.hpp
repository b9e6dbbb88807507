#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "polar.hpp"

namespace pac {

// Convolutional pre-transform polynomial. Octal string, MSB first: "133" ->
// taps 1,0,1,1,0,1,1 (g0 first). g0 = gm = 1 required so the Toeplitz
// generator is unit upper-triangular (invertible, rate one).
class ConvPoly {
public:
    explicit ConvPoly(const std::string& octal) {
        if (octal.empty()) throw std::invalid_argument("empty polynomial");
        std::vector<std::uint8_t> bits;
        for (char c : octal) {
            if (c < '0' || c > '7') throw std::invalid_argument("not an octal digit");
            int d = c - '0';
            bits.push_back((d >> 2) & 1);
            bits.push_back((d >> 1) & 1);
            bits.push_back(d & 1);
        }
        std::size_t first = 0;
        while (first + 1 < bits.size() && !bits[first]) ++first;
        taps_.assign(bits.begin() + static_cast<std::ptrdiff_t>(first), bits.end());
        if (!taps_.front() || !taps_.back())
            throw std::invalid_argument("polynomial must have g0 = gm = 1");
    }

    std::size_t memory() const { return taps_.size() - 1; }
    const std::vector<std::uint8_t>& taps() const { return taps_; }

    // u_i from the carrier prefix v[0..i]; v may be a partial path as long as
    // entries 0..i are valid.
    std::uint8_t step(const BitWord& v, std::size_t i) const {
        std::uint8_t u = 0;
        std::size_t jmax = std::min(i, memory());
        for (std::size_t j = 0; j <= jmax; ++j) u ^= static_cast<std::uint8_t>(taps_[j] & v[i - j]);
        return u;
    }

    // Contribution of past bits only (taps 1..m); the frozen-branch value.
    std::uint8_t step_past(const BitWord& v, std::size_t i) const {
        std::uint8_t u = 0;
        std::size_t jmax = std::min(i, memory());
        for (std::size_t j = 1; j <= jmax; ++j) u ^= static_cast<std::uint8_t>(taps_[j] & v[i - j]);
        return u;
    }

    BitWord encode(const BitWord& v) const {
        BitWord u(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) u[i] = step(v, i);
        return u;
    }

private:
    std::vector<std::uint8_t> taps_;
};

} // namespace pac
