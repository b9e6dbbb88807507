#pragma once

#include <stdexcept>

#include "conv.hpp"
#include "polar.hpp"
#include "profile.hpp"

namespace pac {

struct CodeSpec {
    RateProfile profile;
    ConvPoly g;

    CodeSpec(RateProfile p, ConvPoly poly) : profile(std::move(p)), g(std::move(poly)) {}

    std::size_t N() const { return profile.N(); }
    std::size_t K() const { return profile.K(); }

    // d -> v (rate profiling) -> u (pre-transform) -> x (polar transform)
    BitWord encode(const BitWord& d) const {
        BitWord v = profile.insert_data(d);
        BitWord x = g.encode(v);
        polar_transform(x);
        return x;
    }
};

} // namespace pac
