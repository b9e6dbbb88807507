#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polar.hpp"

namespace pac {

// Info-position mask over the length-N data carrier. Public position indices
// are 1-based; mask_ is 0-based.
class RateProfile {
public:
    RateProfile() = default;
    explicit RateProfile(std::size_t N) : mask_(N, 0) { log2_exact(N); }

    static RateProfile from_positions(std::size_t N, const std::vector<int>& pos1) {
        RateProfile p(N);
        for (int i : pos1) {
            if (i < 1 || static_cast<std::size_t>(i) > N)
                throw std::out_of_range("profile position out of range");
            p.mask_[static_cast<std::size_t>(i - 1)] = 1;
        }
        return p;
    }

    std::size_t N() const { return mask_.size(); }
    std::size_t K() const { return static_cast<std::size_t>(std::accumulate(mask_.begin(), mask_.end(), 0)); }

    bool info(std::size_t i0) const { return mask_[i0] != 0; }
    void set(std::size_t i0, bool b) { mask_[i0] = b ? 1 : 0; }

    std::vector<int> positions() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < mask_.size(); ++i)
            if (mask_[i]) out.push_back(static_cast<int>(i + 1));
        return out;
    }

    bool operator==(const RateProfile&) const = default;

    BitWord insert_data(const BitWord& d) const {
        if (d.size() != K()) throw std::invalid_argument("data length != K");
        BitWord v(N(), 0);
        std::size_t k = 0;
        for (std::size_t i = 0; i < N(); ++i)
            if (mask_[i]) v[i] = d[k++];
        return v;
    }

    BitWord extract_data(const BitWord& v) const {
        if (v.size() != N()) throw std::invalid_argument("carrier length != N");
        BitWord d;
        d.reserve(K());
        for (std::size_t i = 0; i < N(); ++i)
            if (mask_[i]) d.push_back(v[i]);
        return d;
    }

private:
    std::vector<std::uint8_t> mask_;
};

// K positions of largest row weight; ties within the boundary weight class go
// to the larger position index.
inline RateProfile rm_profile(std::size_t N, std::size_t K) {
    log2_exact(N);
    if (K > N) throw std::invalid_argument("K > N");
    std::vector<std::size_t> idx(N);
    std::iota(idx.begin(), idx.end(), std::size_t{1});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        auto wa = row_weight(N, a), wb = row_weight(N, b);
        if (wa != wb) return wa > wb;
        return a > b;
    });
    RateProfile p(N);
    for (std::size_t k = 0; k < K; ++k) p.set(idx[k] - 1, true);
    return p;
}

inline void save_profile(const RateProfile& p, std::ostream& os) {
    os << p.N() << ' ' << p.K() << '\n';
    for (int i : p.positions()) os << i << '\n';
}

inline void save_profile(const RateProfile& p, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    save_profile(p, f);
}

inline RateProfile load_profile(std::istream& is) {
    std::size_t N = 0, K = 0;
    if (!(is >> N >> K)) throw std::runtime_error("malformed profile header");
    std::vector<int> pos(K);
    for (auto& v : pos)
        if (!(is >> v)) throw std::runtime_error("truncated profile file");
    auto p = RateProfile::from_positions(N, pos);
    if (p.K() != K) throw std::runtime_error("duplicate positions in profile file");
    return p;
}

inline RateProfile load_profile(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return load_profile(f);
}

} // namespace pac
