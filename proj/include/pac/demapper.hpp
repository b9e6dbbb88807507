#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "llr.hpp"
#include "polar.hpp"

namespace pac {

// Soft-output demapper over the polarization butterfly with full
// intermediate-LLR retention: N*(log2 N + 1) soft values plus the matching
// partial-sum lattice. An entry at level s, offset j depends only on hard
// decisions of leaves < aligned_down(j, 2^s), so backtracking never has to
// recompute anything: retreat just moves the cursor, and each forward entry
// into a leaf rewrites exactly the entries on its own refresh path.
class LlrLattice {
public:
    explicit LlrLattice(const std::vector<double>& channel_llrs)
        : n_(log2_exact(channel_llrs.size())),
          N_(channel_llrs.size()),
          llr_((static_cast<std::size_t>(n_) + 1) * channel_llrs.size()),
          psum_((static_cast<std::size_t>(n_) + 1) * channel_llrs.size(), 0) {
        for (std::size_t j = 0; j < N_; ++j) llr_[level(n_) + j] = llr_clamp(channel_llrs[j]);
        refresh(0);
    }

    std::size_t size() const { return N_; }

    // 1-based index of the leaf whose soft output is available next.
    std::size_t cursor() const { return cur_ + 1; }

    double soft_out() const {
        if (cur_ >= N_) throw std::logic_error("all leaves already decided");
        return llr_[level(0) + cur_];
    }

    void advance(std::uint8_t u_hat) {
        if (cur_ >= N_) throw std::logic_error("advance past last leaf");
        psum_[level(0) + cur_] = u_hat & 1;
        // fold completed right subtrees upward
        std::size_t i = cur_;
        for (int s = 0; ((i >> s) & 1u) != 0; ++s) {
            std::size_t base = i & ~((std::size_t{2} << s) - 1);
            std::size_t half = std::size_t{1} << s;
            for (std::size_t j = 0; j < half; ++j) {
                psum_[level(s + 1) + base + j] =
                    static_cast<std::uint8_t>(psum_[level(s) + base + j] ^ psum_[level(s) + base + half + j]);
                psum_[level(s + 1) + base + half + j] = psum_[level(s) + base + half + j];
            }
        }
        ++cur_;
        if (cur_ < N_) refresh(cur_);
    }

    void retreat(std::size_t target_leaf /*1-based*/) {
        if (target_leaf < 1 || target_leaf > cur_) throw std::logic_error("retreat target not behind cursor");
        cur_ = target_leaf - 1;
    }

private:
    std::size_t level(int s) const { return static_cast<std::size_t>(s) * N_; }

    // Recompute the soft path into leaf i: one g-step at the lowest level
    // where i sits in a right half, then f-steps down to level 0.
    void refresh(std::size_t i) {
        int c;
        if (i == 0) {
            c = n_;
        } else {
            c = std::countr_zero(i);
            std::size_t half = std::size_t{1} << c;
            std::size_t parent = i - half; // aligned base of the level-(c+1) node
            for (std::size_t j = 0; j < half; ++j) {
                double a = llr_[level(c + 1) + parent + j];
                double b = llr_[level(c + 1) + parent + half + j];
                double sgn = psum_[level(c) + parent + j] ? -1.0 : 1.0;
                llr_[level(c) + i + j] = llr_clamp(b + sgn * a);
            }
        }
        for (int s = c - 1; s >= 0; --s) {
            std::size_t half = std::size_t{1} << s;
            for (std::size_t j = 0; j < half; ++j) {
                double a = llr_[level(s + 1) + i + j];
                double b = llr_[level(s + 1) + i + half + j];
                llr_[level(s) + i + j] = llr_clamp(boxplus2(a, b));
            }
        }
    }

    int n_;
    std::size_t N_;
    std::vector<double> llr_;
    std::vector<std::uint8_t> psum_;
    std::size_t cur_ = 0;
};

} // namespace pac
