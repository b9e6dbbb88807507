#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace pac {

struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights; // for integrals against e^{-t^2} dt
};

// Gauss-Hermite rule of given order. Roots found by Newton on the orthonormal
// Hermite recurrence, bootstrapped by interlacing from lower orders; weights
// via the Christoffel function 1/sum_k p_k(x)^2.
inline Quadrature gauss_hermite(int order) {
    if (order < 1) throw std::invalid_argument("order must be >= 1");
    constexpr double pi_m14 = 0.75112554446494248286; // pi^{-1/4} = p_0
    // recurrence: p_{k+1} = a_k x p_k - b_k p_{k-1}
    std::vector<double> a(static_cast<std::size_t>(order)), b(static_cast<std::size_t>(order));
    for (int k = 0; k < order; ++k) {
        a[static_cast<std::size_t>(k)] = std::sqrt(2.0 / (k + 1));
        b[static_cast<std::size_t>(k)] = std::sqrt(double(k) / (k + 1));
    }
    auto eval = [&](int m, double x, double& pm1_out) {
        double pkm1 = 0.0, pk = pi_m14;
        for (int k = 0; k < m; ++k) {
            double pk1 = a[static_cast<std::size_t>(k)] * x * pk - b[static_cast<std::size_t>(k)] * pkm1;
            pkm1 = pk;
            pk = pk1;
        }
        pm1_out = pkm1;
        return pk;
    };
    std::vector<double> roots{0.0}; // order 1
    for (int m = 2; m <= order; ++m) {
        std::vector<double> guess(static_cast<std::size_t>(m));
        // roots of p_m interlace those of p_{m-1}
        guess.front() = roots.front() - 0.5 - 3.0 / m;
        guess.back() = roots.back() + 0.5 + 3.0 / m;
        for (int i = 1; i + 1 < m; ++i) guess[static_cast<std::size_t>(i)] = 0.5 * (roots[i - 1] + roots[i]);
        std::vector<double> next(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            double x = guess[static_cast<std::size_t>(i)];
            for (int it = 0; it < 100; ++it) {
                double pm1;
                double p = eval(m, x, pm1);
                double dp = std::sqrt(2.0 * m) * pm1;
                double dx = p / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15 * (1.0 + std::abs(x))) break;
            }
            next[static_cast<std::size_t>(i)] = x;
        }
        roots = std::move(next);
    }
    Quadrature q;
    q.nodes = roots;
    q.weights.resize(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        double x = roots[i];
        double sum = 0.0, pkm1 = 0.0, pk = pi_m14;
        for (int k = 0; k < order; ++k) {
            sum += pk * pk;
            double pk1 = a[static_cast<std::size_t>(k)] * x * pk - b[static_cast<std::size_t>(k)] * pkm1;
            pkm1 = pk;
            pk = pk1;
        }
        q.weights[i] = 1.0 / sum;
    }
    return q;
}

} // namespace pac
