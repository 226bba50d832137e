#pragma once

// Test-only reference computations, kept independent of the implementation
// paths they validate.

#include "morleyns/mesh.hpp"
#include "morleyns/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <span>

namespace morleyns::oracle {

/// Moment of x^a y^b over a ccw polygon via the divergence theorem:
/// int_E x^a y^b = 1/(a+1) * sum_e int_e x^(a+1) y^b n_x ds,
/// edge integrals by high-order Gauss-Legendre.
inline double polygon_moment(std::span<const Vec2> loop, int a, int b) {
    double total = 0.0;
    const std::size_t n = loop.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 p = loop[k], q = loop[(k + 1) % n];
        const Vec2 d = q - p;
        const double len = norm(d);
        const Vec2 nrm{d.y / len, -d.x / len}; // outward for ccw
        for (const auto& g : edge_rule(p, q, a + b + 2))
            total += g.w * std::pow(g.p.x, a + 1) * std::pow(g.p.y, b) * nrm.x;
    }
    return total / (a + 1);
}

/// Moment of a scaled monomial pair over a polygon (independent path for
/// mass matrices).
inline double scaled_moment(std::span<const Vec2> loop, const ScaledMonomialBasis& basis,
                            int j, int k) {
    const auto [a1, b1] = monomial_exponents(j);
    const auto [a2, b2] = monomial_exponents(k);
    // expand ((x-xc)/h)^a in powers of x via the binomial theorem
    auto binom = [](int n_, int r_) {
        double v = 1.0;
        for (int i = 0; i < r_; ++i) v = v * (n_ - i) / (i + 1);
        return v;
    };
    const double xc = basis.center().x, yc = basis.center().y, h = basis.diameter();
    double total = 0.0;
    for (int i1 = 0; i1 <= a1; ++i1)
        for (int j1 = 0; j1 <= b1; ++j1)
            for (int i2 = 0; i2 <= a2; ++i2)
                for (int j2 = 0; j2 <= b2; ++j2) {
                    const double coef = binom(a1, i1) * binom(b1, j1) * binom(a2, i2) *
                                        binom(b2, j2) *
                                        std::pow(-xc, a1 - i1 + a2 - i2) *
                                        std::pow(-yc, b1 - j1 + b2 - j2);
                    total += coef * polygon_moment(loop, i1 + i2, j1 + j2);
                }
    return total / std::pow(h, a1 + b1 + a2 + b2);
}

/// Deterministic uniform(-1,1) stream for reproducible randomized tests.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform() { return 2.0 * (double(gen() >> 11) * 0x1.0p-53) - 1.0; }
    Eigen::VectorXd vector(int n) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = uniform();
        return v;
    }
};

} // namespace morleyns::oracle
