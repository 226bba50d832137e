#pragma once

#include "morleyns/geometry.hpp"

#include <functional>

namespace morleyns {

/// Closed-form manufactured solution bundle.  All callbacks are required by
/// the error norms except rot_body_force, which only the rotational load
/// variant needs.
struct ExactSolution {
    std::function<double(const Vec2&)> psi;
    std::function<Vec2(const Vec2&)> grad_psi;
    std::function<Hess2(const Vec2&)> hess_psi;
    std::function<Vec2(const Vec2&)> velocity;
    std::function<Mat2(const Vec2&)> grad_velocity;
    std::function<double(const Vec2&)> vorticity;
    std::function<double(const Vec2&)> pressure;
    std::function<Vec2(const Vec2&)> body_force;
    std::function<double(const Vec2&)> rot_body_force; // may be empty
};

/// Kovasznay flow on [0,1]^2; satisfies the momentum balance with zero body
/// force.  The pressure constant is chosen so the mean over the square
/// vanishes.
ExactSolution kovasznay_solution(double nu);

/// Singular harmonic stream function r^(5/3) sin(5 theta / 3) on the
/// L-shaped domain [-1,1]^2 minus (0,1)x(-1,0), theta measured from the
/// positive y-axis towards the positive x-axis; pressure sin(x) - sin(y)
/// with zero mean.  The body force follows from the momentum balance with
/// nu = 1 (the stream function is harmonic, so the viscous term drops).
ExactSolution lshaped_solution();

/// Polynomial bubble stream function x^2 y^2 (1-x)^2 (1-y)^2 on [0,1]^2 with
/// pressure x^3 y^3 - 1/16 (zero mean); body force and its rotation in
/// closed form for any viscosity.
ExactSolution robustness_solution(double nu);

/// Global quadratic stream function from P2 coefficients in the unscaled
/// monomial basis 1, x, y, x^2, xy, y^2 (Stokes patch tests).
ExactSolution quadratic_solution(const std::array<double, 6>& c);

} // namespace morleyns
