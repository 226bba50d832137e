#include "morleyns/exact.hpp"

#include <cmath>

namespace morleyns {

ExactSolution kovasznay_solution(double nu) {
    const double re = 1.0 / nu;
    const double lam = 0.5 * re - std::sqrt(0.25 * re * re + 4.0 * M_PI * M_PI);
    const double two_pi = 2.0 * M_PI;
    // mean of -exp(2 lam x)/2 over the unit square
    const double pbar = (std::exp(2.0 * lam) - 1.0) / (4.0 * lam);

    ExactSolution s;
    s.psi = [lam, two_pi](const Vec2& p) {
        return p.y - std::exp(lam * p.x) * std::sin(two_pi * p.y) / two_pi;
    };
    s.grad_psi = [lam, two_pi](const Vec2& p) {
        const double e = std::exp(lam * p.x);
        return Vec2{-lam * e * std::sin(two_pi * p.y) / two_pi,
                    1.0 - e * std::cos(two_pi * p.y)};
    };
    s.hess_psi = [lam, two_pi](const Vec2& p) {
        const double e = std::exp(lam * p.x);
        const double sn = std::sin(two_pi * p.y), cs = std::cos(two_pi * p.y);
        return Hess2{-lam * lam * e * sn / two_pi, -lam * e * cs, two_pi * e * sn};
    };
    s.velocity = [lam, two_pi](const Vec2& p) {
        const double e = std::exp(lam * p.x);
        return Vec2{1.0 - e * std::cos(two_pi * p.y), lam / two_pi * e * std::sin(two_pi * p.y)};
    };
    s.grad_velocity = [lam, two_pi](const Vec2& p) {
        const double e = std::exp(lam * p.x);
        const double sn = std::sin(two_pi * p.y), cs = std::cos(two_pi * p.y);
        return Mat2{-lam * e * cs, two_pi * e * sn, lam * lam / two_pi * e * sn, lam * e * cs};
    };
    s.vorticity = [lam, two_pi](const Vec2& p) {
        return (lam * lam - two_pi * two_pi) / two_pi * std::exp(lam * p.x) *
               std::sin(two_pi * p.y);
    };
    s.pressure = [lam, pbar](const Vec2& p) { return -0.5 * std::exp(2.0 * lam * p.x) + pbar; };
    s.body_force = [](const Vec2&) { return Vec2{0.0, 0.0}; };
    return s;
}

ExactSolution lshaped_solution() {
    const double k = 5.0 / 3.0;
    // mean of sin(x) - sin(y) over the L-shaped domain of area 3
    const double pbar = -2.0 * (1.0 - std::cos(1.0)) / 3.0;

    // theta from the +y axis towards +x; the atan2 branch cut sits on the
    // removed quadrant's edge, folded back into the domain range (-pi, pi/2]
    auto polar = [](const Vec2& p, double& r, double& th) {
        r = std::hypot(p.x, p.y);
        th = std::atan2(p.x, p.y);
        if (th > 0.5 * M_PI + 1e-12) th -= 2.0 * M_PI;
    };

    ExactSolution s;
    s.psi = [k, polar](const Vec2& p) {
        double r, th;
        polar(p, r, th);
        return std::pow(r, k) * std::sin(k * th);
    };
    // gradient and Hessian of Im((y + ix)^k) via the complex derivatives
    s.grad_psi = [k, polar](const Vec2& p) {
        double r, th;
        polar(p, r, th);
        if (r == 0.0) return Vec2{0.0, 0.0};
        const double c = k * std::pow(r, k - 1.0);
        return Vec2{c * std::cos((k - 1.0) * th), c * std::sin((k - 1.0) * th)};
    };
    s.hess_psi = [k, polar](const Vec2& p) {
        double r, th;
        polar(p, r, th);
        const double c = k * (k - 1.0) * std::pow(r, k - 2.0);
        const double a = (k - 2.0) * th;
        return Hess2{-c * std::sin(a), c * std::cos(a), c * std::sin(a)};
    };
    s.velocity = [k, polar](const Vec2& p) {
        double r, th;
        polar(p, r, th);
        if (r == 0.0) return Vec2{0.0, 0.0};
        const double c = k * std::pow(r, k - 1.0);
        // curl psi = (psi_y, -psi_x)
        return Vec2{c * std::sin((k - 1.0) * th), -c * std::cos((k - 1.0) * th)};
    };
    s.grad_velocity = [k, polar](const Vec2& p) {
        double r, th;
        polar(p, r, th);
        const double c = k * (k - 1.0) * std::pow(r, k - 2.0);
        const double a = (k - 2.0) * th;
        // rows: grad(psi_y), -grad(psi_x)
        return Mat2{c * std::cos(a), c * std::sin(a), c * std::sin(a), -c * std::cos(a)};
    };
    s.vorticity = [](const Vec2&) { return 0.0; }; // harmonic stream function
    s.pressure = [pbar](const Vec2& p) { return std::sin(p.x) - std::sin(p.y) - pbar; };
    s.body_force = [s_grad_u = s.grad_velocity, s_u = s.velocity](const Vec2& p) {
        const Vec2 conv = s_grad_u(p).apply(s_u(p));
        return Vec2{conv.x + std::cos(p.x), conv.y - std::cos(p.y)};
    };
    return s;
}

namespace {

// forcing split of the polynomial bubble case: f = nu * fA + fB,
// rot f = nu * rA + rB  (momentum balance of the printed solution)
double robust_fA0(double x, double y) {
    return -24 * std::pow(x, 4) * y + 12 * std::pow(x, 4) + 48 * std::pow(x, 3) * y -
           24 * std::pow(x, 3) - 48 * x * x * std::pow(y, 3) + 72 * x * x * y * y -
           48 * x * x * y + 12 * x * x + 48 * x * std::pow(y, 3) - 72 * x * y * y +
           24 * x * y - 8 * std::pow(y, 3) + 12 * y * y - 4 * y;
}

double robust_fA1(double x, double y) {
    return 48 * std::pow(x, 3) * y * y - 48 * std::pow(x, 3) * y + 8 * std::pow(x, 3) -
           72 * x * x * y * y + 72 * x * x * y - 12 * x * x + 24 * x * std::pow(y, 4) -
           48 * x * std::pow(y, 3) + 48 * x * y * y - 24 * x * y + 4 * x -
           12 * std::pow(y, 4) + 24 * std::pow(y, 3) - 12 * y * y;
}

double robust_fB0(double x, double y) {
    const double x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x, x6 = x5 * x, x7 = x6 * x;
    const double y2 = y * y, y3 = y2 * y, y4 = y3 * y, y5 = y4 * y, y6 = y5 * y;
    return 16 * x7 * y6 - 48 * x7 * y5 + 56 * x7 * y4 - 32 * x7 * y3 + 8 * x7 * y2 -
           56 * x6 * y6 + 168 * x6 * y5 - 196 * x6 * y4 + 112 * x6 * y3 - 28 * x6 * y2 +
           72 * x5 * y6 - 216 * x5 * y5 + 252 * x5 * y4 - 144 * x5 * y3 + 36 * x5 * y2 -
           40 * x4 * y6 + 120 * x4 * y5 - 140 * x4 * y4 + 80 * x4 * y3 - 20 * x4 * y2 +
           8 * x3 * y6 - 24 * x3 * y5 + 28 * x3 * y4 - 16 * x3 * y3 + 4 * x3 * y2 +
           3 * x2 * y3;
}

double robust_fB1(double x, double y) {
    const double x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x, x6 = x5 * x;
    const double y2 = y * y, y3 = y2 * y, y4 = y3 * y, y5 = y4 * y, y6 = y5 * y, y7 = y6 * y;
    return 16 * x6 * y7 - 56 * x6 * y6 + 72 * x6 * y5 - 40 * x6 * y4 + 8 * x6 * y3 -
           48 * x5 * y7 + 168 * x5 * y6 - 216 * x5 * y5 + 120 * x5 * y4 - 24 * x5 * y3 +
           56 * x4 * y7 - 196 * x4 * y6 + 252 * x4 * y5 - 140 * x4 * y4 + 28 * x4 * y3 -
           32 * x3 * y7 + 112 * x3 * y6 - 144 * x3 * y5 + 80 * x3 * y4 - 16 * x3 * y3 +
           3 * x3 * y2 + 8 * x2 * y7 - 28 * x2 * y6 + 36 * x2 * y5 - 20 * x2 * y4 +
           4 * x2 * y3;
}

double robust_rA(double x, double y) {
    const double x2 = x * x, x3 = x2 * x, x4 = x3 * x;
    const double y2 = y * y, y3 = y2 * y, y4 = y3 * y;
    return 24 * x4 - 48 * x3 + 288 * x2 * y2 - 288 * x2 * y + 72 * x2 - 288 * x * y2 +
           288 * x * y - 48 * x + 24 * y4 - 48 * y3 + 72 * y2 - 48 * y + 8;
}

double robust_rB(double x, double y) {
    const double x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x, x6 = x5 * x, x7 = x6 * x;
    const double y2 = y * y, y3 = y2 * y, y4 = y3 * y, y5 = y4 * y, y6 = y5 * y, y7 = y6 * y;
    return -96 * x7 * y5 + 240 * x7 * y4 - 224 * x7 * y3 + 96 * x7 * y2 - 16 * x7 * y +
           336 * x6 * y5 - 840 * x6 * y4 + 784 * x6 * y3 - 336 * x6 * y2 + 56 * x6 * y +
           96 * x5 * y7 - 336 * x5 * y6 + 840 * x5 * y4 - 960 * x5 * y3 + 432 * x5 * y2 -
           72 * x5 * y - 240 * x4 * y7 + 840 * x4 * y6 - 840 * x4 * y5 + 440 * x4 * y3 -
           240 * x4 * y2 + 40 * x4 * y + 224 * x3 * y7 - 784 * x3 * y6 + 960 * x3 * y5 -
           440 * x3 * y4 + 48 * x3 * y2 - 8 * x3 * y - 96 * x2 * y7 + 336 * x2 * y6 -
           432 * x2 * y5 + 240 * x2 * y4 - 48 * x2 * y3 + 16 * x * y7 - 56 * x * y6 +
           72 * x * y5 - 40 * x * y4 + 8 * x * y3;
}

} // namespace

ExactSolution robustness_solution(double nu) {
    auto gx = [](double t) { return t * t * (1.0 - t) * (1.0 - t); };
    auto dgx = [](double t) { return 2.0 * t * (1.0 - t) * (1.0 - 2.0 * t); };
    auto d2gx = [](double t) { return 2.0 - 12.0 * t + 12.0 * t * t; };

    ExactSolution s;
    s.psi = [gx](const Vec2& p) { return gx(p.x) * gx(p.y); };
    s.grad_psi = [gx, dgx](const Vec2& p) {
        return Vec2{dgx(p.x) * gx(p.y), gx(p.x) * dgx(p.y)};
    };
    s.hess_psi = [gx, dgx, d2gx](const Vec2& p) {
        return Hess2{d2gx(p.x) * gx(p.y), dgx(p.x) * dgx(p.y), gx(p.x) * d2gx(p.y)};
    };
    s.velocity = [gx, dgx](const Vec2& p) {
        return Vec2{gx(p.x) * dgx(p.y), -dgx(p.x) * gx(p.y)};
    };
    s.grad_velocity = [gx, dgx, d2gx](const Vec2& p) {
        return Mat2{dgx(p.x) * dgx(p.y), gx(p.x) * d2gx(p.y),
                    -d2gx(p.x) * gx(p.y), -dgx(p.x) * dgx(p.y)};
    };
    s.vorticity = [gx, d2gx](const Vec2& p) {
        return -(d2gx(p.x) * gx(p.y) + gx(p.x) * d2gx(p.y));
    };
    s.pressure = [](const Vec2& p) {
        return p.x * p.x * p.x * p.y * p.y * p.y - 1.0 / 16.0;
    };
    s.body_force = [nu](const Vec2& p) {
        return Vec2{nu * robust_fA0(p.x, p.y) + robust_fB0(p.x, p.y),
                    nu * robust_fA1(p.x, p.y) + robust_fB1(p.x, p.y)};
    };
    s.rot_body_force = [nu](const Vec2& p) {
        return nu * robust_rA(p.x, p.y) + robust_rB(p.x, p.y);
    };
    return s;
}

ExactSolution quadratic_solution(const std::array<double, 6>& c) {
    ExactSolution s;
    s.psi = [c](const Vec2& p) {
        return c[0] + c[1] * p.x + c[2] * p.y + c[3] * p.x * p.x + c[4] * p.x * p.y +
               c[5] * p.y * p.y;
    };
    s.grad_psi = [c](const Vec2& p) {
        return Vec2{c[1] + 2.0 * c[3] * p.x + c[4] * p.y, c[2] + c[4] * p.x + 2.0 * c[5] * p.y};
    };
    s.hess_psi = [c](const Vec2&) { return Hess2{2.0 * c[3], c[4], 2.0 * c[5]}; };
    s.velocity = [g = s.grad_psi](const Vec2& p) { return rot_minus90(g(p)); };
    s.grad_velocity = [c](const Vec2&) {
        return Mat2{c[4], 2.0 * c[5], -2.0 * c[3], -c[4]};
    };
    s.vorticity = [c](const Vec2&) { return -2.0 * (c[3] + c[5]); };
    s.pressure = [](const Vec2&) { return 0.0; };
    s.body_force = [](const Vec2&) { return Vec2{0.0, 0.0}; };
    s.rot_body_force = [](const Vec2&) { return 0.0; };
    return s;
}

} // namespace morleyns
