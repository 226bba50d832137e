#pragma once

#include <array>
#include <cmath>

namespace morleyns {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
};

inline Vec2 operator*(double s, const Vec2& v) { return {s * v.x, s * v.y}; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }

/// Rotation by -90 degrees: maps a gradient to the corresponding curl field.
inline Vec2 rot_minus90(const Vec2& v) { return {v.y, -v.x}; }

/// 2x2 matrix, row-major.  Used for velocity gradients and Hessians.
struct Mat2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

    Vec2 apply(const Vec2& v) const {
        return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y};
    }
};

/// Symmetric Hessian (xx, xy, yy).
struct Hess2 {
    double xx = 0.0, xy = 0.0, yy = 0.0;

    double frobenius2() const { return xx * xx + 2.0 * xy * xy + yy * yy; }
};

} // namespace morleyns
