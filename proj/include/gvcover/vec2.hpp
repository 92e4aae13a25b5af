#pragma once

#include <cmath>

namespace gvcover {

/// Planar point or vector, in meters.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
    friend constexpr Vec2 operator/(const Vec2& a, double s) { return {a.x / s, a.y / s}; }
    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }
inline Vec2 normalized(const Vec2& a) { return a / norm(a); }
/// Counter-clockwise quarter turn.
constexpr Vec2 perp(const Vec2& a) { return {-a.y, a.x}; }
inline bool is_finite(const Vec2& a) { return std::isfinite(a.x) && std::isfinite(a.y); }

/// Row-major 2x2 matrix.
struct Mat2 {
    double m00 = 0.0, m01 = 0.0;
    double m10 = 0.0, m11 = 0.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 outer(const Vec2& a, const Vec2& b) {
        return {a.x * b.x, a.x * b.y, a.y * b.x, a.y * b.y};
    }

    constexpr Mat2 transposed() const { return {m00, m10, m01, m11}; }

    constexpr double& operator()(int r, int c) { return r == 0 ? (c == 0 ? m00 : m01) : (c == 0 ? m10 : m11); }
    constexpr double operator()(int r, int c) const {
        return r == 0 ? (c == 0 ? m00 : m01) : (c == 0 ? m10 : m11);
    }

    friend constexpr Vec2 operator*(const Mat2& m, const Vec2& v) {
        return {m.m00 * v.x + m.m01 * v.y, m.m10 * v.x + m.m11 * v.y};
    }
    friend constexpr Mat2 operator+(const Mat2& a, const Mat2& b) {
        return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
    }
    friend constexpr Mat2 operator-(const Mat2& a, const Mat2& b) {
        return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
    }
    friend constexpr Mat2 operator*(double s, const Mat2& a) {
        return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
    }
};

} // namespace gvcover
