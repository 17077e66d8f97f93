#pragma once

#include <cmath>
#include <stdexcept>

namespace spikeplan {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    bool operator==(const Vec2& o) const = default;

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Unsigned angle between two direction vectors, in [0, pi].
/// Zero-length vectors carry no direction: two of them are treated as
/// aligned, one against a proper direction as maximally ambiguous (pi/2).
inline double angle_between(const Vec2& a, const Vec2& b) {
    constexpr double kTiny = 1e-12;
    const double na = a.norm();
    const double nb = b.norm();
    if (na < kTiny && nb < kTiny) return 0.0;
    if (na < kTiny || nb < kTiny) return 1.5707963267948966;
    return std::atan2(std::fabs(a.cross(b)), a.dot(b));
}

/// Symmetric 2x2 matrix; covariances of the Gaussian basis functions.
struct Mat2 {
    double a11 = 1.0;
    double a12 = 0.0;
    double a22 = 1.0;

    static Mat2 isotropic(double sigma) { return {sigma * sigma, 0.0, sigma * sigma}; }

    double det() const { return a11 * a22 - a12 * a12; }
    bool positive_definite() const { return a11 > 0.0 && det() > 0.0; }

    Mat2 inverse() const {
        const double d = det();
        if (d == 0.0) throw std::invalid_argument("Mat2: singular matrix");
        return {a22 / d, -a12 / d, a11 / d};
    }

    /// d^T M d
    double quad(const Vec2& d) const { return a11 * d.x * d.x + 2.0 * a12 * d.x * d.y + a22 * d.y * d.y; }
};

inline double clamp(double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); }

}  // namespace spikeplan
