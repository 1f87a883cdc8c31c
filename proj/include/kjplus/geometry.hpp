// kjplus: plane points and small vector helpers
#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace kjplus {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
    friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double arg(Point2 a) { return std::atan2(a.y, a.x); }
inline bool is_finite(Point2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

inline std::complex<double> to_complex(Point2 a) { return {a.x, a.y}; }
inline Point2 from_complex(std::complex<double> z) { return {z.real(), z.imag()}; }

/// Counterclockwise rotation about the origin.
inline Point2 rotate(Point2 a, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}

inline Point2 polar(double radius, double angle) {
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

/// Distance from p to the closed segment [a, b].
inline double distance_to_segment(Point2 p, Point2 a, Point2 b) {
    const Point2 d = b - a;
    const double len2 = dot(d, d);
    double s = len2 > 0.0 ? dot(p - a, d) / len2 : 0.0;
    s = s < 0.0 ? 0.0 : (s > 1.0 ? 1.0 : s);
    return norm(p - (a + s * d));
}

/// Signed angle in (-pi, pi] that rotates direction a onto direction b.
inline double turning_angle(Point2 a, Point2 b) { return std::atan2(cross(a, b), dot(a, b)); }

} // namespace kjplus
