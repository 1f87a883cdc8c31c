// kjplus: T_{k,l}-type orbits of the rotating Kepler problem
//
// Units: the primary has unit mass, the frame rotates with unit angular
// velocity, so the Jacobi energy is H = E + L and the critical value is -3/2.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "polyline.hpp"
#include "roots.hpp"

namespace kjplus {

enum class Direction { Direct, Retrograde };

inline const char* to_string(Direction d) { return d == Direction::Direct ? "direct" : "retrograde"; }

inline Direction parse_direction(const std::string& s) {
    if (s == "direct") return Direction::Direct;
    if (s == "retrograde" || s == "retro") return Direction::Retrograde;
    throw invalid_spec("direction must be 'direct' or 'retrograde', got '" + s + "'");
}

/// Critical Jacobi energy: the circle |q| = 1 of critical points.
inline constexpr double critical_jacobi_energy = -1.5;

/// Half-width of the bands around e = 0, 1 and the loop-birth threshold.
inline constexpr double default_guard_band = 1e-3;

/// One T_{k,l}-type orbit: a k-fold Kepler ellipse closing in an l-fold rotating frame.
struct TorusOrbitSpec {
    int k = 0;
    int l = 0;
    double e = 0.0;
    Direction direction = Direction::Direct;

    /// Throws invalid_spec unless k, l >= 1, gcd(k,l) = 1, (k,l) != (1,1), 0 <= e < 1.
    void validate() const;
};

inline void validate_pair(int k, int l) {
    if (k < 1 || l < 1)
        throw invalid_spec("k and l must be positive, got k=" + std::to_string(k) + " l=" + std::to_string(l));
    if (std::gcd(k, l) != 1)
        throw invalid_spec("k and l must be coprime, got k=" + std::to_string(k) + " l=" + std::to_string(l));
    if (k == 1 && l == 1) throw invalid_spec("(k, l) = (1, 1) is excluded: these are plain Kepler ellipses");
}

inline void TorusOrbitSpec::validate() const {
    validate_pair(k, l);
    if (!(e >= 0.0 && e < 1.0))
        throw invalid_spec("eccentricity must lie in [0, 1), got " + std::to_string(e));
}

struct OrbitParams {
    double E = 0.0;            ///< Kepler energy E_{k,l}
    double a = 0.0;            ///< semi-major axis -1/(2E)
    double e = 0.0;            ///< eccentricity
    double L = 0.0;            ///< angular momentum, negative for direct orbits
    double r_min = 0.0;        ///< perihelion radius
    double r_max = 0.0;        ///< aphelion radius
    double period = 0.0;       ///< 2 pi l
    double c = 0.0;            ///< Jacobi energy E + L
    double mean_motion = 0.0;  ///< k / l
};

/// Kepler energy shared by the whole T_{k,l} torus family.
inline double torus_energy(int k, int l) {
    if (k < 1 || l < 1) throw invalid_spec("torus_energy needs k, l >= 1");
    return -0.5 * std::cbrt(static_cast<double>(k) * k / (static_cast<double>(l) * l));
}

inline OrbitParams orbit_params(const TorusOrbitSpec& spec) {
    spec.validate();
    OrbitParams p;
    p.E = torus_energy(spec.k, spec.l);
    p.a = -1.0 / (2.0 * p.E);
    p.e = spec.e;
    const double L_abs = std::sqrt((1.0 - spec.e * spec.e) / (-2.0 * p.E));
    p.L = spec.direction == Direction::Direct ? -L_abs : L_abs;
    p.r_min = (1.0 - spec.e) / (-2.0 * p.E);
    p.r_max = (1.0 + spec.e) / (-2.0 * p.E);
    p.period = two_pi * spec.l;
    p.c = p.E + p.L;
    p.mean_motion = static_cast<double>(spec.k) / spec.l;
    return p;
}

/**
 * @brief Eccentric anomaly u with u - e sin u = M.
 *
 * Newton from u = M + e sin M, falling back to bisection on [M - e, M + e]
 * whenever a step leaves that bracket. Throws numerical_error after 100
 * iterations without reaching a residual of 1e-12.
 */
inline double solve_kepler(double mean_anomaly, double e) {
    if (!(e >= 0.0 && e < 1.0)) throw invalid_spec("solve_kepler needs 0 <= e < 1, got " + std::to_string(e));
    if (e == 0.0) return mean_anomaly;

    // Reduce to [-pi, pi) so the residual tolerance is meaningful for large M.
    const double turns = std::floor((mean_anomaly + pi) / two_pi);
    const double M = mean_anomaly - turns * two_pi;

    double lo = M - e;
    double hi = M + e;
    double u = M + e * std::sin(M);
    constexpr int max_iter = 100;
    for (int iter = 0; iter < max_iter; ++iter) {
        const double f = u - e * std::sin(u) - M;
        if (std::abs(f) < 1e-13) return u + turns * two_pi;
        if (f > 0.0)
            hi = u;
        else
            lo = u;
        double next = u - f / (1.0 - e * std::cos(u));
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        u = next;
    }
    const double f = u - e * std::sin(u) - M;
    if (std::abs(f) < 1e-12) return u + turns * two_pi;
    throw numerical_error("Kepler equation did not converge for M=" + std::to_string(mean_anomaly) +
                              " e=" + std::to_string(e),
                          "solve_kepler");
}

/// Position on the inertial Kepler ellipse, perihelion on the positive x-axis at t = 0.
/// The ellipse is traversed counterclockwise iff L > 0.
inline Point2 inertial_position(double t, const OrbitParams& p) {
    const double u = solve_kepler(p.mean_motion * t, p.e);
    const double sigma = p.L < 0.0 ? -1.0 : 1.0;
    return {p.a * (std::cos(u) - p.e), sigma * p.a * std::sqrt(1.0 - p.e * p.e) * std::sin(u)};
}

/// Position in the rotating frame: exp(i t) times the inertial position.
inline Point2 rotating_position(double t, const OrbitParams& p) { return rotate(inertial_position(t, p), t); }

/// Default vertex count for sampled orbits: max(4096, 1024 k (|k-l| + l)).
inline std::size_t default_sample_count(int k, int l) {
    const long n = 1024L * k * (std::labs(static_cast<long>(k) - l) + l);
    return static_cast<std::size_t>(std::max(4096L, n));
}

/**
 * @brief Closed polyline through alpha(t_i), t_i = 2 pi l i / n, i = 0..n-1.
 *
 * Vertex 0 is the perihelion on the positive x-axis. When n is a multiple of
 * k the vertex set is symmetric under the rotations and reflections of the
 * trajectory, so double points land on their symmetry rays to rounding.
 */
inline PolylineCurve sample_orbit(const TorusOrbitSpec& spec, std::size_t n_samples) {
    if (n_samples < 16) throw invalid_spec("sample_orbit needs at least 16 samples");
    const OrbitParams p = orbit_params(spec);
    std::vector<Point2> v;
    v.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = p.period * static_cast<double>(i) / static_cast<double>(n_samples);
        v.push_back(rotating_position(t, p));
    }
    return PolylineCurve(std::move(v));
}

inline PolylineCurve sample_orbit(const TorusOrbitSpec& spec) {
    return sample_orbit(spec, default_sample_count(spec.k, spec.l));
}

/**
 * @brief Eccentricity at which direct orbits touch the Hill boundary.
 *
 * k > l: exterior loops are born at the root of 8(1-e)E^3 + (1+e)^3 = 0.
 * k < l: interior loops are born at the root of 8(1+e)E^3 + (1-e)^3 = 0.
 * With 8E^3 = -(k/l)^2 both are cubics with a single root in (0, 1).
 */
inline double critical_eccentricity(int k, int l) {
    if (k < 1 || l < 1) throw invalid_spec("critical_eccentricity needs k, l >= 1");
    if (k == l) throw invalid_spec("critical_eccentricity is undefined for k = l");
    const double q = static_cast<double>(k) * k / (static_cast<double>(l) * l);
    if (k > l) {
        auto f = [q](double e) { return (1.0 + e) * (1.0 + e) * (1.0 + e) - q * (1.0 - e); };
        auto df = [q](double e) { return 3.0 * (1.0 + e) * (1.0 + e) + q; };
        return bracketed_newton(f, df, 0.0, 1.0);
    }
    auto f = [q](double e) { return (1.0 - e) * (1.0 - e) * (1.0 - e) - q * (1.0 + e); };
    auto df = [q](double e) { return -3.0 * (1.0 - e) * (1.0 - e) - q; };
    return bracketed_newton(f, df, 0.0, 1.0);
}

/// Residual of the defining cubic in its original form 8(1 -+ e)E^3 + (1 +- e)^3.
inline double critical_eccentricity_residual(int k, int l, double e) {
    const double E = torus_energy(k, l);
    if (k > l) return 8.0 * (1.0 - e) * E * E * E + (1.0 + e) * (1.0 + e) * (1.0 + e);
    return 8.0 * (1.0 + e) * E * E * E + (1.0 - e) * (1.0 - e) * (1.0 - e);
}

struct HillRadii {
    double inner = 0.0;  ///< r1 < 1: boundary of the bounded component
    double outer = 0.0;  ///< r2 > 1: boundary of the unbounded component
};

/// Roots of -1/r - r^2/2 = c. Only exists below the critical Jacobi energy.
inline HillRadii hill_radii(double c) {
    if (!(c < critical_jacobi_energy))
        throw invalid_spec("Hill's region is R^2 minus the origin for c >= -3/2 (got c=" + std::to_string(c) +
                           "); there is no bounded/unbounded split");
    auto f = [c](double r) { return -1.0 / r - 0.5 * r * r - c; };
    auto df = [](double r) { return 1.0 / (r * r) - r; };
    // f -> -inf at 0+, f(1) = -3/2 - c > 0, f(sqrt(-2c)) = -1/sqrt(-2c) < 0.
    HillRadii h;
    h.inner = bracketed_newton(f, df, std::min(1e-3, -0.5 / c), 1.0);
    h.outer = bracketed_newton(f, df, 1.0, std::sqrt(-2.0 * c));
    return h;
}

struct CircularEnergies {
    double retro = 0.0;     ///< bounded component, positive angular momentum
    double direct = 0.0;    ///< bounded component, negative angular momentum
    double direct_u = 0.0;  ///< unbounded component, negative angular momentum

    double L_retro() const { return 1.0 / std::sqrt(-2.0 * retro); }
    double L_direct() const { return -1.0 / std::sqrt(-2.0 * direct); }
    double L_direct_u() const { return -1.0 / std::sqrt(-2.0 * direct_u); }
};

/// The three Kepler energies of circular orbits at Jacobi energy c: roots of 2E(c-E)^2 + 1 = 0.
inline CircularEnergies circular_kepler_energies(double c) {
    if (!(c < critical_jacobi_energy))
        throw invalid_spec("three circular orbits exist only for c < -3/2, got c=" + std::to_string(c));
    auto p = [c](double E) { return 2.0 * E * (c - E) * (c - E) + 1.0; };
    auto dp = [c](double E) { return 2.0 * (c - E) * (c - 3.0 * E); };
    // p(2c) < 0 < p(c) = 1 > 0 > p(c/3) < 0 < p(0) = 1.
    CircularEnergies r;
    r.retro = bracketed_newton(p, dp, 2.0 * c, c);
    r.direct = bracketed_newton(p, dp, c, c / 3.0);
    r.direct_u = bracketed_newton(p, dp, c / 3.0, 0.0);
    return r;
}

struct CircularData {
    double tau_direct = 0.0;
    double tau_retro = 0.0;
    double c_direct = 0.0;
    double c_retro = 0.0;
    double theta_dot_direct = 0.0;
    double theta_dot_retro = 0.0;
    int cover_direct = 0;  ///< |k - l|
    int cover_retro = 0;   ///< k + l
};

/// Circular orbits at the two ends of the T_{k,l} family.
inline CircularData circular_data(int k, int l) {
    if (k < 1 || l < 1) throw invalid_spec("circular_data needs k, l >= 1");
    if (k == l) throw invalid_spec("circular_data is undefined for k = l");
    const double E = torus_energy(k, l);
    const double ratio = static_cast<double>(k) / l;
    CircularData d;
    d.cover_direct = std::abs(k - l);
    d.cover_retro = k + l;
    d.tau_direct = two_pi * l / d.cover_direct;
    d.tau_retro = two_pi * l / d.cover_retro;
    d.c_direct = E - 1.0 / std::sqrt(-2.0 * E);
    d.c_retro = E + 1.0 / std::sqrt(-2.0 * E);
    d.theta_dot_direct = 1.0 - ratio;
    d.theta_dot_retro = 1.0 + ratio;
    return d;
}

/// Radius sqrt(-L) on which self-tangencies must lie; none for retrograde orbits.
inline std::optional<double> tangency_radius(const OrbitParams& p) {
    if (p.L < 0.0) return std::sqrt(-p.L);
    return std::nullopt;
}

/**
 * @brief First-order small-eccentricity approximation of the rotating orbit.
 *
 * zeta(t) = a(-2e + (1 + e cos(kt/l)) exp(i kt/l)) rotated by +t for
 * retrograde orbits and its mirror image rotated by +t for direct orbits.
 * The result has the same orientation as rotating_position.
 */
inline Point2 approx_orbit(const TorusOrbitSpec& spec, double t) {
    spec.validate();
    const double a = -1.0 / (2.0 * torus_energy(spec.k, spec.l));
    const double phase = static_cast<double>(spec.k) / spec.l * t;
    Point2 zeta = Point2{-2.0 * spec.e * a, 0.0} + a * (1.0 + spec.e * std::cos(phase)) * polar(1.0, phase);
    if (spec.direction == Direction::Direct) zeta.y = -zeta.y;
    return rotate(zeta, t);
}

inline PolylineCurve sample_approx_orbit(const TorusOrbitSpec& spec, std::size_t n_samples) {
    std::vector<Point2> v;
    v.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i)
        v.push_back(approx_orbit(spec, two_pi * spec.l * static_cast<double>(i) / static_cast<double>(n_samples)));
    return PolylineCurve(std::move(v));
}

/// Warnings for eccentricities close to e = 0, e = 1 or the loop-birth threshold.
inline std::vector<std::string> disaster_warnings(const TorusOrbitSpec& spec, double band = default_guard_band) {
    spec.validate();
    std::vector<std::string> out;
    if (spec.e < band)
        out.push_back("e=" + std::to_string(spec.e) + " is within " + std::to_string(band) +
                      " of 0: the orbit is (close to) a multiply covered circle");
    if (1.0 - spec.e < band)
        out.push_back("e=" + std::to_string(spec.e) + " is within " + std::to_string(band) + " of the collision e=1");
    if (spec.direction == Direction::Direct && spec.k != spec.l) {
        const double ec = critical_eccentricity(spec.k, spec.l);
        if (std::abs(spec.e - ec) < band)
            out.push_back("e=" + std::to_string(spec.e) + " is within " + std::to_string(band) +
                          " of the loop-birth threshold " + std::to_string(ec));
    }
    return out;
}

} // namespace kjplus
