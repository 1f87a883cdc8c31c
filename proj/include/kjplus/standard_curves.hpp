// kjplus: reference curves with known invariants
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "kepler.hpp"
#include "polyline.hpp"

namespace kjplus {

namespace detail {

template <typename F>
PolylineCurve sample_closed(F&& f, std::size_t n, double phase = 0.0) {
    std::vector<Point2> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(f(two_pi * (static_cast<double>(i) + phase) / static_cast<double>(n)));
    return PolylineCurve(std::move(v));
}

} // namespace detail

/**
 * @brief Polyline realization of the standard curve K_j.
 *
 * K_0 is a figure eight, K_1 a counterclockwise circle and K_j (j >= 2) a
 * circle with j - 1 small interior loops, realised as e^{it} + (1.5/j) e^{ijt}.
 * Rotation number j for j >= 1.
 */
inline PolylineCurve standard_curve(int j, std::size_t samples_per_lobe = 256) {
    if (j < 0) throw invalid_spec("standard_curve: j must be nonnegative");
    if (j == 0) {
        // Half-step phase keeps the crossing at the origin off the vertex set.
        return detail::sample_closed([](double t) { return Point2{std::sin(t), std::sin(t) * std::cos(t)}; },
                                     samples_per_lobe * 2, 0.5);
    }
    if (j == 1) return detail::sample_closed([](double t) { return polar(1.0, t); }, samples_per_lobe);
    const double eps = 1.5 / j;
    return detail::sample_closed([j, eps](double t) { return polar(1.0, t) + polar(eps, j * t); },
                                 samples_per_lobe * static_cast<std::size_t>(j));
}

/// Three-crossing curve with face windings {1, 1, 1, 2, 0} and all double-point indices 1 (J+ = 0).
inline PolylineCurve viro_example_trefoil(std::size_t n = 1536) {
    return detail::sample_closed(
        [](double t) { return Point2{std::sin(t) + 2.0 * std::sin(2.0 * t), std::cos(t) - 2.0 * std::cos(2.0 * t)}; },
        n, 0.25);
}

/// One-crossing curve (limacon with an inner loop) with face windings {1, 2, 0} (J+ = -2).
inline PolylineCurve viro_example_limacon(std::size_t n = 1024) {
    return detail::sample_closed([](double t) { return polar(1.0, t) + polar(0.75, 2.0 * t); }, n, 0.25);
}

/**
 * @brief Combinatorial model of a T(k,l) orbit built from marked points.
 *
 * Marked points sit on the rays of angle s*pi/k on circles of radius
 * 1, 2, ..., m+1, where m = |k - l| for direct and k + l for retrograde
 * orbits. The radius index goes up and down between 0 and m, one step per
 * ray, starting at a perihelion on the positive x-axis. Consecutive marked
 * points are joined by paths that are straight in polar coordinates. Strands
 * meet only at marked points; each marked point is cut to a short chord so
 * the result is a generic immersion.
 */
inline PolylineCurve schematic_orbit(int k, int l, Direction direction, std::size_t subdivisions = 8) {
    validate_pair(k, l);
    if (subdivisions < 2) throw invalid_spec("schematic_orbit: need at least 2 subdivisions per step");
    const int m = direction == Direction::Direct ? std::abs(k - l) : k + l;
    const double sign = direction == Direction::Direct ? (l > k ? 1.0 : -1.0) : 1.0;
    const double step = pi / k;
    const auto steps = static_cast<std::size_t>(2 * m * k);

    auto radius_index = [m](std::size_t s) {
        const auto r = static_cast<int>(s % static_cast<std::size_t>(2 * m));
        return r <= m ? r : 2 * m - r;
    };

    // Dense polar-linear path; marked[s] is the vertex index of marked point s.
    std::vector<Point2> path;
    path.reserve(steps * subdivisions);
    for (std::size_t s = 0; s < steps; ++s) {
        const double r0 = 1.0 + radius_index(s);
        const double r1 = 1.0 + radius_index(s + 1);
        const double a0 = sign * step * static_cast<double>(s);
        for (std::size_t q = 0; q < subdivisions; ++q) {
            const double f = static_cast<double>(q) / static_cast<double>(subdivisions);
            path.push_back(polar(r0 + f * (r1 - r0), a0 + f * sign * step));
        }
    }

    constexpr double cut = 1e-3;
    const std::size_t n = path.size();
    std::vector<Point2> out;
    out.reserve(n + steps);
    for (std::size_t i = 0; i < n; ++i) {
        if (i % subdivisions != 0) {
            out.push_back(path[i]);
            continue;
        }
        const Point2 p = path[i];
        const Point2 prev = path[(i + n - 1) % n];
        const Point2 next = path[(i + 1) % n];
        out.push_back(p + cut * (prev - p));
        out.push_back(p + cut * (next - p));
    }
    return PolylineCurve(std::move(out));
}

} // namespace kjplus
