// kjplus: disaster events along the eccentricity family of T(k,l) orbits
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "closed_form.hpp"
#include "curve_topology.hpp"
#include "errors.hpp"
#include "invariants.hpp"
#include "kepler.hpp"
#include "roots.hpp"

namespace kjplus {

enum class EventKind { I0, IInfinity, IMinusInfinity, IIPlus, III, DirectTangency };

inline const char* to_string(EventKind k) {
    switch (k) {
    case EventKind::I0: return "I0";
    case EventKind::IInfinity: return "I_inf";
    case EventKind::IMinusInfinity: return "I_-inf";
    case EventKind::IIPlus: return "II+";
    case EventKind::III: return "III";
    case EventKind::DirectTangency: return "direct_tangency";
    }
    return "unknown";
}

struct HomotopyEvent {
    EventKind kind = EventKind::I0;
    double eccentricity = 0.0;
    Direction branch = Direction::Direct;
    std::string detail;
};

/// Circular orbits at e = 0 terminating the two branches.
struct EndpointMarker {
    double eccentricity = 0.0;
    Direction branch = Direction::Direct;
    int cover = 0;  ///< multiplicity of the circular orbit
    std::string detail;
};

struct ScanOptions {
    double refine_radius = 0.05;
    int refine_factor = 10;
    double bisection_tol = 1e-10;
    bool verify_counts = false;  ///< sample orbits on the grid and check double-point counts between events
    std::size_t n_samples = 0;   ///< orbit sampling density for verify_counts; 0 means default_sample_count
};

struct ScanResult {
    int k = 0;
    int l = 0;
    std::vector<HomotopyEvent> events;  ///< sorted by eccentricity
    std::vector<EndpointMarker> endpoints;
    std::vector<std::string> warnings;
};

/// n points evenly spread over the open interval (0, 1).
inline std::vector<double> default_eccentricity_grid(std::size_t n = 200) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = static_cast<double>(i + 1) / static_cast<double>(n + 1);
    return g;
}

/**
 * @brief Argument, in units of pi/k, of the point of a direct orbit on the circle r = r_inv.
 *
 * The point is taken on the half revolution leaving the perihelion. Returns
 * nothing when the orbit does not reach r_inv. An inverse self-tangency
 * occurs exactly when this point lies on one of the symmetry rays j*pi/k,
 * that is when the value is an integer.
 */
inline std::optional<double> tangency_phase(int k, int l, double e) {
    const OrbitParams p = orbit_params({k, l, e, Direction::Direct});
    const auto r_inv = tangency_radius(p);
    if (!r_inv || *r_inv < p.r_min || *r_inv > p.r_max || e <= 0.0) return std::nullopt;
    const double cos_u = std::clamp((1.0 - *r_inv / p.a) / e, -1.0, 1.0);
    const double u = std::acos(cos_u);
    const double t = (u - e * std::sin(u)) / p.mean_motion;
    const double true_anomaly = 2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(0.5 * u), std::sqrt(1.0 - e) * std::cos(0.5 * u));
    // Direct orbits turn clockwise in the inertial frame.
    return k * (t - true_anomaly) / pi;
}

namespace detail {

struct PhaseCrossing {
    double lo;
    double hi;
    long level;
};

inline std::vector<PhaseCrossing> phase_crossings(int k, int l, const std::vector<double>& grid) {
    std::vector<PhaseCrossing> out;
    bool have_prev = false;
    double prev_e = 0.0, prev_x = 0.0;
    for (double e : grid) {
        const auto x = tangency_phase(k, l, e);
        if (!x) {
            have_prev = false;
            continue;
        }
        if (have_prev) {
            const double lo_x = std::min(prev_x, *x), hi_x = std::max(prev_x, *x);
            for (auto n = static_cast<long>(std::floor(lo_x)) + 1; static_cast<double>(n) <= hi_x; ++n)
                out.push_back({prev_e, e, n});
        }
        have_prev = true;
        prev_e = e;
        prev_x = *x;
    }
    return out;
}

inline std::vector<double> refine_grid(const std::vector<double>& grid, const std::vector<double>& centres, double radius,
                                       int factor) {
    std::vector<double> out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.push_back(grid[i]);
        if (i + 1 == grid.size()) break;
        const double a = grid[i], b = grid[i + 1];
        const bool near = std::any_of(centres.begin(), centres.end(), [&](double c) {
            return std::abs(a - c) <= radius || std::abs(b - c) <= radius || (a < c && c < b);
        });
        if (!near) continue;
        for (int q = 1; q < factor; ++q) out.push_back(a + (b - a) * q / factor);
    }
    return out;
}

} // namespace detail

/**
 * @brief Events of the eccentricity family of T(k,l) orbits.
 *
 * Reports the loop-birth event (I_inf for k > l, I_-inf for k < l) at
 * critical_eccentricity, every inverse self-tangency II+ on the direct
 * branch above it, and the collision I0 at e = 1. The e = 0 circular orbits
 * are returned separately as endpoint markers.
 */
inline ScanResult scan_family(int k, int l, const std::vector<double>& e_grid, const ScanOptions& opt = {}) {
    validate_pair(k, l);
    if (e_grid.size() < 2) throw invalid_spec("scan_family: grid needs at least two eccentricities");
    for (std::size_t i = 0; i < e_grid.size(); ++i) {
        if (!(e_grid[i] > 0.0 && e_grid[i] < 1.0)) throw invalid_spec("scan_family: grid values must lie in (0, 1)");
        if (i > 0 && !(e_grid[i] > e_grid[i - 1])) throw invalid_spec("scan_family: grid must be strictly increasing");
    }

    ScanResult res;
    res.k = k;
    res.l = l;
    const double threshold = critical_eccentricity(k, l);
    res.events.push_back({k > l ? EventKind::IInfinity : EventKind::IMinusInfinity, threshold, Direction::Direct,
                          k > l ? "exterior loops born at the aphelia" : "interior loops born at the perihelia"});

    // Inverse self-tangencies: grid restricted to the direct branch above the threshold.
    std::vector<double> grid{threshold + 1e-9};
    for (double e : e_grid)
        if (e > grid.front()) grid.push_back(e);
    auto crossings = detail::phase_crossings(k, l, grid);
    std::vector<double> centres;
    for (const auto& c : crossings) centres.push_back(0.5 * (c.lo + c.hi));
    if (!centres.empty()) crossings = detail::phase_crossings(k, l, detail::refine_grid(grid, centres, opt.refine_radius, opt.refine_factor));

    for (const auto& c : crossings) {
        const auto phase_gap = [&](double e) { return *tangency_phase(k, l, e) - static_cast<double>(c.level); };
        double lo = c.lo, hi = c.hi;
        while (hi - lo > opt.bisection_tol) {
            const double mid = 0.5 * (lo + hi);
            if ((phase_gap(mid) > 0.0) == (phase_gap(lo) > 0.0))
                lo = mid;
            else
                hi = mid;
        }
        const double e = 0.5 * (lo + hi);
        const OrbitParams p = orbit_params({k, l, e, Direction::Direct});
        res.events.push_back({EventKind::IIPlus, e, Direction::Direct,
                              "inverse self-tangency on r_inv = " + std::to_string(*tangency_radius(p)) +
                                  " at argument " + std::to_string(c.level) + "*pi/" + std::to_string(k)});
    }

    res.events.push_back({EventKind::I0, 1.0, Direction::Direct, "collision; direct and retrograde branches meet"});
    std::sort(res.events.begin(), res.events.end(),
              [](const HomotopyEvent& a, const HomotopyEvent& b) { return a.eccentricity < b.eccentricity; });

    res.endpoints.push_back({0.0, Direction::Direct, std::abs(k - l), "multiply covered direct circular orbit"});
    res.endpoints.push_back({0.0, Direction::Retrograde, k + l, "multiply covered retrograde circular orbit"});

    for (const auto& ev : res.events)
        if (ev.kind == EventKind::III || ev.kind == EventKind::DirectTangency)
            throw std::logic_error("scan_family produced a forbidden event kind");

    if (opt.verify_counts) {
        const std::size_t n = opt.n_samples ? opt.n_samples : default_sample_count(k, l);
        for (Direction dir : {Direction::Direct, Direction::Retrograde}) {
            bool have_prev = false;
            int prev_count = 0;
            double prev_e = 0.0;
            for (double e : e_grid) {
                int count = 0;
                try {
                    count = static_cast<int>(find_double_points(sample_orbit({k, l, e, dir}, n)).size());
                } catch (const numerical_error&) {
                    have_prev = false;
                    continue;
                }
                if (have_prev && prev_count != count) {
                    const bool event_between =
                        dir == Direction::Direct && std::any_of(res.events.begin(), res.events.end(), [&](const HomotopyEvent& ev) {
                            return ev.eccentricity > prev_e && ev.eccentricity <= e;
                        });
                    if (!event_between)
                        res.warnings.push_back(std::string(to_string(dir)) + " branch: double-point count changes from " +
                                               std::to_string(prev_count) + " to " + std::to_string(count) +
                                               " between e = " + std::to_string(prev_e) + " and " + std::to_string(e) +
                                               " with no event in between; grid may be under-resolved");
                }
                have_prev = true;
                prev_count = count;
                prev_e = e;
            }
        }
    }
    return res;
}

inline ScanResult scan_family(int k, int l, const ScanOptions& opt = {}) {
    return scan_family(k, l, default_eccentricity_grid(), opt);
}

struct ConstancySample {
    double e = 0.0;
    Direction direction = Direction::Direct;
};

struct ConstancyReport {
    bool consistent = true;
    std::vector<std::string> violations;
    std::vector<InvariantReport> reports;
};

/**
 * @brief Compute invariants at each sample and check they agree where they must.
 *
 * J+ must agree within each regime (the two direct regimes count as one for
 * k > l). J1 and J2 must agree across all samples for k > l, and across the
 * above-threshold direct regime and the retrograde branch for k < l.
 */
inline ConstancyReport constancy_check(int k, int l, const std::vector<ConstancySample>& samples, std::size_t n_samples = 0) {
    validate_pair(k, l);
    ConstancyReport out;
    for (const auto& s : samples) {
        const TorusOrbitSpec spec{k, l, s.e, s.direction};
        out.reports.push_back(n_samples ? invariant_report(spec, n_samples) : invariant_report(spec));
    }

    auto jplus_group = [&](Regime r) {
        if (k > l && r != Regime::Retro) return 0;
        return static_cast<int>(r) + 1;
    };
    auto j12_group = [&](Regime r) { return k < l && r == Regime::DirectBelowThreshold ? 1 : 0; };
    auto describe = [&](const InvariantReport& r) {
        return "e=" + std::to_string(r.spec->e) + " " + to_string(r.spec->direction) + " (J+=" + std::to_string(r.j_plus) +
               ", J1=" + r.j1.to_string() + ", J2=" + std::to_string(r.j2) + ")";
    };

    std::map<int, const InvariantReport*> first_jplus, first_j12;
    for (const auto& r : out.reports) {
        const auto [it_p, new_p] = first_jplus.emplace(jplus_group(*r.regime), &r);
        if (!new_p && it_p->second->j_plus != r.j_plus)
            out.violations.push_back("J+ differs within " + std::string(to_string(*r.regime)) + ": " + describe(*it_p->second) +
                                     " vs " + describe(r));
        const auto [it_j, new_j] = first_j12.emplace(j12_group(*r.regime), &r);
        if (!new_j && (it_j->second->j1 != r.j1 || it_j->second->j2 != r.j2))
            out.violations.push_back("J1/J2 differ: " + describe(*it_j->second) + " vs " + describe(r));
    }
    out.consistent = out.violations.empty();
    return out;
}

} // namespace kjplus
