// kjplus: J1, J2 and the orbit-level invariant report
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "closed_form.hpp"
#include "curve_topology.hpp"
#include "errors.hpp"
#include "kepler.hpp"
#include "polyline.hpp"
#include "rational.hpp"

namespace kjplus {

/// Winding number of the curve around the origin.
inline int origin_winding(const PolylineCurve& curve) { return winding_at(curve, {0.0, 0.0}); }

namespace detail {

inline void require_off_origin(const PolylineCurve& curve) {
    const double tol = 1e-9 * curve.diameter();
    for (std::size_t i = 0; i < curve.size(); ++i)
        if (distance_to_segment({0.0, 0.0}, curve.segment_start(i), curve.segment_end(i)) <= tol)
            throw invalid_spec("curve passes through or too near the origin (segment " + std::to_string(i) + ")");
}

} // namespace detail

inline HalfInteger j1_from(int j_plus_value, int w0) {
    return HalfInteger::from_integer(j_plus_value) + HalfInteger::from_twice(static_cast<std::int64_t>(w0) * w0);
}

/// J1 = J+ + w0^2 / 2.
inline HalfInteger j1(const PolylineCurve& curve) {
    detail::require_off_origin(curve);
    return j1_from(j_plus(curve), origin_winding(curve));
}

/**
 * @brief Preimage of the curve under the complex squaring map.
 *
 * Square roots are tracked continuously (each lifted vertex is the root
 * closest to the previous one). Segments subtending more than pi/4 at the
 * origin are subdivided first. Returns one closed curve when the lift comes
 * back negated after one traversal (odd winding), otherwise two components
 * that are negatives of each other; the first component then starts at
 * argument in [0, pi).
 */
inline std::vector<PolylineCurve> levi_civita_preimage(const PolylineCurve& curve) {
    detail::require_off_origin(curve);
    constexpr double max_step = pi / 4.0;
    constexpr double hard_limit = pi / 2.0;

    std::vector<Point2> dense;
    dense.reserve(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const Point2 a = curve.segment_start(i);
        const Point2 b = curve.segment_end(i);
        const double sweep = std::abs(turning_angle(a, b));
        const auto pieces = static_cast<std::size_t>(std::ceil(sweep / max_step));
        dense.push_back(a);
        for (std::size_t q = 1; q < pieces; ++q) dense.push_back(a + (static_cast<double>(q) / static_cast<double>(pieces)) * (b - a));
    }

    const std::size_t n = dense.size();
    std::vector<Point2> lift;
    lift.reserve(n);
    std::complex<double> prev = std::sqrt(to_complex(dense[0]));
    if (std::arg(prev) < 0.0) prev = -prev;
    lift.push_back(from_complex(prev));
    auto next_root = [&](Point2 z, Point2 z_prev, std::complex<double> root_prev) {
        if (std::abs(turning_angle(z_prev, z)) > hard_limit)
            throw numerical_error("consecutive vertices subtend more than pi/2 at the origin", "levi_civita_preimage");
        const std::complex<double> r = std::sqrt(to_complex(z));
        return std::abs(r - root_prev) <= std::abs(-r - root_prev) ? r : -r;
    };
    for (std::size_t i = 1; i < n; ++i) {
        prev = next_root(dense[i], dense[i - 1], prev);
        lift.push_back(from_complex(prev));
    }
    const std::complex<double> closing = next_root(dense[0], dense[n - 1], prev);
    const bool closes = std::abs(closing - to_complex(lift[0])) < std::abs(closing + to_complex(lift[0]));

    std::vector<PolylineCurve> out;
    if (closes) {
        std::vector<Point2> negated;
        negated.reserve(n);
        for (const Point2& p : lift) negated.push_back(-p);
        out.emplace_back(std::move(lift));
        out.emplace_back(std::move(negated));
    } else {
        std::vector<Point2> both = lift;
        both.reserve(2 * n);
        for (const Point2& p : lift) both.push_back(-p);
        out.emplace_back(std::move(both));
    }
    return out;
}

/// J2 = J+ of the preimage (one component when the winding about the origin is odd, the canonical one otherwise).
inline int j2(const PolylineCurve& curve) { return j_plus(levi_civita_preimage(curve).front()); }

struct InvariantReport {
    std::optional<TorusOrbitSpec> spec;
    std::optional<Regime> regime;
    int j_plus = 0;
    int w0 = 0;
    HalfInteger j1;
    int j2 = 0;
    int double_point_count = 0;
    int face_count = 0;
    int preimage_components = 0;
    int preimage_double_points = 0;  ///< per component
    int preimage_winding = 0;        ///< per component
    std::optional<ClosedFormTriple> closed_form;

    /// True when a closed form is attached and all three values agree.
    bool matches() const {
        return closed_form && closed_form->j_plus == j_plus && closed_form->j1 == j1 && closed_form->j2 == j2;
    }
};

namespace detail {

template <typename F>
auto run_stage(const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const numerical_error& e) {
        throw numerical_error(e.what(), stage);
    }
}

} // namespace detail

/// Invariants of an arbitrary curve in the punctured plane.
inline InvariantReport invariant_report(const PolylineCurve& curve) {
    detail::require_off_origin(curve);
    InvariantReport rep;
    const Arrangement arr = detail::run_stage("curve arrangement", [&] { return build_arrangement(curve); });
    rep.j_plus = j_plus(arr);
    rep.w0 = detail::run_stage("origin winding", [&] { return origin_winding(curve); });
    rep.j1 = j1_from(rep.j_plus, rep.w0);
    rep.double_point_count = static_cast<int>(arr.double_points.size());
    rep.face_count = static_cast<int>(arr.faces.size());

    const auto pre = detail::run_stage("levi-civita preimage", [&] { return levi_civita_preimage(curve); });
    rep.preimage_components = static_cast<int>(pre.size());
    if ((rep.preimage_components == 1) != (rep.w0 % 2 != 0))
        throw numerical_error("preimage has " + std::to_string(pre.size()) + " components but w0 = " +
                                  std::to_string(rep.w0),
                              "levi-civita preimage");
    const Arrangement pre_arr = detail::run_stage("preimage arrangement", [&] { return build_arrangement(pre.front()); });
    rep.j2 = j_plus(pre_arr);
    rep.preimage_double_points = static_cast<int>(pre_arr.double_points.size());
    rep.preimage_winding = detail::run_stage("preimage winding", [&] { return origin_winding(pre.front()); });
    return rep;
}

/**
 * @brief Sample a T(k,l) orbit, compute its invariants and attach the closed forms.
 *
 * Throws invalid_spec for bad specs, guard_band_error when e is within
 * @p band of 0, 1 or the loop-birth eccentricity, and numerical_error
 * (stage named) when any numerical stage fails.
 */
inline InvariantReport invariant_report(const TorusOrbitSpec& spec, std::size_t n_samples,
                                        double band = default_guard_band) {
    spec.validate();
    if (spec.e < band)
        throw guard_band_error("e = " + std::to_string(spec.e) +
                               " is too close to 0; the orbit degenerates to a multiply covered circle");
    if (1.0 - spec.e < band)
        throw guard_band_error("e = " + std::to_string(spec.e) + " is too close to the collision at e = 1");
    const Regime regime = regime_of(spec, band);
    const PolylineCurve curve = detail::run_stage("sampling", [&] { return sample_orbit(spec, n_samples); });
    InvariantReport rep = invariant_report(curve);
    rep.spec = spec;
    rep.regime = regime;
    rep.closed_form = closed_form_triple(spec.k, spec.l, regime);
    return rep;
}

inline InvariantReport invariant_report(const TorusOrbitSpec& spec) {
    return invariant_report(spec, default_sample_count(spec.k, spec.l));
}

} // namespace kjplus
