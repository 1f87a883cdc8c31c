// kjplus: closed-form values of J+, J1 and J2 for T(k,l) torus orbits
#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "errors.hpp"
#include "kepler.hpp"
#include "rational.hpp"

namespace kjplus {

/// Which branch of the eccentricity family a direct or retrograde orbit lies on.
enum class Regime {
    DirectBelowThreshold,  ///< direct orbit with e below the loop-birth eccentricity
    DirectAboveThreshold,  ///< direct orbit with e above the loop-birth eccentricity
    Retro,
};

inline const char* to_string(Regime r) {
    switch (r) {
    case Regime::DirectBelowThreshold: return "direct_below_threshold";
    case Regime::DirectAboveThreshold: return "direct_above_threshold";
    case Regime::Retro: return "retrograde";
    }
    return "unknown";
}

/**
 * @brief Classify a spec. Direct orbits are compared with critical_eccentricity(k, l).
 *
 * Throws guard_band_error when |e - threshold| < @p band.
 */
inline Regime regime_of(const TorusOrbitSpec& spec, double band = default_guard_band) {
    spec.validate();
    if (spec.direction == Direction::Retrograde) return Regime::Retro;
    const double threshold = critical_eccentricity(spec.k, spec.l);
    if (std::abs(spec.e - threshold) < band)
        throw guard_band_error("e = " + std::to_string(spec.e) + " is within " + std::to_string(band) +
                               " of the loop-birth eccentricity " + std::to_string(threshold) + " for (" +
                               std::to_string(spec.k) + "," + std::to_string(spec.l) + ")");
    return spec.e < threshold ? Regime::DirectBelowThreshold : Regime::DirectAboveThreshold;
}

/// Winding number about the origin of a direct (l - k) or retrograde (k + l) orbit.
inline int formula_winding(int k, int l, Regime r) { return r == Regime::Retro ? k + l : l - k; }

/// Winding is odd exactly when k and l have different parity.
inline bool odd_winding(int k, int l) { return ((k + l) & 1) == 1; }

inline int jplus_formula(int k, int l, Regime r) {
    validate_pair(k, l);
    const std::int64_t K = k, L = l;
    std::int64_t v = 0;
    if (r == Regime::Retro)
        v = 1 - K - K * L - L * L;
    else if (k < l && r == Regime::DirectBelowThreshold)
        v = 1 - K - 2 * K * K + 3 * K * L - L * L;
    else
        v = 1 - K + K * L - L * L;
    return static_cast<int>(v);
}

inline HalfInteger j1_formula(int k, int l, Regime r) {
    validate_pair(k, l);
    const std::int64_t K = k, L = l;
    // Twice the value keeps everything integral.
    if (k < l && r == Regime::DirectBelowThreshold)
        return HalfInteger::from_twice(2 - 2 * K - 3 * K * K + 4 * K * L - L * L);
    return HalfInteger::from_twice(2 - 2 * K + K * K - L * L);
}

inline int j2_formula(int k, int l, Regime r) {
    validate_pair(k, l);
    const std::int64_t K = k, L = l;
    const bool below_small_k = k < l && r == Regime::DirectBelowThreshold;
    if (odd_winding(k, l)) {
        if (below_small_k) return static_cast<int>(1 - 2 * K - 3 * K * K + 4 * K * L - L * L);
        return static_cast<int>((K - 1) * (K - 1) - L * L);
    }
    // Both odd: evaluate four times the value and divide exactly.
    // Each preimage component has |w0|/2 =: m layers, so J+ = 1 + k(m - 1) - m^2.
    const std::int64_t quad = below_small_k ? 4 - 4 * K - 3 * K * K + 4 * K * L - L * L
                                            : 4 - 4 * K + K * K - L * L;
    if (quad % 4 != 0)
        throw numerical_error("closed form for J2 is not an integer at (" + std::to_string(k) + "," +
                                  std::to_string(l) + ")",
                              "closed_form");
    return static_cast<int>(quad / 4);
}

struct ClosedFormTriple {
    int j_plus = 0;
    HalfInteger j1;
    int j2 = 0;

    friend bool operator==(const ClosedFormTriple&, const ClosedFormTriple&) = default;
};

inline ClosedFormTriple closed_form_triple(int k, int l, Regime r) {
    return {jplus_formula(k, l, r), j1_formula(k, l, r), j2_formula(k, l, r)};
}

} // namespace kjplus
