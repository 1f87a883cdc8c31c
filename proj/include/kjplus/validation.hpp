// kjplus: closed-form validation grid over coprime (k, l)
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "closed_form.hpp"
#include "homotopy_scan.hpp"
#include "invariants.hpp"
#include "kepler.hpp"

namespace kjplus {

struct ValidationCell {
    TorusOrbitSpec spec;
    Regime regime = Regime::DirectBelowThreshold;
    ClosedFormTriple expected;
    std::optional<InvariantReport> report;
    std::string error;  ///< set when the pipeline threw

    bool passed() const { return report && report->matches(); }
};

/// Coprime pairs (k, l) with 2 <= max(k, l) <= k_max, ordered by max(k, l) then k descending.
inline std::vector<std::pair<int, int>> coprime_pairs(int k_max) {
    std::vector<std::pair<int, int>> out;
    for (int m = 2; m <= k_max; ++m)
        for (int other = m - 1; other >= 1; --other)
            if (std::gcd(m, other) == 1) {
                out.emplace_back(m, other);
                out.emplace_back(other, m);
            }
    return out;
}

/**
 * @brief Representative eccentricities per regime of one (k, l) family.
 *
 * k > l: direct at 0.15 and 0.6 times the loop-birth eccentricity,
 * retrograde at 0.2 and 0.5. k < l: direct at half the threshold, direct
 * halfway between the threshold and 1, retrograde at 0.3. The second direct
 * sample moves to the middle of the threshold and the first inverse
 * self-tangency if it would land within 0.02 of any tangency.
 */
inline std::vector<TorusOrbitSpec> representative_specs(int k, int l) {
    validate_pair(k, l);
    const double threshold = critical_eccentricity(k, l);
    if (k > l)
        return {{k, l, 0.15 * threshold, Direction::Direct},
                {k, l, 0.6 * threshold, Direction::Direct},
                {k, l, 0.2, Direction::Retrograde},
                {k, l, 0.5, Direction::Retrograde}};

    double above = threshold + 0.5 * (1.0 - threshold);
    const ScanResult scan = scan_family(k, l);
    std::vector<double> tangencies;
    for (const auto& ev : scan.events)
        if (ev.kind == EventKind::IIPlus) tangencies.push_back(ev.eccentricity);
    const bool too_close =
        std::any_of(tangencies.begin(), tangencies.end(), [&](double t) { return std::abs(t - above) < 0.02; });
    if (too_close) above = 0.5 * (threshold + tangencies.front());
    return {{k, l, 0.5 * threshold, Direction::Direct},
            {k, l, above, Direction::Direct},
            {k, l, 0.3, Direction::Retrograde}};
}

inline std::vector<ValidationCell> validation_cells(int k_max) {
    if (k_max < 2) throw invalid_spec("validation needs k_max >= 2");
    std::vector<ValidationCell> cells;
    for (auto [k, l] : coprime_pairs(k_max))
        for (const auto& spec : representative_specs(k, l)) {
            ValidationCell c;
            c.spec = spec;
            c.regime = regime_of(spec);
            c.expected = closed_form_triple(k, l, c.regime);
            cells.push_back(c);
        }
    return cells;
}

/**
 * @brief Evaluate every cell, in parallel over @p threads workers (0 means hardware concurrency).
 *
 * @p n_samples of 0 uses default_sample_count for each cell.
 */
inline void run_validation(std::vector<ValidationCell>& cells, std::size_t n_samples = 0, unsigned threads = 0) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            ValidationCell& c = cells[i];
            try {
                c.report = n_samples ? invariant_report(c.spec, n_samples) : invariant_report(c.spec);
            } catch (const std::exception& e) {
                c.error = e.what();
            }
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
}

} // namespace kjplus
