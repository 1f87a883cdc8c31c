// kjplus: scalar root finding
#pragma once

#include <cmath>
#include <string>

#include "errors.hpp"

namespace kjplus {

/**
 * @brief Newton iteration safeguarded by a bracket.
 *
 * f(lo) and f(hi) must have opposite signs (or one of them is zero). Each
 * step tries Newton from the current iterate and falls back to bisection
 * whenever the Newton step leaves the bracket. Stops when the bracket is
 * narrower than @p xtol or the residual is exactly zero.
 */
template <typename F, typename DF>
double bracketed_newton(F&& f, DF&& df, double lo, double hi, double xtol = 1e-15,
                        int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw numerical_error("root not bracketed on [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]",
                              "root finding");

    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < max_iter; ++iter) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        if (std::abs(hi - lo) <= xtol * (1.0 + std::abs(x))) return x;

        const double d = df(x);
        double next = d != 0.0 ? x - fx / d : lo - 1.0;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x) return x;
        x = next;
    }
    // Bracket is tiny by now; the midpoint is as good as anything.
    return 0.5 * (lo + hi);
}

/// Plain bisection; used where an independent check of a Newton-based result is wanted.
template <typename F>
double bisect(F&& f, double lo, double hi, int iterations = 200) {
    double flo = f(lo);
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace kjplus
