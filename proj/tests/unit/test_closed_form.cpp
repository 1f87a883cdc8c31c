// Closed-form oracle and regime classification.
#include <gtest/gtest.h>

#include <numeric>

#include "kjplus/closed_form.hpp"

using namespace kjplus;

namespace {

constexpr Regime all_regimes[] = {Regime::DirectBelowThreshold, Regime::DirectAboveThreshold, Regime::Retro};

} // namespace

TEST(RegimeOf, Classification) {
    EXPECT_EQ(regime_of({5, 2, 0.2, Direction::Direct}), Regime::DirectBelowThreshold);
    EXPECT_EQ(regime_of({5, 2, 0.6, Direction::Direct}), Regime::DirectAboveThreshold);
    EXPECT_EQ(regime_of({3, 5, 0.4, Direction::Direct}), Regime::DirectAboveThreshold);
    EXPECT_EQ(regime_of({3, 5, 0.1, Direction::Direct}), Regime::DirectBelowThreshold);
    EXPECT_EQ(regime_of({3, 5, 0.4, Direction::Retrograde}), Regime::Retro);
}

TEST(RegimeOf, GuardBandAroundThreshold) {
    EXPECT_THROW(regime_of({5, 2, 0.481, Direction::Direct}), guard_band_error);
    EXPECT_NO_THROW(regime_of({5, 2, 0.481, Direction::Retrograde}));
    EXPECT_NO_THROW(regime_of({5, 2, 0.481, Direction::Direct}, 1e-4));
}

TEST(JPlusFormula, Cases) {
    EXPECT_EQ(jplus_formula(5, 2, Regime::DirectBelowThreshold), 2);
    EXPECT_EQ(jplus_formula(5, 2, Regime::DirectAboveThreshold), 2);
    EXPECT_EQ(jplus_formula(3, 5, Regime::DirectBelowThreshold), 0);
    EXPECT_EQ(jplus_formula(3, 5, Regime::DirectAboveThreshold), -12);
    EXPECT_EQ(jplus_formula(5, 2, Regime::Retro), -18);
    EXPECT_EQ(jplus_formula(3, 5, Regime::Retro), -42);
}

TEST(J1Formula, Cases) {
    for (Regime r : all_regimes) EXPECT_EQ(j1_formula(5, 2, r), HalfInteger::from_fraction(13, 2));
    EXPECT_EQ(j1_formula(3, 5, Regime::DirectBelowThreshold), HalfInteger::from_integer(2));
    EXPECT_EQ(j1_formula(3, 5, Regime::Retro), HalfInteger::from_integer(-10));
    EXPECT_EQ(j1_formula(3, 2, Regime::Retro), HalfInteger::from_fraction(1, 2));
}

TEST(J2Formula, Cases) {
    for (Regime r : all_regimes) {
        EXPECT_EQ(j2_formula(5, 2, r), 12);
        EXPECT_EQ(j2_formula(5, 1, r), 2);
        EXPECT_EQ(j2_formula(3, 2, r), 0);
    }
    // Both odd, k < l: each preimage component has |w0|/2 layers.
    EXPECT_EQ(j2_formula(3, 5, Regime::DirectBelowThreshold), 0);
    EXPECT_EQ(j2_formula(3, 5, Regime::DirectAboveThreshold), -6);
    EXPECT_EQ(j2_formula(3, 5, Regime::Retro), -6);
    EXPECT_EQ(j2_formula(1, 5, Regime::DirectBelowThreshold), -2);
    EXPECT_EQ(j2_formula(3, 7, Regime::Retro), -12);
}

TEST(ClosedForm, RejectsInvalidPairs) {
    EXPECT_THROW(jplus_formula(4, 6, Regime::Retro), invalid_spec);
    EXPECT_THROW(j1_formula(1, 1, Regime::Retro), invalid_spec);
    EXPECT_THROW(j2_formula(0, 3, Regime::Retro), invalid_spec);
}

TEST(ClosedForm, InternalIdentitiesUpToTwelve) {
    for (int k = 1; k <= 12; ++k)
        for (int l = 1; l <= 12; ++l) {
            if (std::gcd(k, l) != 1 || (k == 1 && l == 1)) continue;
            for (Regime r : all_regimes) {
                const int w0 = formula_winding(k, l, r);
                const int jp = jplus_formula(k, l, r);
                const HalfInteger j1 = j1_formula(k, l, r);
                const int j2 = j2_formula(k, l, r);
                EXPECT_EQ(jp % 2, 0) << k << "," << l;
                EXPECT_EQ(j1, HalfInteger::from_integer(jp) + HalfInteger::from_twice(static_cast<std::int64_t>(w0) * w0))
                    << k << "," << l << " " << to_string(r);
                if (odd_winding(k, l)) {
                    EXPECT_EQ(HalfInteger::from_integer(j2), 2 * j1 - HalfInteger::from_integer(1));
                }
                // The J1 and J2 values are constant along the whole family for k > l.
                if (k > l) {
                    EXPECT_EQ(j1, j1_formula(k, l, Regime::Retro));
                    EXPECT_EQ(j2, j2_formula(k, l, Regime::Retro));
                }
            }
            if (k < l) {
                EXPECT_EQ(j1_formula(k, l, Regime::DirectAboveThreshold), j1_formula(k, l, Regime::Retro));
                EXPECT_EQ(j2_formula(k, l, Regime::DirectAboveThreshold), j2_formula(k, l, Regime::Retro));
            }
        }
}

TEST(ClosedForm, EvenWindingJ2IsEven) {
    // J2 is a J+ value, so it is always even.
    for (int k = 1; k <= 15; k += 2)
        for (int l = 1; l <= 15; l += 2) {
            if (std::gcd(k, l) != 1 || (k == 1 && l == 1)) continue;
            for (Regime r : all_regimes) EXPECT_EQ(j2_formula(k, l, r) % 2, 0) << k << "," << l;
        }
}
