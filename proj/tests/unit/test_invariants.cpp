// J1, the Levi-Civita preimage, J2 and the orbit invariant report.
#include <gtest/gtest.h>

#include <vector>

#include "kjplus/invariants.hpp"
#include "kjplus/standard_curves.hpp"

using namespace kjplus;

namespace {

PolylineCurve circle(double r, std::size_t n = 256) {
    std::vector<Point2> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(polar(r, two_pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n)));
    return PolylineCurve(std::move(v));
}

} // namespace

TEST(HalfInteger, Arithmetic) {
    const HalfInteger h = HalfInteger::from_fraction(13, 2);
    EXPECT_EQ(h.twice(), 13);
    EXPECT_FALSE(h.is_integer());
    EXPECT_EQ(h.numerator(), 13);
    EXPECT_EQ(h.denominator(), 2);
    EXPECT_EQ(h.to_string(), "13/2");
    EXPECT_EQ(2 * h - HalfInteger::from_integer(1), HalfInteger::from_integer(12));
    EXPECT_EQ((2 * h - HalfInteger::from_integer(1)).to_integer(), 12);
    EXPECT_THROW(h.to_integer(), invalid_spec);
    EXPECT_THROW(HalfInteger::from_fraction(1, 3), invalid_spec);
    EXPECT_EQ(HalfInteger::from_fraction(-4, 2).to_string(), "-2");
}

TEST(J1, UnitCircleAboutOrigin) { EXPECT_EQ(j1(circle(1.0)), HalfInteger::from_fraction(1, 2)); }

TEST(J1, SampledT52BothDirections) {
    EXPECT_EQ(j1(sample_orbit({5, 2, 0.2, Direction::Direct})), HalfInteger::from_fraction(13, 2));
    EXPECT_EQ(j1(sample_orbit({5, 2, 0.3, Direction::Retrograde})), HalfInteger::from_fraction(13, 2));
}

TEST(J1, SampledT35DirectBelowThreshold) {
    EXPECT_EQ(j1(sample_orbit({3, 5, 0.1, Direction::Direct})), HalfInteger::from_integer(2));
}

TEST(J1, CurveThroughOriginIsRejected) {
    // The figure eight crosses itself at the origin.
    EXPECT_THROW(j1(standard_curve(0)), invalid_spec);
}

TEST(LeviCivitaPreimage, CircleOfRadiusFour) {
    const auto pre = levi_civita_preimage(circle(4.0));
    ASSERT_EQ(pre.size(), 1u);
    EXPECT_NEAR(pre[0].min_radius(), 2.0, 1e-12);
    EXPECT_NEAR(pre[0].max_radius(), 2.0, 1e-12);
    EXPECT_EQ(winding_at(pre[0], {0, 0}), 1);
    EXPECT_EQ(pre[0].size(), 512u);
    for (std::size_t i = 0; i < pre[0].size(); i += 17) {
        const auto z = to_complex(pre[0][i]);
        EXPECT_NEAR(std::abs(z * z), 4.0, 1e-12);
    }
}

TEST(LeviCivitaPreimage, T41DirectOddWinding) {
    const auto pre = levi_civita_preimage(sample_orbit({4, 1, 0.2, Direction::Direct}));
    ASSERT_EQ(pre.size(), 1u);
    EXPECT_EQ(winding_at(pre[0], {0, 0}), -3);
    EXPECT_EQ(find_double_points(pre[0]).size(), 16u);
}

TEST(LeviCivitaPreimage, T51DirectEvenWinding) {
    const auto pre = levi_civita_preimage(sample_orbit({5, 1, 0.2, Direction::Direct}));
    ASSERT_EQ(pre.size(), 2u);
    for (const auto& c : pre) {
        EXPECT_EQ(winding_at(c, {0, 0}), -2);
        EXPECT_EQ(find_double_points(c).size(), 5u);
    }
    const double a0 = arg(pre[0][0]);
    EXPECT_GE(a0, 0.0);
    EXPECT_LT(a0, pi);
    // Components are negatives of each other and have the same J+.
    for (std::size_t i = 0; i < pre[0].size(); i += 101) EXPECT_EQ(pre[1][i], -pre[0][i]);
    EXPECT_EQ(j_plus(pre[0]), j_plus(pre[1]));
}

TEST(LeviCivitaPreimage, CoarseInputIsSubdivided) {
    // Eight vertices: each step subtends pi/4 at the origin.
    const auto pre = levi_civita_preimage(circle(1.0, 8));
    ASSERT_EQ(pre.size(), 1u);
    EXPECT_EQ(winding_at(pre[0], {0, 0}), 1);
    // Five vertices: 72 degree steps are subdivided before lifting.
    EXPECT_EQ(winding_at(levi_civita_preimage(circle(1.0, 5))[0], {0, 0}), 1);
}

TEST(J2, SpotValues) {
    EXPECT_EQ(j2(sample_orbit({5, 2, 0.2, Direction::Direct})), 12);
    EXPECT_EQ(j2(sample_orbit({5, 1, 0.2, Direction::Direct})), 2);
    EXPECT_EQ(j2(sample_orbit({3, 2, 0.2, Direction::Direct})), 0);
}

TEST(InvariantReport, T52Direct) {
    const InvariantReport r = invariant_report(TorusOrbitSpec{5, 2, 0.2, Direction::Direct});
    EXPECT_EQ(r.j_plus, 2);
    EXPECT_EQ(r.w0, -3);
    EXPECT_EQ(r.j1, HalfInteger::from_fraction(13, 2));
    EXPECT_EQ(r.j2, 12);
    EXPECT_EQ(r.double_point_count, 10);
    EXPECT_EQ(r.face_count, 12);
    EXPECT_EQ(r.preimage_components, 1);
    EXPECT_EQ(r.preimage_double_points, 20);
    EXPECT_EQ(r.preimage_winding, -3);
    EXPECT_EQ(*r.regime, Regime::DirectBelowThreshold);
    EXPECT_TRUE(r.matches());
}

TEST(InvariantReport, T52Retrograde) {
    const InvariantReport r = invariant_report(TorusOrbitSpec{5, 2, 0.3, Direction::Retrograde});
    EXPECT_EQ(r.j_plus, -18);
    EXPECT_EQ(r.w0, 7);
    EXPECT_EQ(r.j1, HalfInteger::from_fraction(13, 2));
    EXPECT_EQ(r.j2, 12);
    EXPECT_TRUE(r.matches());
}

TEST(InvariantReport, T35DirectBelowThreshold) {
    const InvariantReport r = invariant_report(TorusOrbitSpec{3, 5, 0.1, Direction::Direct});
    EXPECT_EQ(r.j_plus, 0);
    EXPECT_EQ(r.w0, 2);
    EXPECT_EQ(r.j1, HalfInteger::from_integer(2));
    // Each preimage component is an embedded loop around the origin.
    EXPECT_EQ(r.preimage_components, 2);
    EXPECT_EQ(r.preimage_double_points, 0);
    EXPECT_EQ(r.preimage_winding, 1);
    EXPECT_EQ(r.j2, 0);
    EXPECT_TRUE(r.matches());
}

TEST(InvariantReport, ParityRelationForOddWinding) {
    for (const TorusOrbitSpec& s : {TorusOrbitSpec{3, 2, 0.1, Direction::Direct}, TorusOrbitSpec{2, 3, 0.5, Direction::Retrograde},
                                    TorusOrbitSpec{4, 1, 0.3, Direction::Direct}}) {
        const InvariantReport r = invariant_report(s);
        ASSERT_NE(r.w0 % 2, 0);
        EXPECT_EQ(HalfInteger::from_integer(r.j2), 2 * r.j1 - HalfInteger::from_integer(1));
    }
}

TEST(InvariantReport, ReversalAndRotationInvariance) {
    const PolylineCurve c = sample_orbit({5, 3, 0.25, Direction::Retrograde});
    const InvariantReport base = invariant_report(c);
    for (const PolylineCurve& other : {c.reversed(), c.transformed([](Point2 p) { return rotate(p, 1.1); })}) {
        const InvariantReport r = invariant_report(other);
        EXPECT_EQ(r.j_plus, base.j_plus);
        EXPECT_EQ(r.j1, base.j1);
        EXPECT_EQ(r.j2, base.j2);
    }
}

TEST(InvariantReport, GuardBandsAndInvalidSpecs) {
    EXPECT_THROW(invariant_report(TorusOrbitSpec{5, 2, 0.481, Direction::Direct}), guard_band_error);
    EXPECT_THROW(invariant_report(TorusOrbitSpec{5, 2, 0.0, Direction::Direct}), guard_band_error);
    EXPECT_THROW(invariant_report(TorusOrbitSpec{5, 2, 0.9995, Direction::Retrograde}), guard_band_error);
    EXPECT_THROW(invariant_report(TorusOrbitSpec{4, 4, 0.2, Direction::Direct}), invalid_spec);
}

TEST(InvariantReport, NumericalFailuresNameTheStage) {
    // Far too few samples for T(5,2): the polygon misses crossings or turns back on itself.
    try {
        invariant_report(TorusOrbitSpec{5, 2, 0.2, Direction::Retrograde}, 20);
        SUCCEED();
    } catch (const numerical_error& e) {
        EXPECT_FALSE(e.stage().empty());
    }
}
