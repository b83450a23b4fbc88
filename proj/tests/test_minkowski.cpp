#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace dsq;
using oracle::C;

TEST(Minkowski, OriginIsExactZero) {
    const auto h = d_minkowski(DomainSpec::polydisk(2), MultiIndex({1, 2}), Point::zero(2));
    EXPECT_EQ(h.lo, 0.0);
    EXPECT_EQ(h.hi, 0.0);
}

TEST(Minkowski, WorkedExamplePolydisk) {
    // max(|0.25|^{1/1}, |0.25|^{1/2}) = 0.5
    const auto h = d_minkowski(DomainSpec::polydisk(2), MultiIndex({1, 2}), Point::real({0.25, 0.25}));
    EXPECT_LE(h.lo, 0.5);
    EXPECT_GE(h.hi, 0.5);
    EXPECT_LE(h.width(), 1e-10);
}

TEST(Minkowski, ScaledPolydiskGauge) {
    // h for 0.5 * polydisk at (0.25, 0) with d = 1: 0.25 / 0.5
    const auto h = d_minkowski(DomainSpec::scaled(0.5, DomainSpec::polydisk(2)), MultiIndex({1, 1}),
                               Point::real({0.25, 0.0}));
    EXPECT_NEAR(h.mid(), 0.5, 1e-10);
}

TEST(Minkowski, PointsOutsideGetLargerBrackets) {
    const auto h = d_minkowski(DomainSpec::unit_ball(2), MultiIndex({1, 1}), Point::real({30.0, 40.0}));
    EXPECT_NEAR(h.mid(), 50.0, 1e-9);
}

TEST(Minkowski, BracketInvariantOutsideAtLoInsideAtHi) {
    const auto D = DomainSpec::ellipsoid({1, 2});
    const MultiIndex d({2, 1});
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const Point z = sample_domain(D, rng);
        const auto h = d_minkowski(D, d, z);
        EXPECT_TRUE(D.contains(weighted_scale(z, d, 1.0 / h.hi)));
        if (h.lo > 0.0) {
            EXPECT_FALSE(D.contains(weighted_scale(z, d, 1.0 / h.lo)));
        }
    }
}

TEST(Minkowski, RejectsNonBalancedAndBadTolerance) {
    EXPECT_THROW(d_minkowski(DomainSpec::punctured(DomainSpec::disk()), MultiIndex({1}), Point::real({0.5})),
                 ContractViolation);
    EXPECT_THROW(d_minkowski(DomainSpec::polydisk(2), MultiIndex({1, 1}), Point::real({0.5, 0.1}), 0.0),
                 ContractViolation);
    EXPECT_THROW(d_minkowski(DomainSpec::polydisk(2), MultiIndex({1, 1}), Point::real({0.5})), ContractViolation);
    EXPECT_THROW(minkowski(DomainSpec::punctured(DomainSpec::polydisk(2)), Point::real({0.5, 0.1})), ContractViolation);
}

TEST(Minkowski, SublevelMembershipAtTheBoundary) {
    const auto P = DomainSpec::polydisk(2);
    const MultiIndex d({1, 2});
    // h = 0.5 exactly; {h < 0.5} is open.
    EXPECT_EQ(sublevel_membership(P, d, 0.5, Point::real({0.25, 0.25})), Sublevel::Outside);
    EXPECT_EQ(sublevel_membership(P, d, 0.6, Point::real({0.25, 0.25})), Sublevel::Inside);
    EXPECT_EQ(sublevel_membership(P, d, 0.4, Point::real({0.25, 0.25})), Sublevel::Outside);
    EXPECT_EQ(sublevel_membership(P, d, 1.0, Point::zero(2)), Sublevel::Inside);
    EXPECT_THROW(sublevel_membership(P, d, 0.0, Point::zero(2)), ContractViolation);
}

TEST(Minkowski, RayBoundaryOfBall) {
    const auto B = DomainSpec::unit_ball(2);
    EXPECT_NEAR(ray_boundary(B, Point::real({3.0, 4.0})), 0.2, 1e-13);
    EXPECT_THROW(ray_boundary(B, Point::zero(2)), ContractViolation);
}

TEST(Minkowski, SupBoundClosedFormOnReinhardt) {
    const auto s = sup_bound(DomainSpec::polydisk(2), MultiIndex({1, 2}), 2.0, 64, 1);
    EXPECT_TRUE(s.certified);
    EXPECT_DOUBLE_EQ(s.estimate, 2.0);  // max(2, sqrt 2)
    const auto m = sup_bound(DomainSpec::polydisk(2), MultiIndex({1, 2}), -1.0, 64, 1);
    EXPECT_DOUBLE_EQ(m.estimate, 1.0);
}

// Property: the bisection bracket contains the independent closed form.
TEST(MinkowskiProperty, BisectionMatchesClosedForms) {
    Rng rng(101);
    const auto B = DomainSpec::unit_ball(3);
    const auto P = DomainSpec::polydisk(2);
    const auto E = DomainSpec::ellipsoid({1, 2});
    for (int i = 0; i < 500; ++i) {
        const auto zb = rng.sphere(3).coords();
        std::vector<C> zbs(zb);
        const double rb = rng.uniform(0.0, 1.5);
        for (auto& c : zbs) c *= rb;
        EXPECT_NEAR(d_minkowski(B, MultiIndex({1, 1, 1}), Point(zbs)).mid(), oracle::ball_gauge(zbs), 1e-9);

        const auto zp = oracle::random_in_polydisk(rng, 2, 1.2);
        EXPECT_NEAR(d_minkowski(P, MultiIndex({2, 3}), Point(zp)).mid(), oracle::polydisk_gauge(zp, {2, 3}), 1e-9);

        const auto ze = oracle::random_in_polydisk(rng, 2);
        // p = (1, 2), d = (2, 1), m = 2
        EXPECT_NEAR(d_minkowski(E, MultiIndex({2, 1}), Point(ze)).mid(), oracle::ellipsoid_gauge(ze, {1, 2}, 2), 1e-9);
    }
}

// Property: h(lambda^d z) = |lambda| h(z).
TEST(MinkowskiProperty, WeightedHomogeneity) {
    Rng rng(202);
    const auto D = DomainSpec::product({DomainSpec::disk(), DomainSpec::ellipsoid({1, 2})});
    const MultiIndex d({2, 2, 1});
    for (int i = 0; i < 300; ++i) {
        const Point z = sample_domain(D, rng);
        const C lam = rng.unit_disk();
        const auto hz = d_minkowski(D, d, z);
        const auto hl = d_minkowski(D, d, weighted_scale(z, d, lam));
        EXPECT_NEAR(hl.mid(), std::abs(lam) * hz.mid(), 2e-10);
    }
}

// Property: h(alpha z + (1 - alpha) w) <= h(z) + h(w) on convex d-balanced domains.
TEST(MinkowskiProperty, TriangleTypeBound) {
    Rng rng(303);
    const auto D = DomainSpec::polydisk(2);
    const MultiIndex d({1, 2});
    for (int i = 0; i < 500; ++i) {
        const auto z = oracle::random_in_polydisk(rng, 2);
        const auto w = oracle::random_in_polydisk(rng, 2);
        const double a = rng.uniform();
        std::vector<C> m(2);
        for (int j = 0; j < 2; ++j) m[j] = a * z[j] + (1 - a) * w[j];
        EXPECT_LE(oracle::polydisk_gauge(m, {1, 2}),
                  d_minkowski(D, d, Point(z)).hi + d_minkowski(D, d, Point(w)).hi + 2e-10);
    }
}

TEST(MinkowskiProperty, UnitLevelSamplesHaveGaugeOne) {
    Rng rng(404);
    const auto E = DomainSpec::ellipsoid({2, 3});
    const MultiIndex d = *E.flags().dBalancedFor;
    for (int i = 0; i < 200; ++i) {
        const Point u = sample_unit_level(E, d, rng);
        EXPECT_NEAR(d_minkowski(E, d, u).mid(), 1.0, 1e-9);
    }
}
