#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace dsq;
using oracle::C;

TEST(Domain, BallMembershipIsStrict) {
    const auto B = DomainSpec::unit_ball(2);
    EXPECT_TRUE(B.contains(Point({C(0.6, 0), C(0, 0.79)})));
    EXPECT_FALSE(B.contains(Point({C(0.6, 0), C(0, 0.8)})));  // |z| = 1 exactly
    EXPECT_FALSE(B.contains(Point({C(1.0, 0), C(0, 0)})));
}

TEST(Domain, PolydiskMembershipIsCoordinatewise) {
    const auto P = DomainSpec::polydisk(2);
    EXPECT_TRUE(P.contains(Point({C(0.99, 0), C(0, -0.99)})));
    EXPECT_FALSE(P.contains(Point({C(0.5, 0), C(1.0, 0)})));
}

TEST(Domain, EllipsoidMembershipAndIndex) {
    const auto E = DomainSpec::ellipsoid({1, 2});
    // |z1|^2 + |z2|^4 < 1
    EXPECT_TRUE(E.contains(Point({C(0.5, 0), C(0.9, 0)})));   // 0.25 + 0.6561
    EXPECT_FALSE(E.contains(Point({C(0.6, 0), C(0.9, 0)})));  // 0.36 + 0.6561
    ASSERT_TRUE(E.flags().dBalancedFor.has_value());
    EXPECT_EQ(E.flags().dBalancedFor->values(), (std::vector<int>{2, 1}));
    EXPECT_FALSE(E.flags().homogeneous);
    EXPECT_TRUE(DomainSpec::ellipsoid({1, 1}).flags().homogeneous);
}

TEST(Domain, ScaledAndPuncturedMembership) {
    const auto half = DomainSpec::scaled(0.5, DomainSpec::polydisk(2));
    EXPECT_TRUE(half.contains(Point({C(0.49, 0), C(0.3, 0)})));
    EXPECT_FALSE(half.contains(Point({C(0.51, 0), C(0.3, 0)})));

    const auto pd = DomainSpec::punctured(DomainSpec::disk());
    EXPECT_FALSE(pd.contains(Point::zero(1)));
    EXPECT_TRUE(pd.contains(Point({C(1e-300, 0)})));
    EXPECT_TRUE(pd.has_punctures());
    EXPECT_FALSE(pd.flags().balanced);
    EXPECT_FALSE(pd.is_d_balanced(MultiIndex({1})));
    EXPECT_TRUE(pd.filled().as<UnitBall>() != nullptr);
    ASSERT_EQ(pd.puncture_points().size(), 1u);
    EXPECT_TRUE(pd.puncture_points()[0].is_zero());
}

TEST(Domain, ProductFlagsAndMembership) {
    const auto D = DomainSpec::product({DomainSpec::disk(), DomainSpec::ellipsoid({1, 2})});
    EXPECT_EQ(D.dim(), 3u);
    EXPECT_TRUE(D.flags().convex);
    EXPECT_FALSE(D.flags().homogeneous);
    EXPECT_EQ(D.flags().dBalancedFor->values(), (std::vector<int>{1, 2, 1}));
    EXPECT_TRUE(D.contains(Point({C(0.9, 0), C(0.5, 0), C(0.9, 0)})));
    EXPECT_FALSE(D.contains(Point({C(1.0, 0), C(0.5, 0), C(0.9, 0)})));
}

TEST(Domain, DBalancedForReinhardtAndPolyhedron) {
    const auto P = DomainSpec::polydisk(2);
    EXPECT_TRUE(P.is_d_balanced(MultiIndex({1, 2})));
    EXPECT_TRUE(P.is_d_balanced(MultiIndex({2, 3})));
    EXPECT_FALSE(P.is_d_balanced(MultiIndex({1})));

    // |z1 + z2| < 1, |z1 - z2| < 1: balanced but not Reinhardt.
    const auto H = DomainSpec::linear_polyhedron({{C(1, 0), C(1, 0)}, {C(1, 0), C(-1, 0)}}, {1.0, 1.0});
    EXPECT_TRUE(H.is_d_balanced(MultiIndex({1, 1})));
    EXPECT_TRUE(H.is_d_balanced(MultiIndex({2, 2})));
    EXPECT_FALSE(H.is_d_balanced(MultiIndex({1, 2})));
    EXPECT_TRUE(H.contains(Point({C(0.45, 0), C(0.45, 0)})));
    EXPECT_FALSE(H.contains(Point({C(0.55, 0), C(0.45, 0)})));
}

TEST(Domain, InvalidConstructionThrows) {
    EXPECT_THROW(DomainSpec::unit_ball(0), ContractViolation);
    EXPECT_THROW(DomainSpec::scaled(0.0, DomainSpec::disk()), ContractViolation);
    EXPECT_THROW(DomainSpec::product({}), ContractViolation);
    EXPECT_THROW(DomainSpec::ellipsoid({1, 0}), ContractViolation);
    EXPECT_THROW(DomainSpec::linear_polyhedron({{C(1, 0), C(0, 0)}}, {1.0}), ContractViolation);  // unbounded
}

TEST(Domain, NonFiniteCoordinatesAreOutside) {
    const auto B = DomainSpec::unit_ball(1);
    const std::vector<C> nan{C(std::nan(""), 0)};
    const std::vector<C> inf{C(std::numeric_limits<double>::infinity(), 0)};
    EXPECT_FALSE(B.contains(std::span<const C>(nan)));
    EXPECT_FALSE(B.contains(std::span<const C>(inf)));
    EXPECT_THROW(static_cast<void>(Point(std::vector<C>(nan))), ContractViolation);
}

// Property: membership agrees with the defining inequality on random points of a box around
// each model domain.
TEST(DomainProperty, MembershipMatchesDefiningInequality) {
    Rng rng(20240917);
    const auto B = DomainSpec::unit_ball(2);
    const auto P = DomainSpec::polydisk(2);
    const auto E = DomainSpec::ellipsoid({1, 2});
    for (int i = 0; i < 5000; ++i) {
        const auto z = oracle::random_in_polydisk(rng, 2, 1.3);
        const Point p(z);
        const double nb = std::norm(z[0]) + std::norm(z[1]);
        const double ne = std::norm(z[0]) + std::pow(std::norm(z[1]), 2);
        EXPECT_EQ(B.contains(p), nb < 1.0);
        EXPECT_EQ(P.contains(p), std::abs(z[0]) < 1.0 && std::abs(z[1]) < 1.0);
        EXPECT_EQ(E.contains(p), ne < 1.0);
    }
}

// Property: the weighted circle action maps each d-balanced domain into itself.
TEST(DomainProperty, WeightedActionPreservesMembership) {
    Rng rng(7);
    const std::vector<std::pair<DomainSpec, MultiIndex>> cases = {
        {DomainSpec::polydisk(2), MultiIndex({1, 2})},
        {DomainSpec::ellipsoid({1, 2}), MultiIndex({2, 1})},
        {DomainSpec::unit_ball(2), MultiIndex({1, 1})},
        {DomainSpec::product({DomainSpec::disk(), DomainSpec::ellipsoid({1, 2})}), MultiIndex({2, 2, 1})},
    };
    for (const auto& [D, d] : cases) {
        for (int i = 0; i < 500; ++i) {
            const Point z = sample_domain(D, rng);
            ASSERT_TRUE(D.contains(z));
            EXPECT_TRUE(D.contains(weighted_scale(z, d, rng.unit_disk()))) << D.describe();
        }
    }
}

TEST(DomainProperty, SamplersStayInside) {
    Rng rng(11);
    for (const auto& D : {DomainSpec::punctured(DomainSpec::polydisk(2)), DomainSpec::ellipsoid({1, 3}),
                          DomainSpec::scaled(0.5, DomainSpec::unit_ball(3))}) {
        for (int i = 0; i < 300; ++i) EXPECT_TRUE(D.contains(sample_domain(D, rng)));
    }
}
