#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace dsq;
using oracle::C;

TEST(Metrics, PoincareMatchesOracle) {
    Rng rng(1);
    for (int i = 0; i < 500; ++i) {
        const C a = rng.unit_disk() * 0.99, b = rng.unit_disk() * 0.99;
        EXPECT_NEAR(poincare(a, b), oracle::poincare(a, b), 1e-12);
    }
    EXPECT_EQ(poincare(C(0.3, 0.1), C(0.3, 0.1)), 0.0);
    EXPECT_THROW(poincare(C(1.0, 0), C(0, 0)), ContractViolation);
}

TEST(Metrics, DiskDistanceFromOriginIsAtanh) {
    // Worked example: d(0, 0.5) = atanh 0.5
    EXPECT_NEAR(poincare(C(0, 0), C(0.5, 0)), 0.5493061443340549, 1e-15);
}

TEST(Metrics, BallAutomorphismSwapsCenterAndOrigin) {
    Rng rng(2);
    const auto B = DomainSpec::unit_ball(3);
    for (int i = 0; i < 200; ++i) {
        const Point a = sample_domain(B, rng);
        const auto at0 = ball_automorphism(a.span(), Point::zero(3).span());
        const auto ata = ball_automorphism(a.span(), a.span());
        for (std::size_t j = 0; j < 3; ++j) {
            EXPECT_NEAR(std::abs(at0[j] - a[j]), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(ata[j]), 0.0, 1e-12);
        }
        // involution
        const Point z = sample_domain(B, rng);
        const auto back = ball_automorphism(a.span(), ball_automorphism(a.span(), z.span()));
        for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(back[j] - z[j]), 0.0, 1e-10);
    }
}

TEST(Metrics, BallDistanceIsInvariantUnderAutomorphisms) {
    Rng rng(3);
    const auto B = DomainSpec::unit_ball(2);
    for (int i = 0; i < 200; ++i) {
        const Point a = sample_domain(B, rng), z = sample_domain(B, rng), w = sample_domain(B, rng);
        const Point fz(ball_automorphism(a.span(), z.span())), fw(ball_automorphism(a.span(), w.span()));
        EXPECT_NEAR(ball_distance(z, w), ball_distance(fz, fw), 1e-8);
    }
    const std::vector<C> z{C(0.3, 0.2), C(-0.1, 0.4)};
    EXPECT_NEAR(ball_distance(Point::zero(2), Point(z)), oracle::ball_distance_from_origin(z), 1e-13);
}

TEST(Metrics, ModelDistanceOnPolydiskAndScaled) {
    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        const auto z = oracle::random_in_polydisk(rng, 2, 0.99), w = oracle::random_in_polydisk(rng, 2, 0.99);
        const auto m = model_distance(DomainSpec::polydisk(2), Point(z), Point(w));
        EXPECT_TRUE(m.exact);
        EXPECT_NEAR(m.distance, oracle::polydisk_distance(z, w), 1e-12);

        std::vector<C> z2(z), w2(w);
        for (auto& c : z2) c *= 2.0;
        for (auto& c : w2) c *= 2.0;
        EXPECT_NEAR(model_distance(DomainSpec::scaled(2.0, DomainSpec::polydisk(2)), Point(z2), Point(w2)).distance,
                    oracle::polydisk_distance(z, w), 1e-12);
    }
    EXPECT_THROW(model_distance(DomainSpec::ellipsoid({1, 2}), Point::zero(2), Point::real({0.1, 0.1})),
                 UnsupportedDomain);
    EXPECT_THROW(model_distance(DomainSpec::polydisk(2), Point::zero(2), Point::real({1.0, 0.1})), ContractViolation);
}

TEST(Metrics, PuncturedDistanceSelector) {
    const auto D = DomainSpec::punctured(DomainSpec::disk());
    const Point z = Point::real({0.2}), w = Point::real({-0.4});
    EXPECT_NEAR(invariant_distance(D, z, w).distance, oracle::poincare(C(0.2, 0), C(-0.4, 0)), 1e-13);
    EXPECT_THROW(invariant_distance(D, z, w, DistanceKind::Kobayashi), UnsupportedDomain);
    EXPECT_THROW(invariant_distance(D, Point::zero(1), w), ContractViolation);
}

// Property: the exact polydisk distance from the origin lies in [atanh h^L, atanh h].
TEST(MetricsProperty, CaratheodorySandwichContainsExactDistance) {
    Rng rng(5);
    const auto P = DomainSpec::polydisk(2);
    for (const auto& dv : std::vector<std::vector<int>>{{1, 2}, {2, 1}, {2, 3}}) {
        const MultiIndex d(dv);
        for (int i = 0; i < 300; ++i) {
            const auto z = oracle::random_in_polydisk(rng, 2);
            const double c = oracle::polydisk_distance({C(0, 0), C(0, 0)}, z);
            const auto br = caratheodory_sandwich(P, d, Point(z));
            EXPECT_LE(std::tanh(br.lo), std::tanh(c) + 2e-10);
            EXPECT_GE(std::tanh(br.hi), std::tanh(c) - 2e-10);
        }
    }
    EXPECT_THROW(caratheodory_sandwich(DomainSpec::punctured(DomainSpec::disk()), MultiIndex({1}), Point::real({0.1})),
                 ContractViolation);
}

// Property: h(z) <= B_{a P} (tanh k(0, z))^{1/L} on a * P, a in {1, 2}.
TEST(MetricsProperty, LempertLowerCheckHoldsOnScaledPolydisks) {
    Rng rng(6);
    const auto P = DomainSpec::polydisk(2);
    const MultiIndex d({1, 2});
    for (double a : {1.0, 2.0}) {
        for (int i = 0; i < 300; ++i) {
            auto z = oracle::random_in_polydisk(rng, 2, a);
            std::vector<C> u(z);
            for (auto& c : u) c /= a;
            const double k = oracle::polydisk_distance({C(0, 0), C(0, 0)}, u);
            double margin = 0.0;
            EXPECT_EQ(lempert_lower_check(P, d, a, Point(z), k, 1e-9, &margin), CheckOutcome::Pass) << margin;
        }
    }
    EXPECT_EQ(lempert_lower_check(P, d, 1.0, Point::real({0.1, 0.1}), std::nullopt), CheckOutcome::Skipped);
}
