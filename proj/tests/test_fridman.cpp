#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace dsq;
using oracle::C;

TEST(CaratheodoryBall, DiskBallHasPoincareRadius) {
    const auto D = DomainSpec::disk();
    const Point a = Point::real({0.3});
    const CaratheodoryBall ball(D, a);
    Rng rng(1);
    const double tau = 0.6;
    for (const auto& s : ball.shape_samples(64, 0, rng)) {
        const auto w = ball.at(s, tau);
        EXPECT_NEAR(oracle::poincare(C(0.3, 0), w[0]), std::atanh(tau), 1e-10);
    }
}

TEST(CaratheodoryBall, PolydiskBoundaryHasMaxRadius) {
    const auto P = DomainSpec::polydisk(2);
    const Point a{C(0.2, 0.1), C(-0.4, 0)};
    const CaratheodoryBall ball(P, a);
    Rng rng(2);
    const double tau = 0.7;
    for (const auto& s : ball.shape_samples(200, 100, rng)) {
        const auto w = ball.at(s, tau);
        EXPECT_LE(oracle::polydisk_distance(a.coords(), w), std::atanh(tau) + 1e-10);
    }
    // The boundary samples lie exactly on the sphere.
    for (const auto& s : ball.shape_samples(50, 0, rng))
        EXPECT_NEAR(oracle::polydisk_distance(a.coords(), ball.at(s, tau)), std::atanh(tau), 1e-10);
}

TEST(CaratheodoryBall, ScaledAndPuncturedUseTheModel) {
    EXPECT_TRUE(CaratheodoryBall::supported(DomainSpec::punctured(DomainSpec::scaled(0.5, DomainSpec::polydisk(2)))));
    EXPECT_FALSE(CaratheodoryBall::supported(DomainSpec::ellipsoid({1, 2})));
    EXPECT_THROW(CaratheodoryBall(DomainSpec::ellipsoid({1, 2}), Point::zero(2)), UnsupportedDomain);
    EXPECT_THROW(CaratheodoryBall(DomainSpec::disk(), Point::real({1.2})), ContractViolation);
}

TEST(Fridman, PuncturedDiskMatchesSqueezingValue) {
    // L = 1: the Fridman value equals the squeezing value |a| on the punctured disk.
    const auto D = DomainSpec::punctured(DomainSpec::disk());
    for (double x : {0.3, 0.5, 0.8}) {
        const Point a = Point::real({x});
        SearchBudget b;
        b.seed = 3;
        const auto fr = fridman_lower_bound(D, DomainSpec::disk(), MultiIndex({1}), a, MapFamily::Moebius, b);
        EXPECT_GE(fr.tanhRadius, x - 1e-3);
        EXPECT_LE(fr.tanhRadius, x + 1e-6);
        EXPECT_EQ(fr.ballCheck.failures, 0);
        EXPECT_NEAR(fr.radius, std::atanh(fr.tanhRadius), 1e-15);
        EXPECT_NEAR(fr.inf_form_upper(), 1.0 / fr.radius, 1e-15);
        for (const auto& c : fr.map.apply(std::vector<C>{C(0, 0)})) EXPECT_NEAR(std::abs(c - C(x, 0)), 0.0, 1e-12);
    }
}

TEST(Fridman, PolydiskIdentityReachesOne) {
    const auto P = DomainSpec::polydisk(2);
    const auto fr = fridman_lower_bound(P, P, MultiIndex({1, 1}), Point::zero(2), MapFamily::Affine);
    EXPECT_GE(fr.tanhRadius, 1.0 - 1e-6);
}

TEST(Fridman, RequiresHomogeneousModel) {
    const auto P = DomainSpec::polydisk(2);
    EXPECT_THROW(fridman_lower_bound(P, DomainSpec::ellipsoid({1, 2}), MultiIndex({2, 1}), Point::zero(2),
                                     MapFamily::Moebius),
                 ContractViolation);
    EXPECT_THROW(fridman_lower_bound(DomainSpec::ellipsoid({1, 2}), P, MultiIndex({1, 1}), Point::zero(2),
                                     MapFamily::Moebius),
                 UnsupportedDomain);
}

TEST(Fridman, CertificateJsonRoundTrip) {
    const auto D = DomainSpec::punctured(DomainSpec::disk());
    const auto fr = fridman_lower_bound(D, DomainSpec::disk(), MultiIndex({1}), Point::real({0.4}), MapFamily::Moebius);
    const json j = to_json(fr);
    EXPECT_EQ(j["schema"], "dsq.fridman-certificate/1");
    const auto back = fridman_certificate_from_json(j);
    EXPECT_EQ(back.tanhRadius, fr.tanhRadius);
    EXPECT_EQ(to_json(back).dump(), j.dump());
}

TEST(Sandwich, GeneralCheckConfirmsOrIsInconclusive) {
    FridmanCertificate fr{HoloMap::translate({C(0, 0)}), Point::real({0.5}), std::atanh(0.5), 0.5, {}, nullptr,
                          nullptr, "moebius", 1.0};
    EXPECT_EQ(sandwich_check_general({0.5, 0.5}, fr, 1).status, SandwichStatus::Confirmed);
    EXPECT_EQ(sandwich_check_general({0.6, 0.6}, fr, 1).status, SandwichStatus::Inconclusive);
    EXPECT_EQ(sandwich_check_general({0.7, 0.7}, fr, 2).status, SandwichStatus::Confirmed);  // 0.49 <= 0.5
    EXPECT_THROW(sandwich_check_general({0.5, 0.5}, fr, 0), ContractViolation);
}

TEST(Sandwich, OriginCheckFailsWhenFridmanExceedsSqueezing) {
    const auto P = DomainSpec::polydisk(2);
    FridmanCertificate fr{HoloMap::translate({C(0, 0), C(0, 0)}), Point::zero(2), std::atanh(0.9), 0.9, {}, nullptr,
                          nullptr, "affine", 1.0};
    EXPECT_EQ(sandwich_check_origin(P, P, MultiIndex({1, 1}), fr, {0.5, 0.95}).status, SandwichStatus::Confirmed);
    EXPECT_EQ(sandwich_check_origin(P, P, MultiIndex({1, 1}), fr, {0.5, 0.8}).status, SandwichStatus::Fail);
    EXPECT_EQ(sandwich_check_origin(P, DomainSpec::ellipsoid({1, 2}), MultiIndex({1, 1}), fr, {0.5, 1.0}).status,
              SandwichStatus::Skipped);
    fr.center = Point::real({0.1, 0.0});
    EXPECT_EQ(sandwich_check_origin(P, P, MultiIndex({1, 1}), fr, {0.5, 1.0}).status, SandwichStatus::Skipped);
}

// Property: certified balls on the punctured bidisk replay on fresh samples.
TEST(FridmanProperty, PuncturedBidiskBoundsReplay) {
    const auto D = DomainSpec::punctured(DomainSpec::polydisk(2));
    const auto P = DomainSpec::polydisk(2);
    const MultiIndex d({1, 2});
    Rng rng(7);
    for (int i = 0; i < 3; ++i) {
        const Point a = weighted_scale(sample_unit_level(P, d, rng), d, rng.uniform(0.2, 0.8));
        SearchBudget b;
        b.seed = 8 + i;
        const auto fr = fridman_lower_bound(D, P, d, a, MapFamily::Moebius, b);
        EXPECT_GT(fr.tanhRadius, 0.0);
        EXPECT_LT(fr.tanhRadius, 1.0);
        const auto rep = fridman_ball_check(fr.map, D, P, a, fr.tanhRadius, 1000 + i, b);
        EXPECT_EQ(rep.failures, 0);
    }
}
