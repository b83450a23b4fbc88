#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace dsq;
using oracle::C;

namespace {

SearchBudget small_budget(std::uint64_t seed) {
    SearchBudget b;
    b.seed = seed;
    return b;
}

}  // namespace

TEST(Squeezing, PuncturedDiskMoebiusReachesGauge) {
    // On the punctured disk the squeezing value at z is |z|.
    const auto D = DomainSpec::punctured(DomainSpec::disk());
    const auto Omega = DomainSpec::disk();
    for (double x : {0.1, 0.5, 0.9}) {
        const Point z{std::polar(x, 0.7)};
        const auto cert = certify_lower_bound(D, Omega, MultiIndex({1}), z, MapFamily::Moebius, small_budget(1));
        EXPECT_GE(cert.radius, x - 1e-4);
        EXPECT_LE(cert.radius, x + 1e-6);
        EXPECT_EQ(cert.imageCheck.failures, 0);
        EXPECT_EQ(cert.coverageCheck.failures, 0);
    }
}

TEST(Squeezing, DiskAutomorphismGivesOne) {
    const auto D = DomainSpec::disk();
    const auto cert = certify_lower_bound(D, D, MultiIndex({1}), Point{C(0.3, -0.4)}, MapFamily::Moebius,
                                          small_budget(2));
    EXPECT_GE(cert.radius, 1.0 - 1e-3);
}

TEST(Squeezing, HalfPolydiskAtOriginScalesToOne) {
    const auto D = DomainSpec::scaled(0.5, DomainSpec::polydisk(2));
    const auto cert = certify_lower_bound(D, DomainSpec::polydisk(2), MultiIndex({1, 2}), Point::zero(2),
                                          MapFamily::Affine, small_budget(3));
    EXPECT_GE(cert.radius, 1.0 - 1e-3);
}

TEST(Squeezing, CertificateSendsAnchorToZeroAndReplays) {
    const auto B = DomainSpec::unit_ball(2);
    const Point z{C(0.3, 0.1), C(-0.2, 0.2)};
    const auto cert = certify_lower_bound(B, B, MultiIndex({1, 1}), z, MapFamily::Moebius, small_budget(4));
    for (const auto& c : cert.map.apply(z.span())) EXPECT_LT(std::abs(c), 1e-12);
    EXPECT_GT(cert.radius, 0.0);
    EXPECT_LE(cert.radius, 1.0);
    for (std::uint64_t s : {11u, 12u, 13u}) {
        const auto [img, cov] = verify_certificate(cert, s, 1000, 1000);
        EXPECT_EQ(img.failures, 0);
        EXPECT_EQ(cov.failures, 0);
    }
}

TEST(Squeezing, SameSeedSameCertificate) {
    const auto D = DomainSpec::punctured(DomainSpec::polydisk(2));
    const auto P = DomainSpec::polydisk(2);
    const Point z = Point::real({0.2, 0.3});
    const auto a = certify_lower_bound(D, P, MultiIndex({1, 2}), z, MapFamily::Moebius, small_budget(5));
    const auto b = certify_lower_bound(D, P, MultiIndex({1, 2}), z, MapFamily::Moebius, small_budget(5));
    EXPECT_EQ(a.radius, b.radius);
    EXPECT_EQ(a.param, b.param);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(Squeezing, CertificateJsonRoundTrip) {
    const auto D = DomainSpec::punctured(DomainSpec::disk());
    const auto cert = certify_lower_bound(D, DomainSpec::disk(), MultiIndex({1}), Point::real({0.4}),
                                          MapFamily::Moebius, small_budget(6));
    const json j = to_json(cert);
    EXPECT_EQ(j["schema"], "dsq.certificate/1");
    const auto back = certificate_from_json(j);
    EXPECT_EQ(back.radius, cert.radius);
    EXPECT_EQ(back.D->describe(), cert.D->describe());
    EXPECT_EQ(to_json(back).dump(), j.dump());
    EXPECT_THROW(certificate_from_json(json{{"schema", "other"}}), ContractViolation);
}

TEST(Squeezing, ContractViolations) {
    const auto P = DomainSpec::polydisk(2);
    EXPECT_THROW(certify_lower_bound(P, P, MultiIndex({1, 1}), Point::real({1.5, 0.0}), MapFamily::Moebius),
                 ContractViolation);
    EXPECT_THROW(certify_lower_bound(P, DomainSpec::punctured(P), MultiIndex({1, 1}), Point::zero(2),
                                     MapFamily::Moebius),
                 ContractViolation);
    EXPECT_THROW(certify_lower_bound(P, P, MultiIndex({1}), Point::zero(2), MapFamily::Moebius), ContractViolation);
    EXPECT_THROW(punctured_value(P, MultiIndex({1, 1}), Point::zero(2)), ContractViolation);
    EXPECT_THROW(parse_family("spline"), ContractViolation);
}

TEST(Squeezing, PuncturedValueBrackets) {
    const auto P = DomainSpec::polydisk(2);
    const auto exact = punctured_value(P, MultiIndex({1, 1}), Point::real({0.3, 0.2}));
    EXPECT_NEAR(exact.mid(), 0.3, 1e-10);
    // d = (1, 2): h = max(0.09, sqrt 0.25) = 0.5; bracket [h^2, h^{1/2}]
    const auto br = punctured_value(P, MultiIndex({1, 2}), Point::real({0.09, 0.25}));
    EXPECT_NEAR(br.lo, 0.25, 1e-9);
    EXPECT_NEAR(br.hi, std::sqrt(0.5), 1e-9);
}

TEST(Squeezing, PuncturedBidiskSandwich) {
    const auto D = DomainSpec::punctured(DomainSpec::polydisk(2));
    const auto P = DomainSpec::polydisk(2);
    const MultiIndex d({1, 2});
    Rng rng(14);
    for (int i = 0; i < 3; ++i) {
        const Point z = weighted_scale(sample_unit_level(P, d, rng), d, rng.uniform(0.2, 0.8));
        const double h = oracle::polydisk_gauge(z.coords(), {1, 2});
        const auto m = certify_lower_bound(D, P, d, z, MapFamily::Moebius, small_budget(15 + i));
        EXPECT_LE(m.radius, std::sqrt(h) + 1e-6);
        double best = m.radius;
        try {
            best = std::max(best, certify_lower_bound(D, P, d, z, MapFamily::DPower, small_budget(20 + i)).radius);
        } catch (const NumericFailure&) {
        }
        EXPECT_GE(best, h * h - 1e-3);
    }
}

TEST(Squeezing, ProductBoundIsMinimumAndReplays) {
    const auto B = DomainSpec::unit_ball(2);
    const auto P = DomainSpec::polydisk(2);
    const auto c1 = certify_lower_bound(B, B, MultiIndex({1, 1}), Point::real({0.2, 0.1}), MapFamily::Moebius,
                                        small_budget(30));
    const auto c2 = certify_lower_bound(DomainSpec::punctured(P), P, MultiIndex({1, 1}), Point::real({0.4, 0.1}),
                                        MapFamily::Moebius, small_budget(31));
    const auto pb = product_lower_bound({c1, c2}, 99);
    EXPECT_EQ(pb.radius, std::min(c1.radius, c2.radius));
    EXPECT_EQ(pb.certificate.imageCheck.failures, 0);
    EXPECT_EQ(pb.certificate.coverageCheck.failures, 0);
    EXPECT_EQ(pb.certificate.D->dim(), 4u);
}

TEST(Squeezing, TransportCertificateIsVerified) {
    const auto P = DomainSpec::polydisk(2);
    const auto c = certify_lower_bound(P, P, MultiIndex({1, 1}), Point::real({0.2, 0.0}), MapFamily::Moebius,
                                       small_budget(40));
    const auto t = transport_certificate(c, Point::real({0.25, 0.05}), small_budget(41));
    ASSERT_TRUE(t.has_value());
    EXPECT_GT(t->radius, 0.0);
    EXPECT_EQ(t->coverageCheck.failures, 0);
    const auto [img, cov] = verify_certificate(*t, 42, 1000, 1000);
    EXPECT_EQ(img.failures, 0);
    EXPECT_EQ(cov.failures, 0);
}

TEST(Squeezing, ExhaustionSweepDecreasesToTheLimit) {
    const auto Disk = DomainSpec::disk();
    std::vector<double> radii;
    for (int k = 3; k <= 50; ++k) radii.push_back(1.0 - 1.0 / k);
    const auto s = exhaustion_sweep(Disk, MultiIndex({1}), Point::real({0.5}), radii);
    for (std::size_t k = 0; k < s.values.size(); ++k) EXPECT_NEAR(s.values[k].mid(), 0.5 / radii[k], 1e-9);
    for (std::size_t k = 1; k < s.values.size(); ++k) EXPECT_LE(s.values[k].hi, s.values[k - 1].hi + 2e-10);
    EXPECT_LT(s.values.back().mid() - s.limit.mid(), 0.011);
    EXPECT_THROW(exhaustion_sweep(Disk, MultiIndex({1}), Point::real({0.7}), {0.5}), ContractViolation);
}

// Property: |S(z1) - S(z2)| <= A (tanh k(z1, z2))^{1/L} with A = 3 on the (1, 2) bidisk.
TEST(SqueezingProperty, ContinuityModulusOnPuncturedBidisk) {
    const auto P = DomainSpec::polydisk(2);
    const MultiIndex d({1, 2});
    const auto bm = sup_bound(P, d, -1.0, 64, 1);
    const auto b2 = sup_bound(P, d, 2.0, 64, 2);
    EXPECT_DOUBLE_EQ(bm.estimate + b2.estimate, 3.0);
    Rng rng(50);
    for (int i = 0; i < 500; ++i) {
        const auto z1 = oracle::random_in_polydisk(rng, 2), z2 = oracle::random_in_polydisk(rng, 2);
        const double k = oracle::polydisk_distance(z1, z2);
        const auto s1 = punctured_value(P, d, Point(z1)), s2 = punctured_value(P, d, Point(z2));
        EXPECT_LE(s1.gap(s2), continuity_modulus(P, d, k, bm, b2) + 1e-10);
    }
}

// Property: a sampled squeezing lower bound never exceeds the exact value on the punctured disk.
TEST(SqueezingProperty, PuncturedDiskLowerBoundNeverExceedsExact) {
    const auto D = DomainSpec::punctured(DomainSpec::disk());
    Rng rng(60);
    for (int i = 0; i < 5; ++i) {
        const Point z{std::polar(rng.uniform(0.05, 0.95), rng.uniform(0.0, 6.28))};
        const auto c = certify_lower_bound(D, DomainSpec::disk(), MultiIndex({1}), z, MapFamily::Affine,
                                           small_budget(61 + i));
        EXPECT_LE(c.radius, std::abs(z[0]) + 1e-6);
    }
}
