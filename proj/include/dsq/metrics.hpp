#pragma once

#include <optional>

#include "dsq/minkowski.hpp"

namespace dsq {

/// Poincare distance on the unit disk, in hyperbolic units: atanh |(a - b) / (1 - conj(a) b)|.
inline double poincare(Complex a, Complex b) {
    require(std::norm(a) < 1.0 && std::norm(b) < 1.0, "poincare: arguments must lie in the open unit disk");
    const double q = std::abs(a - b) / std::abs(1.0 - std::conj(a) * b);
    return std::atanh(std::min(q, 1.0));
}

/// Disk automorphism w -> (w - a) / (1 - conj(a) w); sends a to 0, inverse is the same map with -a.
inline Complex moebius(Complex a, Complex w) { return (w - a) / (1.0 - std::conj(a) * w); }

inline Complex inner_product(std::span<const Complex> z, std::span<const Complex> w) {
    Complex s{};
    for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * std::conj(w[i]);
    return s;
}

/// Involutive automorphism of the unit ball exchanging a and 0.
inline std::vector<Complex> ball_automorphism(std::span<const Complex> a, std::span<const Complex> z) {
    const double aa = std::real(inner_product(a, a));
    std::vector<Complex> out(z.size());
    if (aa == 0.0) {
        for (std::size_t i = 0; i < z.size(); ++i) out[i] = -z[i];
        return out;
    }
    const Complex za = inner_product(z, a);
    const double sa = std::sqrt(1.0 - aa);
    const Complex den = 1.0 - za;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const Complex pz = za / aa * a[i];
        const Complex qz = z[i] - pz;
        out[i] = (a[i] - pz - sa * qz) / den;
    }
    return out;
}

/// Kobayashi distance of the unit ball.
inline double ball_distance(const Point& z, const Point& w) {
    const double zz = std::norm(z.norm());
    const double ww = std::norm(w.norm());
    require(zz < 1.0 && ww < 1.0, "ball_distance: points must lie in the ball");
    const double num = (1.0 - zz) * (1.0 - ww);
    const double den = std::norm(1.0 - inner_product(z.span(), w.span()));
    const double q = std::sqrt(std::max(0.0, 1.0 - num / den));
    return std::atanh(std::min(q, 1.0));
}

enum class DistanceKind { Caratheodory, Kobayashi };

struct MetricValue {
    double distance = 0.0;
    bool exact = false;
    std::optional<BracketedValue> bracket;
};

/// Exact invariant distance on the model domains (polydisk, ball, real rescalings thereof),
/// where the Caratheodory and Kobayashi distances coincide.
inline MetricValue model_distance(const DomainSpec& domain, const Point& z, const Point& w) {
    require(z.dim() == domain.dim() && w.dim() == domain.dim(), "model_distance: dimension mismatch");
    if (!domain.contains(z) || !domain.contains(w)) throw ContractViolation("model_distance: point outside domain");
    if (domain.as<Polydisk>()) {
        double m = 0.0;
        for (std::size_t j = 0; j < z.dim(); ++j) m = std::max(m, poincare(z[j], w[j]));
        return {m, true, std::nullopt};
    }
    if (domain.as<UnitBall>()) return {ball_distance(z, w), true, std::nullopt};
    if (const auto* s = domain.as<ScaledDomain>()) {
        std::vector<Complex> zc(z.coords()), wc(w.coords());
        for (auto& c : zc) c /= s->a;
        for (auto& c : wc) c /= s->a;
        return model_distance(*s->inner, Point(std::move(zc)), Point(std::move(wc)));
    }
    throw UnsupportedDomain("model_distance: no exact distance for " + domain.describe());
}

[[nodiscard]] inline bool has_model_distance(const DomainSpec& domain) {
    if (domain.as<Polydisk>() || domain.as<UnitBall>()) return true;
    if (const auto* s = domain.as<ScaledDomain>()) return has_model_distance(*s->inner);
    return false;
}

/// Invariant distance with a selector. On a punctured model domain the Caratheodory distance is
/// that of the filled domain (bounded holomorphic functions extend across the puncture); the
/// Kobayashi distance of a punctured domain is not available.
inline MetricValue invariant_distance(const DomainSpec& domain, const Point& z, const Point& w,
                                      DistanceKind kind = DistanceKind::Caratheodory) {
    if (const auto* p = domain.as<PuncturedDomain>()) {
        if (!domain.contains(z) || !domain.contains(w))
            throw ContractViolation("invariant_distance: point outside domain");
        if (kind == DistanceKind::Kobayashi)
            throw UnsupportedDomain("invariant_distance: Kobayashi distance of a punctured domain");
        return model_distance(*p->inner, z, w);
    }
    return model_distance(domain, z, w);
}

/// Bracket [atanh(h.lo^L), atanh(h.hi)] for c(0, z) = k(0, z) on a convex d-balanced domain.
inline BracketedValue caratheodory_sandwich(const DomainSpec& domain, const MultiIndex& d, const Point& z,
                                            double tol = kDefaultTol) {
    if (!domain.flags().convex || !domain.is_d_balanced(d))
        throw ContractViolation("caratheodory_sandwich: domain must be convex and d-balanced");
    if (!domain.contains(z)) throw ContractViolation("caratheodory_sandwich: point outside domain");
    const BracketedValue h = d_minkowski(domain, d, z, tol);
    auto at = [](double x) { return x >= 1.0 ? std::numeric_limits<double>::infinity() : std::atanh(x); };
    return {at(std::pow(h.lo, d.L())), at(h.hi)};
}

enum class CheckOutcome { Pass, Fail, Skipped };

inline const char* to_string(CheckOutcome o) {
    switch (o) {
        case CheckOutcome::Pass: return "pass";
        case CheckOutcome::Fail: return "fail";
        default: return "skipped";
    }
}

/// Checks h_{d,domain}(z) <= B_{a domain} (tanh k)^{1/L} (+ tol) for z in a * domain, where
/// `kval` is an exact or upper value of the Lempert distance of a * domain between 0 and z.
inline CheckOutcome lempert_lower_check(const DomainSpec& domain, const MultiIndex& d, double a, const Point& z,
                                        std::optional<double> kval, double tol = 1e-9,
                                        double* margin = nullptr) {
    if (!kval) return CheckOutcome::Skipped;
    require(*kval >= 0.0, "lempert_lower_check: negative distance");
    const DomainSpec scaled = DomainSpec::scaled(a, domain);
    if (!scaled.contains(z)) throw ContractViolation("lempert_lower_check: z must lie in a * domain");
    if (z.is_zero()) {
        if (margin) *margin = 0.0;
        return CheckOutcome::Pass;
    }
    const SupBound B = sup_bound(domain, d, a, 256, 0);
    const BracketedValue h = d_minkowski(domain, d, z);
    const double rhs = B.estimate * std::pow(std::tanh(*kval), 1.0 / d.L());
    if (margin) *margin = rhs + tol - h.lo;
    return h.lo <= rhs + tol ? CheckOutcome::Pass : CheckOutcome::Fail;
}

}  // namespace dsq
