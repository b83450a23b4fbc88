#pragma once

#include <optional>

#include "dsq/domain.hpp"

namespace dsq {

inline constexpr double kDefaultTol = 1e-10;
inline constexpr int kBisectionCap = 200;

namespace detail {

/// Membership of (z_j / t^{d_j}) in the domain; monotone in t for d-balanced domains.
class ScaledProbe {
public:
    ScaledProbe(const DomainSpec& domain, const MultiIndex& d, const Point& z)
        : domain_(domain), d_(d), z_(z), buf_(z.dim()) {}

    bool operator()(double t) {
        for (std::size_t i = 0; i < buf_.size(); ++i) buf_[i] = z_[i] / std::pow(t, d_[i]);
        return domain_.contains(buf_);
    }

private:
    const DomainSpec& domain_;
    const MultiIndex& d_;
    const Point& z_;
    std::vector<Complex> buf_;
};

}  // namespace detail

/// Weighted gauge h_{d,domain}(z) = inf{t > 0 : (z_1/t^{d_1}, ..., z_n/t^{d_n}) in domain},
/// bracketed by bisection on the membership oracle.
///
/// The returned bracket satisfies: the scaled point is outside at lo and inside at hi, so the
/// infimum lies in [lo, hi). The origin returns [0, 0] exactly.
inline BracketedValue d_minkowski(const DomainSpec& domain, const MultiIndex& d, const Point& z,
                                  double tol = kDefaultTol) {
    require(z.dim() == domain.dim(), "d_minkowski: dimension mismatch");
    require(tol > 0.0, "d_minkowski: tol must be positive");
    if (!domain.is_d_balanced(d))
        throw ContractViolation("d_minkowski: " + domain.describe() + " is not (" + d.to_string() + ")-balanced");
    if (z.is_zero()) return {0.0, 0.0};

    detail::ScaledProbe inside(domain, d, z);
    double lo = 0.0;
    double hi = std::pow(domain.bound_radius(), 1.0 / d.Lmin()) + 1.0;
    int iter = 0;
    // Points far outside the domain need a larger starting bracket.
    while (!inside(hi)) {
        lo = hi;
        hi *= 2.0;
        if (++iter >= kBisectionCap)
            throw NumericFailure("d_minkowski: could not establish an upper bracket");
    }
    while (hi - lo > tol) {
        if (++iter >= kBisectionCap) throw NumericFailure("d_minkowski: iteration cap reached");
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
        if (inside(mid)) hi = mid;
        else lo = mid;
    }
    return {lo, hi};
}

/// Minkowski functional of a balanced domain; d_minkowski with d = (1, ..., 1).
inline BracketedValue minkowski(const DomainSpec& domain, const Point& z, double tol = kDefaultTol) {
    if (!domain.flags().balanced) throw ContractViolation("minkowski: " + domain.describe() + " is not balanced");
    return d_minkowski(domain, MultiIndex::ones(domain.dim()), z, tol);
}

/// Closed-form weighted gauge for the catalog shapes where one exists.
inline std::optional<double> closed_form_gauge(const DomainSpec& domain, const MultiIndex& d, const Point& z) {
    if (z.dim() != domain.dim() || d.size() != domain.dim()) return std::nullopt;
    if (domain.as<Polydisk>()) {
        double h = 0.0;
        for (std::size_t j = 0; j < z.dim(); ++j) h = std::max(h, std::pow(std::abs(z[j]), 1.0 / d[j]));
        return h;
    }
    if (domain.as<UnitBall>() && d.is_constant()) return std::pow(z.norm(), 1.0 / d[0]);
    if (const auto* e = domain.as<ComplexEllipsoid>()) {
        const int m = e->p[0] * d[0];
        double s = 0.0;
        for (std::size_t j = 0; j < z.dim(); ++j) {
            if (e->p[j] * d[j] != m) return std::nullopt;
            s += std::pow(std::norm(z[j]), e->p[j]);
        }
        return std::pow(s, 1.0 / (2.0 * m));
    }
    if (const auto* lp = domain.as<LinearPolyhedron>()) {
        if (!d.is_constant()) return std::nullopt;
        double g = 0.0;
        for (std::size_t k = 0; k < lp->rows.size(); ++k) {
            Complex s{};
            for (std::size_t j = 0; j < z.dim(); ++j) s += lp->rows[k][j] * z[j];
            g = std::max(g, std::abs(s) / lp->bounds[k]);
        }
        return std::pow(g, 1.0 / d[0]);
    }
    if (const auto* s = domain.as<ScaledDomain>()) {
        std::vector<Complex> w(z.coords());
        for (auto& c : w) c /= s->a;
        return closed_form_gauge(*s->inner, d, Point(std::move(w)));
    }
    if (const auto* pr = domain.as<ProductDomain>()) {
        double h = 0.0;
        std::size_t off = 0;
        for (const auto& f : pr->factors) {
            auto hf = closed_form_gauge(*f, d.slice(off, f->dim()), z.slice(off, f->dim()));
            if (!hf) return std::nullopt;
            h = std::max(h, *hf);
            off += f->dim();
        }
        return h;
    }
    return std::nullopt;
}

/// Fast gauge value: closed form when available, otherwise the bisection midpoint.
inline double gauge(const DomainSpec& domain, const MultiIndex& d, const Point& z, double tol = kDefaultTol) {
    if (auto h = closed_form_gauge(domain, d, z)) return *h;
    return d_minkowski(domain, d, z, tol).mid();
}

enum class Sublevel { Inside, Outside, Undecided };

inline const char* to_string(Sublevel s) {
    switch (s) {
        case Sublevel::Inside: return "inside";
        case Sublevel::Outside: return "outside";
        default: return "undecided";
    }
}

/// Three-valued membership in the sublevel set {h_{d,domain} < r}.
///
/// Decided from the bracket when r lies outside it. When r falls inside the bracket and
/// `probe_radius` is set, the membership oracle is evaluated at scale r itself, which decides
/// exactly because {t : z/t^d in domain} is the open ray (h, inf).
inline Sublevel sublevel_membership(const DomainSpec& domain, const MultiIndex& d, double r, const Point& z,
                                    double tol = kDefaultTol, bool probe_radius = true) {
    require(r > 0.0 && r <= 1.0, "sublevel_membership: r must lie in (0, 1]");
    const BracketedValue h = d_minkowski(domain, d, z, tol);
    if (z.is_zero() || h.hi <= r) return Sublevel::Inside;  // the scale hi is a verified member
    if (h.lo >= r) return Sublevel::Outside;
    if (!probe_radius) return Sublevel::Undecided;
    return detail::ScaledProbe(domain, d, z)(r) ? Sublevel::Inside : Sublevel::Outside;
}

// ---------------------------------------------------------------------------
// Ray geometry and sampling
// ---------------------------------------------------------------------------

/// sup{s >= 0 : s * dir in domain} for a domain star-shaped about the origin (punctures ignored).
inline double ray_boundary(const DomainSpec& domain, const Point& dir, double rel_tol = 1e-13) {
    const DomainSpec filled = domain.has_punctures() ? domain.filled() : domain;
    const double len = dir.norm();
    require(len > 0.0, "ray_boundary: zero direction");
    std::vector<Complex> buf(dir.dim());
    auto inside = [&](double s) {
        for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = s * dir[i];
        return filled.contains(buf);
    };
    double lo = 0.0;
    double hi = filled.bound_radius() / len;
    for (int it = 0; it < kBisectionCap && hi - lo > rel_tol * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (inside(mid)) lo = mid;
        else hi = mid;
    }
    return lo;
}

/// Random point of the domain: random direction, radius s* u^{1/(2n)}. Punctures are rejected.
inline Point sample_domain(const DomainSpec& domain, Rng& rng) {
    for (;;) {
        Point v = rng.sphere(domain.dim());
        const double s = ray_boundary(domain, v) * std::pow(rng.uniform(), 1.0 / (2.0 * static_cast<double>(domain.dim())));
        std::vector<Complex> c(v.coords());
        for (auto& x : c) x *= s;
        Point p(std::move(c));
        if (domain.contains(p)) return p;
    }
}

/// Point of the domain within relative distance `rel` of its boundary along a random ray.
inline Point sample_near_boundary(const DomainSpec& domain, Rng& rng, double rel = 1e-12) {
    for (;;) {
        Point v = rng.sphere(domain.dim());
        const double s = ray_boundary(domain, v) * (1.0 - rel);
        std::vector<Complex> c(v.coords());
        for (auto& x : c) x *= s;
        Point p(std::move(c));
        if (domain.contains(p)) return p;
    }
}

/// Random u with h_{d,domain}(u) = 1 (the weighted unit level set).
inline Point sample_unit_level(const DomainSpec& domain, const MultiIndex& d, Rng& rng, double tol = kDefaultTol) {
    for (;;) {
        Point g = rng.sphere(domain.dim());
        const double h = gauge(domain, d, g, tol);
        if (h > 0.0 && std::isfinite(h)) return weighted_scale(g, d, 1.0 / h);
    }
}

// ---------------------------------------------------------------------------
// Supremum bound of h over a scaled copy
// ---------------------------------------------------------------------------

struct SupBound {
    double domainScale = 1.0;
    double estimate = 0.0;
    int sampleCount = 0;
    bool certified = false;
};

/// Bound B with h_{d,domain}(z) <= B for every z in a * domain.
///
/// Closed form max_j |a|^{1/d_j} for complete Reinhardt domains and for balanced domains with
/// constant d (the supremum is approached along coordinate axes, respectively is exact by
/// homogeneity). Otherwise the maximum of h just inside the boundary of a * domain over
/// `samples` random rays, flagged uncertified.
inline SupBound sup_bound(const DomainSpec& domain, const MultiIndex& d, double a, int samples, std::uint64_t seed,
                          bool force_sampling = false) {
    require(a != 0.0, "sup_bound: a must be nonzero");
    if (!domain.is_d_balanced(d)) throw ContractViolation("sup_bound: domain is not d-balanced for d");
    const bool closed = domain.flags().reinhardt || (domain.flags().balanced && d.is_constant());
    if (closed && !force_sampling) {
        double B = 0.0;
        for (std::size_t j = 0; j < d.size(); ++j) B = std::max(B, std::pow(std::abs(a), 1.0 / d[j]));
        return {a, B, 0, true};
    }
    const DomainSpec scaled = DomainSpec::scaled(a, domain);
    Rng rng(seed);
    double B = 0.0;
    for (int i = 0; i < samples; ++i) {
        Point v = rng.sphere(domain.dim());
        const double s = ray_boundary(scaled, v) * (1.0 - 1e-9);
        std::vector<Complex> c(v.coords());
        for (auto& x : c) x *= s;
        B = std::max(B, d_minkowski(domain, d, Point(std::move(c))).hi);
    }
    return {a, B, samples, false};
}

}  // namespace dsq
