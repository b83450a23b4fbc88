#pragma once

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "dsq/core.hpp"

namespace dsq {

class DomainSpec;
using DomainPtr = std::shared_ptr<const DomainSpec>;

// Domain kinds. Every kind describes an open, bounded set.

/// {z : |z_1|^2 + ... + |z_n|^2 < 1}; n = 1 is the unit disk.
struct UnitBall {
    std::size_t n = 1;
};

/// {z : |z_j| < 1 for all j}.
struct Polydisk {
    std::size_t n = 1;
};

/// {z : sum_j |z_j|^{2 p_j} < 1}.
struct ComplexEllipsoid {
    std::vector<int> p;
};

struct ProductDomain {
    std::vector<DomainPtr> factors;
};

/// a * inner, a real and nonzero.
struct ScaledDomain {
    double a = 1.0;
    DomainPtr inner;
};

/// inner \ {0}.
struct PuncturedDomain {
    DomainPtr inner;
};

/// Linear analytic polyhedron {z : |<row_k, z>| < bound_k for all k}, <row, z> = sum_j row_j z_j.
/// Rows must span C^n for the set to be bounded.
struct LinearPolyhedron {
    std::vector<std::vector<Complex>> rows;
    std::vector<double> bounds;
};

struct DomainFlags {
    bool balanced = false;
    bool convex = false;
    bool homogeneous = false;
    /// Complete Reinhardt: closed under coordinatewise multiplication by closed-disk scalars,
    /// hence d-balanced for every d.
    bool reinhardt = false;
    std::optional<MultiIndex> dBalancedFor;
};

inline MultiIndex ellipsoid_dindex(const std::vector<int>& p) {
    require(!p.empty(), "ellipsoid_dindex: empty exponent vector");
    long m = 1;
    for (int pj : p) {
        require(pj >= 1, "ellipsoid_dindex: exponents must be >= 1");
        m = std::lcm(m, static_cast<long>(pj));
    }
    std::vector<int> d(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) d[j] = static_cast<int>(m / p[j]);
    return MultiIndex(std::move(d));
}

/// Immutable symbolic description of a bounded domain in C^n with an exact membership oracle.
class DomainSpec {
public:
    using Kind = std::variant<UnitBall, Polydisk, ComplexEllipsoid, ProductDomain, ScaledDomain, PuncturedDomain,
                              LinearPolyhedron>;

    static DomainSpec unit_ball(std::size_t n) {
        require(n >= 1, "unit_ball: n must be >= 1");
        DomainFlags f{.balanced = true, .convex = true, .homogeneous = true, .reinhardt = true,
                      .dBalancedFor = MultiIndex::ones(n)};
        return DomainSpec(UnitBall{n}, n, 1.0, std::move(f));
    }

    static DomainSpec disk() { return unit_ball(1); }

    static DomainSpec polydisk(std::size_t n) {
        require(n >= 1, "polydisk: n must be >= 1");
        DomainFlags f{.balanced = true, .convex = true, .homogeneous = true, .reinhardt = true,
                      .dBalancedFor = MultiIndex::ones(n)};
        return DomainSpec(Polydisk{n}, n, std::sqrt(static_cast<double>(n)), std::move(f));
    }

    static DomainSpec ellipsoid(std::vector<int> p) {
        MultiIndex d = ellipsoid_dindex(p);
        const bool ball = std::all_of(p.begin(), p.end(), [](int v) { return v == 1; });
        const std::size_t n = p.size();
        DomainFlags f{.balanced = true, .convex = true, .homogeneous = ball, .reinhardt = true,
                      .dBalancedFor = std::move(d)};
        // Each |z_j| < 1, so |z| < sqrt(n); the ball case is tighter.
        const double R = ball ? 1.0 : std::sqrt(static_cast<double>(n));
        return DomainSpec(ComplexEllipsoid{std::move(p)}, n, R, std::move(f));
    }

    static DomainSpec product(std::vector<DomainSpec> factors) {
        require(!factors.empty(), "product: empty factor list");
        ProductDomain pd;
        std::size_t n = 0;
        double r2 = 0.0;
        DomainFlags f{.balanced = true, .convex = true, .homogeneous = true, .reinhardt = true, .dBalancedFor = std::nullopt};
        bool all_indexed = true;
        std::vector<MultiIndex> idx;
        for (auto& fac : factors) {
            n += fac.dim();
            r2 += fac.bound_radius() * fac.bound_radius();
            f.balanced = f.balanced && fac.flags().balanced;
            f.convex = f.convex && fac.flags().convex;
            f.homogeneous = f.homogeneous && fac.flags().homogeneous;
            f.reinhardt = f.reinhardt && fac.flags().reinhardt;
            if (fac.flags().dBalancedFor) idx.push_back(*fac.flags().dBalancedFor);
            else all_indexed = false;
            pd.factors.push_back(std::make_shared<const DomainSpec>(std::move(fac)));
        }
        if (all_indexed) f.dBalancedFor = concat(idx);
        return DomainSpec(std::move(pd), n, std::sqrt(r2), std::move(f));
    }

    static DomainSpec scaled(double a, DomainSpec inner) {
        require(a != 0.0 && std::isfinite(a), "scale: factor must be finite and nonzero");
        const std::size_t n = inner.dim();
        const double R = std::abs(a) * inner.bound_radius();
        DomainFlags f = inner.flags();
        return DomainSpec(ScaledDomain{a, std::make_shared<const DomainSpec>(std::move(inner))}, n, R, std::move(f));
    }

    static DomainSpec punctured(DomainSpec inner) {
        const std::size_t n = inner.dim();
        const double R = inner.bound_radius();
        // Not balanced, d-balanced, convex or homogeneous.
        DomainFlags f{};
        return DomainSpec(PuncturedDomain{std::make_shared<const DomainSpec>(std::move(inner))}, n, R, std::move(f));
    }

    static DomainSpec linear_polyhedron(std::vector<std::vector<Complex>> rows, std::vector<double> bounds) {
        require(!rows.empty() && rows.size() == bounds.size(), "linear_polyhedron: rows/bounds mismatch");
        const std::size_t n = rows.front().size();
        require(n >= 1, "linear_polyhedron: empty row");
        const std::size_t m = rows.size();
        Eigen::MatrixXcd A(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
        for (std::size_t k = 0; k < m; ++k) {
            require(rows[k].size() == n, "linear_polyhedron: ragged rows");
            require(bounds[k] > 0.0 && std::isfinite(bounds[k]), "linear_polyhedron: bounds must be positive");
            for (std::size_t j = 0; j < n; ++j)
                A(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = rows[k][j] / bounds[k];
        }
        // |z| <= |Az|_2 / sigma_min(A) < sqrt(m) / sigma_min(A) whenever |Az|_inf < 1.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A.adjoint() * A);
        const double lam = es.eigenvalues().minCoeff();
        if (!(lam > 1e-14)) throw ContractViolation("linear_polyhedron: rows do not span C^n (unbounded set)");
        const double R = std::sqrt(static_cast<double>(m) / lam);
        DomainFlags f{.balanced = true, .convex = true, .homogeneous = false, .reinhardt = false,
                      .dBalancedFor = MultiIndex::ones(n)};
        return DomainSpec(LinearPolyhedron{std::move(rows), std::move(bounds)}, n, R, std::move(f));
    }

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] double bound_radius() const { return bound_radius_; }
    [[nodiscard]] const DomainFlags& flags() const { return flags_; }
    [[nodiscard]] const Kind& kind() const { return kind_; }

    template <class T>
    [[nodiscard]] const T* as() const { return std::get_if<T>(&kind_); }

    /// Exact open-set membership. Non-finite coordinates are outside.
    [[nodiscard]] bool contains(std::span<const Complex> z) const {
        require(z.size() == dim_, "membership: dimension mismatch");
        for (const auto& c : z)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
        return contains_unchecked(z);
    }
    [[nodiscard]] bool contains(const Point& z) const { return contains(z.span()); }

    /// True when the domain is closed under (lambda^{d_1} z_1, ..., lambda^{d_n} z_n), |lambda| <= 1.
    [[nodiscard]] bool is_d_balanced(const MultiIndex& d) const {
        if (d.size() != dim_) return false;
        return std::visit(
            [&](const auto& k) -> bool {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, PuncturedDomain>) {
                    return false;
                } else if constexpr (std::is_same_v<K, ProductDomain>) {
                    std::size_t off = 0;
                    for (const auto& f : k.factors) {
                        if (!f->is_d_balanced(d.slice(off, f->dim()))) return false;
                        off += f->dim();
                    }
                    return true;
                } else if constexpr (std::is_same_v<K, ScaledDomain>) {
                    return k.inner->is_d_balanced(d);
                } else {
                    if (flags_.reinhardt) return true;
                    if (flags_.balanced && d.is_constant()) return true;
                    return flags_.dBalancedFor && is_multiple(d, *flags_.dBalancedFor);
                }
            },
            kind_);
    }

    /// Upper bounds rho_j >= sup_{z in domain} |z_j|.
    [[nodiscard]] std::vector<double> coordinate_extents() const {
        return std::visit(
            [&](const auto& k) -> std::vector<double> {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, ProductDomain>) {
                    std::vector<double> out;
                    for (const auto& f : k.factors) {
                        auto e = f->coordinate_extents();
                        out.insert(out.end(), e.begin(), e.end());
                    }
                    return out;
                } else if constexpr (std::is_same_v<K, ScaledDomain>) {
                    auto e = k.inner->coordinate_extents();
                    for (auto& v : e) v *= std::abs(k.a);
                    return e;
                } else if constexpr (std::is_same_v<K, PuncturedDomain>) {
                    return k.inner->coordinate_extents();
                } else if constexpr (std::is_same_v<K, LinearPolyhedron>) {
                    return std::vector<double>(dim_, bound_radius_);
                } else {
                    return std::vector<double>(dim_, 1.0);
                }
            },
            kind_);
    }

    /// The domain with every puncture filled back in.
    [[nodiscard]] DomainSpec filled() const {
        if (const auto* p = as<PuncturedDomain>()) return p->inner->filled();
        if (const auto* s = as<ScaledDomain>()) return scaled(s->a, s->inner->filled());
        if (const auto* pr = as<ProductDomain>()) {
            std::vector<DomainSpec> fs;
            for (const auto& f : pr->factors) fs.push_back(f->filled());
            return product(std::move(fs));
        }
        return *this;
    }

    [[nodiscard]] bool has_punctures() const {
        if (as<PuncturedDomain>()) return true;
        if (const auto* s = as<ScaledDomain>()) return s->inner->has_punctures();
        if (const auto* pr = as<ProductDomain>())
            return std::any_of(pr->factors.begin(), pr->factors.end(), [](const auto& f) { return f->has_punctures(); });
        return false;
    }

    /// Removed points when the removed set is finite. A product with a punctured factor removes
    /// whole slices; that case throws UnsupportedDomain.
    [[nodiscard]] std::vector<Point> puncture_points() const {
        if (const auto* p = as<PuncturedDomain>()) {
            auto inner = p->inner->puncture_points();
            inner.insert(inner.begin(), Point::zero(dim_));
            return inner;
        }
        if (const auto* s = as<ScaledDomain>()) {
            auto pts = s->inner->puncture_points();
            for (auto& q : pts) {
                std::vector<Complex> c(q.coords());
                for (auto& v : c) v *= s->a;
                q = Point(std::move(c));
            }
            return pts;
        }
        if (as<ProductDomain>() && has_punctures())
            throw UnsupportedDomain("puncture_points: product with punctured factor removes a slice, not points");
        return {};
    }

    /// Short human-readable description, e.g. "2*polydisk(2)".
    [[nodiscard]] std::string describe() const {
        return std::visit(
            [&](const auto& k) -> std::string {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, UnitBall>) {
                    return k.n == 1 ? "disk" : "ball(" + std::to_string(k.n) + ")";
                } else if constexpr (std::is_same_v<K, Polydisk>) {
                    return "polydisk(" + std::to_string(k.n) + ")";
                } else if constexpr (std::is_same_v<K, ComplexEllipsoid>) {
                    return "ellipsoid(" + MultiIndex(k.p).to_string() + ")";
                } else if constexpr (std::is_same_v<K, ProductDomain>) {
                    std::string s;
                    for (std::size_t i = 0; i < k.factors.size(); ++i) s += (i ? "x" : "") + k.factors[i]->describe();
                    return "[" + s + "]";
                } else if constexpr (std::is_same_v<K, ScaledDomain>) {
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "%g", k.a);
                    return std::string(buf) + "*" + k.inner->describe();
                } else if constexpr (std::is_same_v<K, PuncturedDomain>) {
                    return k.inner->describe() + "\\{0}";
                } else {
                    return "polyhedron(" + std::to_string(k.rows.size()) + "x" + std::to_string(dim_) + ")";
                }
            },
            kind_);
    }

private:
    DomainSpec(Kind kind, std::size_t dim, double R, DomainFlags flags)
        : kind_(std::move(kind)), dim_(dim), bound_radius_(R), flags_(std::move(flags)) {}

    static bool is_multiple(const MultiIndex& d, const MultiIndex& base) {
        if (d.size() != base.size()) return false;
        if (d[0] % base[0] != 0) return false;
        const int m = d[0] / base[0];
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d[i] != m * base[i]) return false;
        return true;
    }

    [[nodiscard]] bool contains_unchecked(std::span<const Complex> z) const {
        return std::visit(
            [&](const auto& k) -> bool {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, UnitBall>) {
                    double s = 0.0;
                    for (const auto& c : z) s += std::norm(c);
                    return s < 1.0;
                } else if constexpr (std::is_same_v<K, Polydisk>) {
                    return std::all_of(z.begin(), z.end(), [](const Complex& c) { return std::norm(c) < 1.0; });
                } else if constexpr (std::is_same_v<K, ComplexEllipsoid>) {
                    double s = 0.0;
                    for (std::size_t j = 0; j < z.size(); ++j) s += std::pow(std::norm(z[j]), k.p[j]);
                    return s < 1.0;
                } else if constexpr (std::is_same_v<K, ProductDomain>) {
                    std::size_t off = 0;
                    for (const auto& f : k.factors) {
                        if (!f->contains_unchecked(z.subspan(off, f->dim()))) return false;
                        off += f->dim();
                    }
                    return true;
                } else if constexpr (std::is_same_v<K, ScaledDomain>) {
                    std::vector<Complex> w(z.begin(), z.end());
                    for (auto& c : w) c /= k.a;
                    return k.inner->contains_unchecked(w);
                } else if constexpr (std::is_same_v<K, PuncturedDomain>) {
                    const bool origin =
                        std::all_of(z.begin(), z.end(), [](const Complex& c) { return c == Complex{}; });
                    return !origin && k.inner->contains_unchecked(z);
                } else {
                    for (std::size_t r = 0; r < k.rows.size(); ++r) {
                        Complex s{};
                        for (std::size_t j = 0; j < z.size(); ++j) s += k.rows[r][j] * z[j];
                        if (!(std::abs(s) < k.bounds[r])) return false;
                    }
                    return true;
                }
            },
            kind_);
    }

    Kind kind_;
    std::size_t dim_ = 0;
    double bound_radius_ = 0.0;
    DomainFlags flags_;
};

inline bool membership(const DomainSpec& domain, const Point& z) { return domain.contains(z); }

inline DomainSpec product(std::vector<DomainSpec> domains) { return DomainSpec::product(std::move(domains)); }

inline DomainSpec scale(double a, DomainSpec domain) { return DomainSpec::scaled(a, std::move(domain)); }

}  // namespace dsq
