#pragma once

#include "dsq/squeezing.hpp"

namespace dsq {

/// Samples of Caratheodory balls B_D^c(a, atanh tau) on model domains and their punctured or
/// rescaled versions. A punctured model has the Caratheodory distance of the filled model.
class CaratheodoryBall {
public:
    CaratheodoryBall(const DomainSpec& D, const Point& center) : D_(D), center_(center) {
        require(center.dim() == D.dim(), "CaratheodoryBall: dimension mismatch");
        if (!D.contains(center)) throw ContractViolation("CaratheodoryBall: center outside domain");
        const DomainSpec* cur = &D;
        for (;;) {
            if (const auto* p = cur->as<PuncturedDomain>()) {
                cur = p->inner.get();
            } else if (const auto* s = cur->as<ScaledDomain>()) {
                factor_ *= s->a;
                cur = s->inner.get();
            } else {
                break;
            }
        }
        if (cur->as<Polydisk>()) ball_ = false;
        else if (cur->as<UnitBall>()) ball_ = true;
        else throw UnsupportedDomain("CaratheodoryBall: no Caratheodory balls for " + D.describe());
        std::vector<Complex> c(center.coords());
        for (auto& v : c) v /= factor_;
        model_center_ = std::move(c);
    }

    static bool supported(const DomainSpec& D) {
        const DomainSpec* cur = &D;
        for (;;) {
            if (const auto* p = cur->as<PuncturedDomain>()) cur = p->inner.get();
            else if (const auto* s = cur->as<ScaledDomain>()) cur = s->inner.get();
            else return cur->as<Polydisk>() || cur->as<UnitBall>();
        }
    }

    /// Unit-shape samples: points of the closed unit ball (ball model) or closed unit polydisk,
    /// `boundary` of them on the boundary of the shape.
    [[nodiscard]] std::vector<std::vector<Complex>> shape_samples(int boundary, int interior, Rng& rng) const {
        const std::size_t n = D_.dim();
        std::vector<std::vector<Complex>> out;
        const double offset = rng.uniform();
        for (int i = 0; i < boundary; ++i) {
            std::vector<Complex> v(n);
            if (n == 1) {
                v[0] = std::polar(1.0, 2.0 * std::numbers::pi * (i + offset) / boundary);
            } else if (ball_) {
                v = rng.sphere(n).coords();
            } else {
                const auto face = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)) % n;
                for (std::size_t j = 0; j < n; ++j) {
                    const double r = (j == face) ? 1.0 : std::sqrt(rng.uniform());
                    v[j] = std::polar(r, rng.uniform(0.0, 2.0 * std::numbers::pi));
                }
            }
            out.push_back(std::move(v));
        }
        for (int i = 0; i < interior; ++i) {
            std::vector<Complex> v(n);
            if (ball_) {
                v = rng.sphere(n).coords();
                const double r = std::pow(rng.uniform(), 1.0 / (2.0 * static_cast<double>(n)));
                for (auto& x : v) x *= r;
            } else {
                for (auto& x : v) x = rng.unit_disk();
            }
            out.push_back(std::move(v));
        }
        return out;
    }

    /// Boundary point of the unit shape in the direction of v.
    [[nodiscard]] std::vector<Complex> boundary_shape(const Point& v) const {
        double m = 0.0;
        for (const auto& x : v.coords()) m = ball_ ? m + std::norm(x) : std::max(m, std::abs(x));
        if (ball_) m = std::sqrt(m);
        std::vector<Complex> out(v.coords());
        for (auto& x : out) x /= m;
        return out;
    }

    /// The point of the ball of tanh-radius tau corresponding to a unit-shape sample.
    [[nodiscard]] std::vector<Complex> at(std::span<const Complex> shape, double tau) const {
        std::vector<Complex> v(shape.begin(), shape.end());
        for (auto& x : v) x *= tau;
        if (ball_) {
            v = ball_automorphism(model_center_, v);
        } else {
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = moebius(-model_center_[j], v[j]);
        }
        for (auto& x : v) x *= factor_;
        return v;
    }

private:
    const DomainSpec& D_;
    Point center_;
    double factor_ = 1.0;
    bool ball_ = false;
    std::vector<Complex> model_center_;
};

struct FridmanCertificate {
    HoloMap map;  ///< injective Omega -> D with map(0) = center
    Point center;
    double radius = 0.0;  ///< hyperbolic
    double tanhRadius = 0.0;
    SampleRecord ballCheck;
    DomainPtr D;
    DomainPtr Omega;
    std::string family;
    double param = 0.0;

    /// 1 / radius, the matching value of the infimum form of the invariant.
    [[nodiscard]] double inf_form_upper() const { return radius > 0.0 ? 1.0 / radius : std::numeric_limits<double>::infinity(); }
};

/// Family members g : Omega -> D with g(0) = a.
///
///   moebius: w_j -> rho_j phi_{-a_j/rho_j}(t w_j), rho_j the coordinate extents of D
///   affine:  w -> a + t rho (.) w
///   dpower:  w -> f^{-1}(t^{d_1} w_1, ..., t^{d_n} w_n) for a squeezing certificate f at a, t <= its radius
inline std::optional<HoloMap> fridman_family_map(MapFamily family, const DomainSpec& D, const MultiIndex& d,
                                                 const Point& a, double t, const Certificate* squeeze) {
    const std::size_t n = D.dim();
    const auto rho = D.coordinate_extents();
    if (t <= 0.0) return std::nullopt;
    switch (family) {
        case MapFamily::Moebius: {
            if (t > 1.0) return std::nullopt;
            std::vector<Complex> c(n, Complex(t, 0.0)), m(n), back(n);
            for (std::size_t j = 0; j < n; ++j) {
                m[j] = -a[j] / rho[j];
                back[j] = rho[j];
                if (!(std::norm(m[j]) < 1.0)) return std::nullopt;
            }
            return HoloMap::compose({HoloMap::diag_scale(c), HoloMap::moebius(m), HoloMap::diag_scale(back)});
        }
        case MapFamily::Affine: {
            std::vector<Complex> c(n);
            for (std::size_t j = 0; j < n; ++j) c[j] = t * rho[j];
            return HoloMap::compose({HoloMap::diag_scale(c), HoloMap::translate(a.coords())});
        }
        case MapFamily::DPower: {
            if (squeeze == nullptr || t > squeeze->radius) return std::nullopt;
            return HoloMap::compose({HoloMap::dpower(t, d), squeeze->map.inverse()});
        }
    }
    return std::nullopt;
}

namespace detail {

class BallFitter {
public:
    BallFitter(const DomainSpec& D, const DomainSpec& Omega, const Point& a, const SearchBudget& budget,
               std::uint64_t seed)
        : D_(D), Omega_(Omega), ball_(D, a), punctures_(point_punctures_or_empty(D)) {
        Rng rng(seed);
        const int boundary = D.dim() == 1 ? budget.ball_samples_1d : budget.ball_samples_nd;
        shapes_ = ball_.shape_samples(boundary, budget.ball_interior_samples, rng);
        boundary_count_ = static_cast<std::size_t>(boundary);
    }

    [[nodiscard]] int sample_count() const { return static_cast<int>(shapes_.size()); }

    /// Samples of the ball of tanh-radius tau whose preimage under g is not in Omega. With
    /// refine > 0 the boundary samples closest to failing are pushed toward the worst direction
    /// by a local search, and an escape found there counts as a failure.
    [[nodiscard]] int failures(const HoloMap& g, double tau, int refine = 0, std::uint64_t seed = 0) const {
        int bad = 0;
        std::vector<std::pair<double, std::size_t>> ratios;
        for (std::size_t i = 0; i < shapes_.size(); ++i) {
            const double v = value(g, shapes_[i], tau);
            if (v >= 1.0) ++bad;
            else if (refine > 0 && i < boundary_count_) ratios.emplace_back(v, i);
        }
        if (bad > 0 || refine <= 0) return bad;
        std::sort(ratios.begin(), ratios.end(), std::greater<>());
        Rng rng(derive_seed(seed, "ball-refine"));
        const auto objective = [&](const Point& v) { return value(g, ball_.boundary_shape(v), tau); };
        for (int k = 0; k < refine && k < static_cast<int>(ratios.size()); ++k) {
            Point v(shapes_[ratios[static_cast<std::size_t>(k)].second]);
            std::vector<Complex> c(v.coords());
            for (auto& x : c) x /= v.norm();
            v = Point(std::move(c));
            if (maximize_on_sphere(objective, v, objective(v), rng) >= 1.0) ++bad;
        }
        return bad;
    }

    /// Largest tanh-radius (up to `cap`) at which every sample fits; 0 if none.
    [[nodiscard]] double max_tau(const HoloMap& g, double cap = 1.0 - 1e-12, int refine = 0,
                                 std::uint64_t seed = 0) const {
        std::size_t hint = 0;
        const auto ok = [&](double tau) { return fits(g, tau, hint) && (refine <= 0 || failures(g, tau, refine, seed) == 0); };
        if (ok(cap)) return cap;
        double lo = 0.0, hi = cap;
        for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (ok(mid)) lo = mid;
            else hi = mid;
        }
        return lo;
    }

private:
    /// True when every sample fits at tau. Starts at the sample that failed last (`hint`) and
    /// stops at the first failure.
    [[nodiscard]] bool fits(const HoloMap& g, double tau, std::size_t& hint) const {
        for (std::size_t k = 0; k < shapes_.size(); ++k) {
            const std::size_t i = (hint + k) % shapes_.size();
            if (!inside(g, shapes_[i], tau)) {
                hint = i;
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] bool inside(const HoloMap& g, std::span<const Complex> shape, double tau) const {
        auto w = ball_.at(shape, tau);
        if (std::any_of(punctures_.begin(), punctures_.end(),
                        [&](const Point& p) { return std::equal(w.begin(), w.end(), p.coords().begin()); }))
            return true;
        if (!D_.contains(w)) return false;
        g.backward(w);
        return Omega_.contains(w);
    }

    /// Radial ratio of g^{-1}(w) in Omega for the ball point w of a shape sample; 0 for removed
    /// points, infinite when w leaves D.
    [[nodiscard]] double value(const HoloMap& g, std::span<const Complex> shape, double tau) const {
        auto w = ball_.at(shape, tau);
        const bool removed = std::any_of(punctures_.begin(), punctures_.end(), [&](const Point& p) {
            return std::equal(w.begin(), w.end(), p.coords().begin());
        });
        if (removed) return 0.0;  // not a point of the ball in D
        if (!D_.contains(w)) return std::numeric_limits<double>::infinity();
        g.backward(w);
        if (!Omega_.contains(w)) return std::numeric_limits<double>::infinity();
        return radial_ratio(Omega_filled_, w);
    }

    const DomainSpec& D_;
    const DomainSpec& Omega_;
    DomainSpec Omega_filled_ = Omega_.filled();
    CaratheodoryBall ball_;
    std::vector<Point> punctures_;
    std::vector<std::vector<Complex>> shapes_;
    std::size_t boundary_count_ = 0;
};

}  // namespace detail

/// Ball check of a Fridman map at tanh-radius tau on a fresh sample set.
inline SampleRecord fridman_ball_check(const HoloMap& g, const DomainSpec& D, const DomainSpec& Omega, const Point& a,
                                       double tau, std::uint64_t seed, const SearchBudget& budget = {}) {
    const detail::BallFitter fit(D, Omega, a, budget, seed);
    return {fit.sample_count(), seed, fit.failures(g, tau, 8, seed)};
}

/// Best certified lower bound for h_D^c(a) = sup{tanh r : B_D^c(a, r) in g(Omega)} over a map family.
/// Per map, r is maximized by bisection with the sampled ball check as predicate.
inline FridmanCertificate fridman_lower_bound(const DomainSpec& D, const DomainSpec& Omega, const MultiIndex& d,
                                              const Point& a, MapFamily family, const SearchBudget& budget = {},
                                              const Certificate* squeeze = nullptr) {
    require(D.dim() == Omega.dim() && a.dim() == D.dim() && d.size() == D.dim(), "fridman_lower_bound: dimension mismatch");
    if (!Omega.flags().homogeneous) throw ContractViolation("fridman_lower_bound: Omega must be homogeneous");
    if (!D.contains(a)) throw ContractViolation("fridman_lower_bound: center outside D");
    if (!CaratheodoryBall::supported(D))
        throw UnsupportedDomain("fridman_lower_bound: Caratheodory balls not computable on " + D.describe());

    std::optional<Certificate> own;
    if (family == MapFamily::DPower && squeeze == nullptr) {
        own = certify_lower_bound(D, Omega, d, a, MapFamily::Moebius, budget);
        squeeze = &*own;
    }

    const auto omega_samples = detail::image_sample_set(Omega, budget.image_samples, derive_seed(budget.seed, "fridman-image"));
    const detail::BallFitter fit(D, Omega, a, budget, derive_seed(budget.seed, "fridman-ball"));
    auto score = [&](double t) {
        auto g = fridman_family_map(family, D, d, a, t, squeeze);
        if (!g) return -1.0;
        if (detail::count_image_failures(*g, Omega, D, omega_samples) > 0) return -1.0;
        const double tau = fit.max_tau(*g);
        return tau > 0.0 ? tau : -1.0;
    };
    double lo = 0.05, hi = 1.0;
    if (family == MapFamily::DPower) {
        lo = 0.05 * squeeze->radius;
        hi = squeeze->radius;
    }
    const ScalarSearchResult best = maximize_scalar(score, lo, hi, budget.grid, budget.golden_iters);
    if (best.score <= 0.0)
        throw NumericFailure(std::string("fridman_lower_bound: no valid map in the ") + to_string(family) + " family");

    HoloMap g = *fridman_family_map(family, D, d, a, best.param, squeeze);
    double tau = best.score;
    SampleRecord rec;
    for (int round = 0; round < 8; ++round) {
        const auto seed = derive_seed(derive_seed(budget.seed, "fridman-replay"), static_cast<std::uint64_t>(round));
        const detail::BallFitter replay(D, Omega, a, budget, seed);
        rec = {replay.sample_count(), seed, replay.failures(g, tau, 8, seed)};
        if (rec.failures == 0) break;
        tau = replay.max_tau(g, tau, 8, seed);
    }
    if (rec.failures != 0 || !(tau > 0.0)) throw NumericFailure("fridman_lower_bound: ball check not re-verified");
    return {g, a, std::atanh(tau), tau, rec, std::make_shared<const DomainSpec>(D),
            std::make_shared<const DomainSpec>(Omega), to_string(family), best.param};
}

enum class SandwichStatus { Confirmed, Inconclusive, Fail, Skipped };

inline const char* to_string(SandwichStatus s) {
    switch (s) {
        case SandwichStatus::Confirmed: return "confirmed";
        case SandwichStatus::Inconclusive: return "inconclusive";
        case SandwichStatus::Fail: return "fail";
        default: return "skipped";
    }
}

struct SandwichReport {
    SandwichStatus status = SandwichStatus::Skipped;
    double margin = 0.0;  ///< positive when the inequality holds with room
    std::string note;
};

/// S^d(a)^L <= h_D^c(a). A certified Fridman lower bound can only confirm this, never refute it.
inline SandwichReport sandwich_check_general(const BracketedValue& squeeze, const FridmanCertificate& fridman, int L,
                                             double tol = 1e-9) {
    require(L >= 1, "sandwich_check_general: L must be >= 1");
    const double need = std::pow(squeeze.lo, L);
    const double margin = fridman.tanhRadius - need;
    if (margin >= -tol) return {SandwichStatus::Confirmed, margin, "fridman lower bound >= S.lo^L"};
    return {SandwichStatus::Inconclusive, margin, "fridman lower bound below S.lo^L"};
}

/// h_D^c(0)^L <= S^d(0) for convex d-balanced D and Omega with Omega homogeneous. Both sides are
/// certified lower bounds, so tanhRadius^L must not exceed the squeezing upper value.
inline SandwichReport sandwich_check_origin(const DomainSpec& D, const DomainSpec& Omega, const MultiIndex& d,
                                            const FridmanCertificate& fridman, const BracketedValue& squeeze,
                                            double tol = 1e-9) {
    if (!D.flags().convex || !D.is_d_balanced(d) || !Omega.flags().convex || !Omega.is_d_balanced(d) ||
        !Omega.flags().homogeneous)
        return {SandwichStatus::Skipped, 0.0, "preconditions: D, Omega convex d-balanced, Omega homogeneous"};
    if (!fridman.center.is_zero()) return {SandwichStatus::Skipped, 0.0, "center must be the origin"};
    const double lhs = std::pow(fridman.tanhRadius, d.L());
    const double margin = squeeze.hi + tol - lhs;
    if (margin >= 0.0) return {SandwichStatus::Confirmed, margin, "tanhRadius^L <= S.hi"};
    return {SandwichStatus::Fail, margin, "tanhRadius^L exceeds S.hi"};
}

}  // namespace dsq
