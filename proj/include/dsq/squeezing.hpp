#pragma once

#include <optional>
#include <string>

#include "dsq/holomap.hpp"
#include "dsq/search.hpp"

namespace dsq {

enum class MapFamily { Moebius, Affine, DPower };

inline const char* to_string(MapFamily f) {
    switch (f) {
        case MapFamily::Moebius: return "moebius";
        case MapFamily::Affine: return "affine";
        default: return "dpower";
    }
}

inline MapFamily parse_family(const std::string& s) {
    if (s == "moebius") return MapFamily::Moebius;
    if (s == "affine" || s == "diagscale") return MapFamily::Affine;
    if (s == "dpower") return MapFamily::DPower;
    throw ContractViolation("unknown map family: " + s);
}

/// Sampling and search parameters shared by the squeezing and Fridman estimators.
struct SearchBudget {
    int grid = 12;
    int golden_iters = 60;
    int image_samples = 256;
    int ray_directions = 96;
    int ray_steps = 128;
    int coverage_samples = 512;
    /// Relative shrink applied to sampled coverage radii (sampled infima are biased high).
    double eps_cov = 1e-3;
    int ball_samples_1d = 720;
    int ball_samples_nd = 2000;
    int ball_interior_samples = 200;
    std::uint64_t seed = 1;
    double tol = kDefaultTol;

    /// Scales every sample count so their total is roughly `total`.
    static SearchBudget from_total(double total) {
        SearchBudget b;
        const double f = std::clamp(total / 1e4, 0.05, 100.0);
        auto sc = [f](int v) { return std::max(8, static_cast<int>(std::lround(v * f))); };
        b.image_samples = sc(b.image_samples);
        b.ray_directions = sc(b.ray_directions);
        b.coverage_samples = sc(b.coverage_samples);
        return b;
    }
};

struct SampleRecord {
    int count = 0;
    std::uint64_t seed = 0;
    int failures = 0;
};

/// Lower-bound witness for the squeezing value of (D, Omega, d) at `anchor`: an injective map
/// f : D -> Omega with f(anchor) = 0 whose image covers the sublevel set {h_{d,Omega} < radius}.
struct Certificate {
    HoloMap map;
    Point anchor;
    double radius = 0.0;
    SampleRecord imageCheck;
    SampleRecord coverageCheck;
    DomainPtr D;
    DomainPtr Omega;
    MultiIndex d;
    std::string family;
    double param = 0.0;
    double eps_cov = 0.0;
};

namespace detail {

inline std::vector<Point> point_punctures_or_empty(const DomainSpec& D) {
    try {
        return D.puncture_points();
    } catch (const UnsupportedDomain&) {
        return {};
    }
}

inline bool finite(std::span<const Complex> v) {
    return std::all_of(v.begin(), v.end(), [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

/// |p| over the distance from 0 to the boundary of `target` along p: below 1 inside the filled
/// target, above 1 outside. Infinite for non-finite p.
inline double radial_ratio(const DomainSpec& filled_target, std::span<const Complex> p) {
    if (!finite(p)) return std::numeric_limits<double>::infinity();
    Point q{std::vector<Complex>(p.begin(), p.end())};
    if (q.is_zero()) return 0.0;
    const double s = ray_boundary(filled_target, q);
    return s > 0.0 ? 1.0 / s : std::numeric_limits<double>::infinity();
}

/// Random pattern search for a local maximum of `value` over the unit sphere, starting at v.
/// The step grows after an improvement and shrinks otherwise. Updates v and returns the best
/// value found.
template <class F>
double maximize_on_sphere(F&& value, Point& v, double fv, Rng& rng, int iters = 120, double step = 0.2) {
    for (int it = 0; it < iters && step > 1e-9; ++it) {
        std::vector<Complex> c(v.coords());
        double len = 0.0;
        for (auto& x : c) {
            x += step * Complex(rng.normal(), rng.normal());
            len += std::norm(x);
        }
        len = std::sqrt(len);
        if (!(len > 0.0)) continue;
        for (auto& x : c) x /= len;
        Point cand(std::move(c));
        const double f = value(cand);
        if (f > fv) {
            v = std::move(cand);
            fv = f;
            step = std::min(0.5, step * 1.5);
        } else {
            step *= 0.7;
        }
    }
    return fv;
}

/// Relative offset of the outer-shell image samples.
inline constexpr double kShellOffset = 1e-10;
/// Larger offset used for the final check of a search winner, so that the certified map keeps a
/// margin against later fresh-sample replays at kShellOffset.
inline constexpr double kStrongShellOffset = 1e-9;

/// Point of the shell just outside D in direction v (unit vector).
inline std::vector<Complex> shell_point(const DomainSpec& D, const Point& v, double offset = kShellOffset) {
    const double s = ray_boundary(D, v) * (1.0 + offset);
    std::vector<Complex> c(v.coords());
    for (auto& x : c) x *= s;
    return c;
}

/// Image-check samples: half are random points of D, half lie on the shell just outside D
/// (boundary distance along a random ray times 1 + kShellOffset). Requiring the shell to map into
/// the target rules out maps that leave it only in a thin layer at the boundary of D, which
/// interior sampling cannot detect when a parameter search converges onto the edge of validity.
inline std::vector<Point> image_sample_set(const DomainSpec& D, int count, std::uint64_t seed,
                                           double offset = kShellOffset) {
    Rng rng(seed);
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        if (i % 2 == 0) out.push_back(sample_domain(D, rng));
        else out.emplace_back(shell_point(D, rng.sphere(D.dim()), offset));
    }
    return out;
}

/// Number of image-check failures of `map` : source -> target.
///
/// Every sample must land in the target, and no removed point of the target may have its
/// preimage in the source. The `refine` shell samples whose images come closest to leaving the
/// target are then pushed toward the worst direction by a local search over the sphere; an
/// escape found there counts as a failure too.
inline int count_image_failures(const HoloMap& map, const DomainSpec& source, const DomainSpec& target,
                                const std::vector<Point>& samples, int refine = 8, std::uint64_t seed = 0,
                                double offset = kShellOffset) {
    int failures = 0;
    const DomainSpec filled = target.filled();
    std::vector<std::pair<double, std::size_t>> ratios;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto img = map.apply(samples[i].span());
        if (!target.contains(img)) ++failures;
        else if (refine > 0) ratios.emplace_back(radial_ratio(filled, img), i);
    }
    for (const auto& p : point_punctures_or_empty(target)) {
        auto pre = map.apply_inverse(p.span());
        if (finite(pre) && source.contains(pre)) ++failures;
    }
    if (failures > 0 || refine <= 0) return failures;

    std::sort(ratios.begin(), ratios.end(), std::greater<>());
    const auto value = [&](const Point& v) { return radial_ratio(filled, map.apply(shell_point(source, v, offset))); };
    Rng rng(derive_seed(seed, "image-refine"));
    int refined = 0;
    for (const auto& [ratio, idx] : ratios) {
        if (refined == refine) break;
        const Point& w = samples[idx];
        if (w.is_zero()) continue;
        std::vector<Complex> dir(w.coords());
        for (auto& x : dir) x /= w.norm();
        Point v(std::move(dir));
        ++refined;
        if (maximize_on_sphere(value, v, value(v), rng) >= 1.0) ++failures;
    }
    return failures;
}

/// Points of {h_{d,Omega} < r}: random weighted directions at random levels, a share of them
/// just below level r.
inline std::vector<Point> sublevel_sample_set(const DomainSpec& Omega, const MultiIndex& d, double r, int count,
                                              std::uint64_t seed, double tol) {
    Rng rng(seed);
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(count));
    const double n2 = 2.0 * static_cast<double>(Omega.dim());
    for (int i = 0; i < count; ++i) {
        const Point u = sample_unit_level(Omega, d, rng, tol);
        const double t = (i % 4 == 3) ? r * (1.0 - 1e-9) : r * std::pow(rng.uniform(), 1.0 / n2);
        out.push_back(weighted_scale(u, d, t));
    }
    return out;
}

/// Evaluates candidate squeezing maps for a fixed (D, Omega, d, anchor) on a common sample set.
class CoverageEvaluator {
public:
    CoverageEvaluator(const DomainSpec& D, const DomainSpec& Omega, const MultiIndex& d, const SearchBudget& budget)
        : D_(D), Dfilled_(D.filled()), Omega_(Omega), d_(d), budget_(budget),
          punctures_(D.puncture_points()),
          image_samples_(image_sample_set(D, budget.image_samples, derive_seed(budget.seed, "image"))) {
        Rng rng(derive_seed(budget.seed, "rays"));
        for (int i = 0; i < budget.ray_directions; ++i) directions_.push_back(rng.sphere(Omega.dim()));
    }

    [[nodiscard]] int image_failures(const HoloMap& f, bool refined = true) const {
        return count_image_failures(f, D_, Omega_, image_samples_, refined ? kRefine : 0, budget_.seed);
    }
    [[nodiscard]] int image_sample_count() const { return static_cast<int>(image_samples_.size()); }

    /// Largest r such that no removed point and no sampled ray of {h < r} leaves f(D). The rays
    /// that leave earliest are refined by a local search over directions before the eps_cov shrink.
    [[nodiscard]] double coverage_radius(const HoloMap& f, bool refined = true) const {
        double r_pts = 1.0;
        for (const auto& p : punctures_) {
            auto fp = f.apply(p.span());
            if (!finite(fp) || !Omega_.contains(fp)) continue;
            r_pts = std::min(r_pts, d_minkowski(Omega_, d_, Point(fp), budget_.tol).lo);
        }
        std::vector<std::pair<double, std::size_t>> exits;
        for (std::size_t i = 0; i < directions_.size(); ++i) exits.emplace_back(exit_level(f, directions_[i], 1.0), i);
        std::sort(exits.begin(), exits.end());
        double r_rays = exits.empty() ? 1.0 : exits.front().first;
        Rng rng(derive_seed(budget_.seed, "coverage-refine"));
        for (int k = 0; refined && k < kRefine && k < static_cast<int>(exits.size()); ++k) {
            if (exits[static_cast<std::size_t>(k)].first >= 1.0) break;
            Point g = directions_[exits[static_cast<std::size_t>(k)].second];
            const double best = -maximize_on_sphere(
                [&](const Point& v) { return -exit_level(f, v, 1.0); }, g, -exits[static_cast<std::size_t>(k)].first,
                rng);
            r_rays = std::min(r_rays, best);
        }
        const double shrunk = r_rays < 1.0 ? r_rays * (1.0 - budget_.eps_cov) : 1.0;
        return std::min(r_pts, shrunk);
    }

    /// Score of a candidate: its coverage radius, or -1 when the image check fails. Without
    /// `refined` the local searches are skipped, which is cheaper but less strict.
    [[nodiscard]] double score(const HoloMap& f, bool refined = true) const {
        if (image_failures(f, refined) > 0) return -1.0;
        const double r = coverage_radius(f, refined);
        return r > 0.0 ? r : -1.0;
    }

private:
    static constexpr int kRefine = 8;

    /// First level t (capped at `cap`) at which the weighted ray through the unit-level point of
    /// direction g leaves f(D). Steps of 1/ray_steps, then bisection; the last probe sits just
    /// inside level 1, so a map covering every level below 1 - 1e-8 on the ray returns 1.
    [[nodiscard]] double exit_level(const HoloMap& f, const Point& g, double cap) const {
        const double h = gauge(Omega_, d_, g, budget_.tol);
        if (!(h > 0.0) || !std::isfinite(h)) return cap;
        const Point u = weighted_scale(g, d_, 1.0 / h);
        std::vector<Complex> buf(D_.dim());
        auto preimage_inside = [&](double t) {
            for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = u[i] * std::pow(t, d_[i]);
            f.backward(buf);
            return Dfilled_.contains(buf);
        };
        double prev = 0.0;
        for (int s = 1; s <= budget_.ray_steps; ++s) {
            const double t = s == budget_.ray_steps ? 1.0 - 1e-8 : static_cast<double>(s) / budget_.ray_steps;
            if (t > cap) break;
            if (!preimage_inside(t)) {
                double lo = prev, hi = t;
                while (hi - lo > 1e-12) {
                    const double mid = 0.5 * (lo + hi);
                    if (preimage_inside(mid)) lo = mid;
                    else hi = mid;
                }
                return lo;
            }
            prev = t;
        }
        return cap;
    }

    const DomainSpec& D_;
    DomainSpec Dfilled_;
    const DomainSpec& Omega_;
    const MultiIndex& d_;
    const SearchBudget& budget_;
    std::vector<Point> punctures_;
    std::vector<Point> image_samples_;
    std::vector<Point> directions_;
};

}  // namespace detail

/// Builds the family member with parameter `param` for squeezing maps D -> Omega sending z to 0.
/// Returns nullopt when the parameter does not define a map.
///
///   moebius: w_j -> phi_{z_j / (s rho_j)}(w_j / (s rho_j)), rho_j the coordinate extents of D
///   affine:  w -> s (w - z) / (rho + |z|) coordinatewise
///   dpower:  the moebius map at s = 1 followed by DPower(t)
inline std::optional<HoloMap> squeezing_family_map(MapFamily family, const DomainSpec& D, const MultiIndex& d,
                                                   const Point& z, double param) {
    const auto rho = D.coordinate_extents();
    const std::size_t n = D.dim();
    auto moebius_at = [&](double s) -> std::optional<HoloMap> {
        std::vector<Complex> inv(n), a(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double sig = s * rho[j];
            inv[j] = 1.0 / sig;
            a[j] = z[j] / sig;
            if (!(std::norm(a[j]) < 1.0)) return std::nullopt;
        }
        return HoloMap::compose({HoloMap::diag_scale(inv), HoloMap::moebius(a)});
    };
    switch (family) {
        case MapFamily::Moebius:
            if (param <= 0.0) return std::nullopt;
            return moebius_at(param);
        case MapFamily::Affine: {
            if (param <= 0.0) return std::nullopt;
            std::vector<Complex> shift(n), c(n);
            for (std::size_t j = 0; j < n; ++j) {
                shift[j] = -z[j];
                c[j] = param / (rho[j] + std::abs(z[j]));
            }
            return HoloMap::compose({HoloMap::translate(shift), HoloMap::diag_scale(c)});
        }
        case MapFamily::DPower: {
            if (param <= 0.0 || param > 1.0) return std::nullopt;
            auto base = moebius_at(1.0);
            if (!base) return std::nullopt;
            return HoloMap::compose({*base, HoloMap::dpower(param, d)});
        }
    }
    return std::nullopt;
}

inline std::pair<double, double> squeezing_family_range(MapFamily family) {
    switch (family) {
        case MapFamily::Moebius: return {0.5, 2.0};
        case MapFamily::Affine: return {0.05, 2.0};
        default: return {0.05, 1.0};
    }
}

/// Fresh-sample verification of a certificate: image of D inside Omega, anchor sent to 0, and
/// coverage of {h_{d,Omega} < radius} by f(D) via the exact inverse.
inline std::pair<SampleRecord, SampleRecord> verify_certificate(const Certificate& cert, std::uint64_t seed,
                                                                int image_samples, int coverage_samples,
                                                                double tol = kDefaultTol) {
    const auto img_seed = derive_seed(seed, "verify-image");
    const auto cov_seed = derive_seed(seed, "verify-coverage");
    const auto samples = detail::image_sample_set(*cert.D, image_samples, img_seed);
    SampleRecord img{static_cast<int>(samples.size()), img_seed,
                     detail::count_image_failures(cert.map, *cert.D, *cert.Omega, samples, 8, img_seed)};
    const auto f0 = cert.map.apply(cert.anchor.span());
    double anchor_err = 0.0;
    for (const auto& c : f0) anchor_err = std::max(anchor_err, std::abs(c));
    if (!(anchor_err <= 1e-12)) ++img.failures;

    const auto pts = detail::sublevel_sample_set(*cert.Omega, cert.d, cert.radius, coverage_samples, cov_seed, tol);
    SampleRecord cov{static_cast<int>(pts.size()), cov_seed, 0};
    for (const auto& w : pts) {
        if (!cert.D->contains(cert.map.apply_inverse(w.span()))) ++cov.failures;
    }
    return {img, cov};
}

/// Certificate for one given map f : D -> Omega with f(z) = 0. The radius is the evaluator's
/// coverage radius, re-verified on fresh coverage samples and shrunk below the lowest failing level
/// until no sample fails.
inline Certificate certify_map(const DomainSpec& D, const DomainSpec& Omega, const MultiIndex& d, const Point& z,
                               const HoloMap& f, const SearchBudget& budget, std::string family, double param,
                               const detail::CoverageEvaluator& eval) {
    double anchor_err = 0.0;
    for (const auto& c : f.apply(z.span())) anchor_err = std::max(anchor_err, std::abs(c));
    if (!(anchor_err <= 1e-12)) throw ContractViolation("certify_map: map does not send the anchor to 0");
    const double r0 = eval.score(f);
    if (r0 <= 0.0) throw NumericFailure("certify_map: map fails the image check or covers nothing");
    Certificate cert{f, z, r0, {}, {}, std::make_shared<const DomainSpec>(D),
                     std::make_shared<const DomainSpec>(Omega), d, std::move(family), param, budget.eps_cov};

    const auto cov_seed = derive_seed(budget.seed, "coverage");
    for (int round = 0; round < 8; ++round) {
        const auto round_seed = derive_seed(cov_seed, static_cast<std::uint64_t>(round));
        const auto pts = detail::sublevel_sample_set(Omega, d, cert.radius, budget.coverage_samples, round_seed, budget.tol);
        double worst = cert.radius;
        int failures = 0;
        for (const auto& w : pts) {
            if (!D.contains(f.apply_inverse(w.span()))) {
                ++failures;
                worst = std::min(worst, d_minkowski(Omega, d, w, budget.tol).lo);
            }
        }
        cert.coverageCheck = {static_cast<int>(pts.size()), round_seed, failures};
        if (failures == 0) break;
        // Start just below the failing level and widen the margin toward eps_cov on later rounds.
        cert.radius = worst * (1.0 - std::min(budget.eps_cov, 1e-8 * std::pow(10.0, round)));
        if (cert.radius <= 0.0) throw NumericFailure("certify_map: coverage re-verification collapsed");
    }
    if (cert.coverageCheck.failures != 0) throw NumericFailure("certify_map: coverage not re-verified");
    cert.imageCheck = {eval.image_sample_count(), derive_seed(budget.seed, "image"), 0};
    return cert;
}

inline Certificate certify_map(const DomainSpec& D, const DomainSpec& Omega, const MultiIndex& d, const Point& z,
                               const HoloMap& f, const SearchBudget& budget, std::string family = "custom",
                               double param = 0.0) {
    const detail::CoverageEvaluator eval(D, Omega, d, budget);
    return certify_map(D, Omega, d, z, f, budget, std::move(family), param, eval);
}

/// Best lower-bound certificate for the squeezing value S_{d,D}^Omega(z) over a map family.
///
/// Each candidate's radius is the infimum of h_{d,Omega} over Omega \ f(D), taken exactly at the
/// images of removed points and by ray scanning elsewhere (then shrunk by eps_cov). The winning
/// radius is re-verified on fresh coverage samples and shrunk further if any sample fails.
inline Certificate certify_lower_bound(const DomainSpec& D, const DomainSpec& Omega, const MultiIndex& d,
                                       const Point& z, MapFamily family, const SearchBudget& budget = {}) {
    require(D.dim() == Omega.dim() && d.size() == D.dim() && z.dim() == D.dim(),
            "certify_lower_bound: dimension mismatch");
    if (!Omega.flags().convex || !Omega.is_d_balanced(d))
        throw ContractViolation("certify_lower_bound: Omega must be convex and d-balanced");
    if (!D.contains(z)) throw ContractViolation("certify_lower_bound: anchor outside D");
    if (D.as<ProductDomain>() && D.has_punctures())
        throw UnsupportedDomain("certify_lower_bound: certify the factors and use product_lower_bound");

    const detail::CoverageEvaluator eval(D, Omega, d, budget);
    auto score = [&](double p) {
        auto f = squeezing_family_map(family, D, d, z, p);
        return f ? eval.score(*f, false) : -1.0;
    };
    const auto [lo, hi] = squeezing_family_range(family);
    const ScalarSearchResult best = maximize_scalar(score, lo, hi, budget.grid, budget.golden_iters);
    if (best.score <= 0.0)
        throw NumericFailure(std::string("certify_lower_bound: no valid map in the ") + to_string(family) + " family");

    // The search scores without local refinement and settles on the edge of validity, where a
    // sampled image check is least reliable.
    // Re-check the winner on a larger fresh sample with more local refinement and step toward the
    // shrinking side of the family until that check passes.
    const double safe = family == MapFamily::Moebius ? 1.0 : -1.0;
    const auto strong_seed = derive_seed(budget.seed, "image-strong");
    const auto strong = detail::image_sample_set(D, 4 * budget.image_samples, strong_seed, detail::kStrongShellOffset);
    double param = best.param;
    for (int k = 0;; ++k) {
        auto f = squeezing_family_map(family, D, d, z, param);
        if (f && detail::count_image_failures(*f, D, Omega, strong, 32, strong_seed, detail::kStrongShellOffset) == 0)
            return certify_map(D, Omega, d, z, *f, budget, to_string(family), param, eval);
        if (k == 50) break;
        param = best.param + safe * std::ldexp(1e-9, k) * (hi - lo);
        if (param < lo || param > hi) break;
    }
    throw NumericFailure(std::string("certify_lower_bound: best ") + to_string(family) +
                         " map failed the strengthened image check");
}

/// Sandwich for the squeezing value of Omega \ {0} at z: [h^L, h^{1/L}], with h the weighted gauge
/// of Omega; exact (h itself) when L = 1.
inline BracketedValue punctured_value(const DomainSpec& Omega, const MultiIndex& d, const Point& z,
                                      double tol = kDefaultTol) {
    if (z.is_zero()) throw ContractViolation("punctured_value: the origin is not in the punctured domain");
    if (!Omega.flags().convex || !Omega.is_d_balanced(d))
        throw ContractViolation("punctured_value: Omega must be convex and d-balanced");
    if (!Omega.contains(z)) throw ContractViolation("punctured_value: point outside Omega");
    const BracketedValue h = d_minkowski(Omega, d, z, tol);
    if (d.L() == 1) return h;
    const double L = d.L();
    return {std::pow(h.lo, L), std::pow(h.hi, 1.0 / L)};
}

struct ProductBound {
    double radius = 0.0;
    Certificate certificate;
};

/// Lower bound min_i r_i for the product pair, with the product-map certificate
/// f(z_1, ..., z_k) = (f_1(z_1), ..., f_k(z_k)) re-verified by sampling.
inline ProductBound product_lower_bound(const std::vector<Certificate>& certs, std::uint64_t seed = 7,
                                        int image_samples = 256, int coverage_samples = 512) {
    require(!certs.empty(), "product_lower_bound: no certificates");
    std::vector<HoloMap> maps;
    std::vector<DomainSpec> Ds, Omegas;
    std::vector<MultiIndex> ds;
    std::vector<Point> anchors;
    double r = 1.0;
    for (const auto& c : certs) {
        require(c.map.dim() == c.anchor.dim() && c.D->dim() == c.anchor.dim() && c.d.size() == c.anchor.dim(),
                "product_lower_bound: dimension bookkeeping mismatch");
        maps.push_back(c.map);
        Ds.push_back(*c.D);
        Omegas.push_back(*c.Omega);
        ds.push_back(c.d);
        anchors.push_back(c.anchor);
        r = std::min(r, c.radius);
    }
    if (certs.size() == 1) return {r, certs.front()};
    Certificate pc{HoloMap::product(std::move(maps)),
                   concat(anchors),
                   r,
                   {},
                   {},
                   std::make_shared<const DomainSpec>(DomainSpec::product(std::move(Ds))),
                   std::make_shared<const DomainSpec>(DomainSpec::product(std::move(Omegas))),
                   concat(ds),
                   "product",
                   0.0,
                   0.0};
    auto [img, cov] = verify_certificate(pc, seed, image_samples, coverage_samples);
    pc.imageCheck = img;
    pc.coverageCheck = cov;
    return {r, pc};
}

/// A_Omega (tanh k_D)^{1/L} with A_Omega = B_{-Omega} + B_{2 Omega}.
inline double continuity_modulus(const DomainSpec& Omega, const MultiIndex& d, double kD, const SupBound& b_minus,
                                 const SupBound& b_two) {
    require(d.size() == Omega.dim(), "continuity_modulus: dimension mismatch");
    require(kD >= 0.0, "continuity_modulus: negative distance");
    require(b_minus.domainScale == -1.0 && b_two.domainScale == 2.0,
            "continuity_modulus: expects bounds for a = -1 and a = 2");
    return (b_minus.estimate + b_two.estimate) * std::pow(std::tanh(kD), 1.0 / d.L());
}

struct ExhaustionSweep {
    std::vector<double> radii;
    std::vector<BracketedValue> values;
    BracketedValue limit;
};

/// Squeezing sandwiches of z in D_k = (r_k Omega) \ {0}, computed through the biholomorphism
/// w -> w / r_k onto Omega \ {0}, together with the value on Omega \ {0} itself.
inline ExhaustionSweep exhaustion_sweep(const DomainSpec& Omega, const MultiIndex& d, const Point& z,
                                        const std::vector<double>& radii, double tol = kDefaultTol) {
    require(!radii.empty(), "exhaustion_sweep: empty radius sequence");
    for (std::size_t k = 0; k < radii.size(); ++k) {
        require(radii[k] > 0.0 && radii[k] <= 1.0, "exhaustion_sweep: radii must lie in (0, 1]");
        if (k) require(radii[k] >= radii[k - 1], "exhaustion_sweep: radii must be increasing");
    }
    const DomainSpec smallest = DomainSpec::punctured(DomainSpec::scaled(radii.front(), Omega));
    if (!smallest.contains(z)) throw ContractViolation("exhaustion_sweep: z lies outside the smallest domain");
    ExhaustionSweep out;
    out.radii = radii;
    for (double r : radii) {
        std::vector<Complex> w(z.coords());
        for (auto& c : w) c /= r;
        out.values.push_back(punctured_value(Omega, d, Point(std::move(w)), tol));
    }
    out.limit = punctured_value(Omega, d, z, tol);
    return out;
}

/// Recentres a certificate at z1 onto z2 with g = ShiftShrink(f(z2), k) o f, where
/// k = h_{d,Omega}(-f(z2)) (the smallest k keeping g(D) inside Omega by the triangle-type bound).
/// The radius of g is measured by the coverage estimator rather than taken from a formula.
/// Returns nullopt when g covers no sublevel set.
inline std::optional<Certificate> transport_certificate(const Certificate& cert, const Point& z2,
                                                        const SearchBudget& budget = {}) {
    const DomainSpec& Omega = *cert.Omega;
    if (!cert.D->contains(z2)) throw ContractViolation("transport_certificate: z2 outside D");
    const Point fz2 = cert.map(z2);
    std::vector<Complex> neg(fz2.coords());
    for (auto& c : neg) c = -c;
    const double k = d_minkowski(Omega, cert.d, Point(neg), budget.tol).hi;
    const HoloMap g = HoloMap::compose({cert.map, HoloMap::shift_shrink(fz2.coords(), k, cert.d)});
    try {
        return certify_map(*cert.D, Omega, cert.d, z2, g, budget, "shift_shrink", k);
    } catch (const NumericFailure&) {
        return std::nullopt;
    }
}

}  // namespace dsq
