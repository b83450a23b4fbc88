#pragma once

#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "dsq/serialize.hpp"

namespace dsq {

inline constexpr const char* kResultsSchema = "dsq.results/1";

/// Raised for malformed suite configurations (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> ids{"homogeneity",  "triangle",           "sandwich-metric",
                                              "sublevel-limit", "product-lower-bound", "continuity",
                                              "exhaustion",   "fridman-squeeze"};
    return ids;
}

struct DomainEntry {
    std::string id;
    DomainSpec domain;
    MultiIndex d;
};

struct SuiteConfig {
    std::vector<DomainEntry> domains;
    std::vector<std::string> checks;
    int samples = 1000;
    /// Anchor points per domain for the certificate-based checks.
    int anchors = 2;
    std::uint64_t seed = 1;
    double tol = 1e-10;
    SearchBudget budget;
    std::string outputPath;
    std::string outputFormat = "csv";
};

enum class CheckStatus { Pass, Confirmed, Inconclusive, Fail, Skipped };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Confirmed: return "confirmed";
        case CheckStatus::Inconclusive: return "inconclusive";
        case CheckStatus::Fail: return "fail";
        default: return "skipped";
    }
}

struct CheckResult {
    std::string checkId;
    std::string domainId;
    CheckStatus status = CheckStatus::Skipped;
    /// Smallest slack over all tested inequalities; negative means a violation.
    double worstMargin = 0.0;
    int samples = 0;
    std::chrono::duration<double> elapsed{};
    std::string seedChain;
    std::string note;
};

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

inline MultiIndex default_index(const DomainSpec& D) {
    const DomainSpec f = D.filled();
    if (f.flags().dBalancedFor) return *f.flags().dBalancedFor;
    return MultiIndex::ones(D.dim());
}

inline SuiteConfig parse_suite_config(const json& j) {
    try {
        if (!j.is_object()) throw ConfigError("suite config must be a JSON object");
        SuiteConfig c;
        c.samples = j.value("samples", c.samples);
        c.anchors = j.value("anchors", c.anchors);
        c.seed = j.value("seed", c.seed);
        c.tol = j.value("tol", c.tol);
        if (c.samples < 1 || c.anchors < 1) throw ConfigError("samples and anchors must be positive");
        if (!(c.tol > 0.0)) throw ConfigError("tol must be positive");
        if (j.contains("budget")) {
            const json& b = j["budget"];
            if (b.is_number()) {
                c.budget = SearchBudget::from_total(b.get<double>());
            } else {
                c.budget.grid = b.value("grid", c.budget.grid);
                c.budget.golden_iters = b.value("golden_iters", c.budget.golden_iters);
                c.budget.image_samples = b.value("image_samples", c.budget.image_samples);
                c.budget.ray_directions = b.value("ray_directions", c.budget.ray_directions);
                c.budget.ray_steps = b.value("ray_steps", c.budget.ray_steps);
                c.budget.coverage_samples = b.value("coverage_samples", c.budget.coverage_samples);
                c.budget.eps_cov = b.value("eps_cov", c.budget.eps_cov);
                c.budget.ball_samples_1d = b.value("ball_samples_1d", c.budget.ball_samples_1d);
                c.budget.ball_samples_nd = b.value("ball_samples_nd", c.budget.ball_samples_nd);
                c.budget.ball_interior_samples = b.value("ball_interior_samples", c.budget.ball_interior_samples);
            }
        }
        c.budget.tol = c.tol;
        if (j.contains("output")) {
            const json& o = j["output"];
            c.outputPath = o.value("path", "");
            c.outputFormat = o.value("format", "csv");
            if (c.outputFormat != "csv") throw ConfigError("unsupported output format '" + c.outputFormat + "'");
        }
        std::set<std::string> ids;
        for (const auto& e : j.value("domains", json::array())) {
            DomainEntry entry{e.at("id").get<std::string>(), domain_from_json(e.at("domain")), MultiIndex::ones(1)};
            entry.d = e.contains("d") ? multi_index_from_json(e["d"]) : default_index(entry.domain);
            if (entry.d.size() != entry.domain.dim())
                throw ConfigError("domain '" + entry.id + "': d has the wrong length");
            if (!ids.insert(entry.id).second) throw ConfigError("duplicate domain id '" + entry.id + "'");
            c.domains.push_back(std::move(entry));
        }
        for (const auto& id : j.value("checks", json::array())) {
            const auto s = id.get<std::string>();
            if (std::find(known_checks().begin(), known_checks().end(), s) == known_checks().end())
                throw ConfigError("unknown check id '" + s + "'");
            c.checks.push_back(s);
        }
        return c;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad suite config: ") + e.what());
    }
}

inline SuiteConfig load_suite_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_suite_config(j);
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

namespace checks {

struct Context {
    const DomainEntry& entry;
    const SuiteConfig& config;
    std::uint64_t seed;
};

/// Running worst-margin tally.
struct Tally {
    double worst = std::numeric_limits<double>::infinity();
    int samples = 0;
    int violations = 0;

    void add(double margin) {
        ++samples;
        worst = std::min(worst, margin);
        if (margin < 0.0) ++violations;
    }
    [[nodiscard]] CheckResult result(CheckStatus ok, std::string note = {}) const {
        CheckResult r;
        r.status = violations ? CheckStatus::Fail : ok;
        r.worstMargin = samples ? worst : 0.0;
        r.samples = samples;
        r.note = std::move(note);
        return r;
    }
};

inline CheckResult skipped(std::string why) {
    CheckResult r;
    r.status = CheckStatus::Skipped;
    r.note = std::move(why);
    return r;
}

/// Gap between two brackets (0 when they overlap).
inline double bracket_gap(const BracketedValue& a, const BracketedValue& b) {
    return std::max({0.0, a.lo - b.hi, b.lo - a.hi});
}

/// The target model of an entry: the filled domain.
inline DomainSpec target_of(const DomainEntry& e) { return e.domain.filled(); }

/// The unit model (polydisk or ball) underneath rescalings and punctures.
inline DomainSpec unit_model_of(const DomainSpec& D) {
    if (const auto* p = D.as<PuncturedDomain>()) return unit_model_of(*p->inner);
    if (const auto* s = D.as<ScaledDomain>()) return unit_model_of(*s->inner);
    return D;
}

inline bool is_punctured_model(const DomainEntry& e) { return e.domain.as<PuncturedDomain>() != nullptr; }

inline CheckResult homogeneity(const Context& ctx) {
    const DomainSpec Omega = target_of(ctx.entry);
    const MultiIndex& d = ctx.entry.d;
    if (!Omega.is_d_balanced(d)) return skipped("domain not d-balanced for d");
    const double tol = ctx.config.tol;
    Rng rng(ctx.seed);
    Tally t;
    for (int i = 0; i < ctx.config.samples; ++i) {
        const Point z = sample_domain(Omega, rng);
        const Complex lam = (i % 8 == 0) ? std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi)) : rng.unit_disk();
        const BracketedValue hz = d_minkowski(Omega, d, z, tol);
        const BracketedValue left = d_minkowski(Omega, d, weighted_scale(z, d, lam), tol);
        const double a = std::abs(lam);
        t.add(2.0 * tol - bracket_gap(left, {a * hz.lo, a * hz.hi}));
        if (Omega.flags().balanced) {
            const double r = rng.uniform();
            std::vector<Complex> rz(z.coords());
            for (auto& c : rz) c *= r;
            const BracketedValue hr = minkowski(Omega, Point(std::move(rz)), tol);
            const BracketedValue h1 = minkowski(Omega, z, tol);
            t.add(2.0 * tol - bracket_gap(hr, {r * h1.lo, r * h1.hi}));
        }
    }
    return t.result(CheckStatus::Pass);
}

inline CheckResult triangle(const Context& ctx) {
    const DomainSpec Omega = target_of(ctx.entry);
    const MultiIndex& d = ctx.entry.d;
    if (!Omega.flags().convex || !Omega.is_d_balanced(d)) return skipped("domain not convex and d-balanced");
    const double tol = ctx.config.tol;
    Rng rng(ctx.seed);
    Tally t;
    for (int i = 0; i < ctx.config.samples; ++i) {
        const Point z = sample_domain(Omega, rng);
        const Point w = sample_domain(Omega, rng);
        const double alpha = rng.uniform();
        std::vector<Complex> m(z.dim());
        for (std::size_t j = 0; j < m.size(); ++j) m[j] = alpha * z[j] + (1.0 - alpha) * w[j];
        const double left = d_minkowski(Omega, d, Point(std::move(m)), tol).lo;
        const double right = d_minkowski(Omega, d, z, tol).hi + d_minkowski(Omega, d, w, tol).hi;
        t.add(right + 2.0 * tol - left);
    }
    return t.result(CheckStatus::Pass);
}

inline CheckResult sublevel_limit(const Context& ctx) {
    const DomainSpec Omega = target_of(ctx.entry);
    const MultiIndex& d = ctx.entry.d;
    if (!Omega.is_d_balanced(d)) return skipped("domain not d-balanced for d");
    const double tol = ctx.config.tol;
    Rng rng(ctx.seed);
    Tally t;
    for (int i = 0; i < ctx.config.samples; ++i) {
        // Omega is the level-1 sublevel set.
        const Point z = sample_domain(Omega, rng);
        t.add(sublevel_membership(Omega, d, 1.0, z, tol) == Sublevel::Inside ? 0.0 : -1.0);

        // Every decided member of {h < r} is a member of some {h < r_k}, r_k = r (1 - 2^-k).
        const double r = rng.uniform(0.2, 1.0);
        const Point u = sample_unit_level(Omega, d, rng, tol);
        const Point w = weighted_scale(u, d, r * rng.uniform());
        if (sublevel_membership(Omega, d, r, w, tol) == Sublevel::Inside) {
            const double h = d_minkowski(Omega, d, w, tol).hi;
            bool found = false;
            for (int k = 1; k <= 40 && !found; ++k)
                found = sublevel_membership(Omega, d, r * (1.0 - std::ldexp(1.0, -k)), w, tol) == Sublevel::Inside;
            t.add(found ? r - h : -1.0);
        }

        // Product domains: the sublevel set of the product is the product of the factor sublevel sets.
        if (const auto* p = Omega.as<ProductDomain>()) {
            std::size_t off = 0;
            bool all = true;
            bool decided = true;
            for (const auto& f : p->factors) {
                const auto s = sublevel_membership(*f, d.slice(off, f->dim()), r, w.slice(off, f->dim()), tol, false);
                if (s == Sublevel::Undecided) decided = false;
                all = all && s == Sublevel::Inside;
                off += f->dim();
            }
            const auto whole = sublevel_membership(Omega, d, r, w, tol, false);
            if (decided && whole != Sublevel::Undecided) t.add((whole == Sublevel::Inside) == all ? 0.0 : -1.0);
        }
    }
    return t.result(CheckStatus::Pass);
}

inline CheckResult sandwich_metric(const Context& ctx) {
    const DomainSpec Omega = target_of(ctx.entry);
    const MultiIndex& d = ctx.entry.d;
    if (!Omega.flags().convex || !Omega.is_d_balanced(d)) return skipped("domain not convex and d-balanced");
    if (!has_model_distance(Omega)) return skipped("no exact invariant distance on this domain");
    const double tol = ctx.config.tol;
    Rng rng(ctx.seed);
    Tally t;
    const Point origin = Point::zero(Omega.dim());
    const int n = std::max(1, ctx.config.samples / 2);
    for (int i = 0; i < n; ++i) {
        // c(0, z) inside [atanh h^L, atanh h], compared after tanh.
        const Point z = sample_domain(Omega, rng);
        const double c = std::tanh(model_distance(Omega, origin, z).distance);
        const BracketedValue h = d_minkowski(Omega, d, z, tol);
        t.add(std::min(c - std::pow(h.lo, d.L()), h.hi - c) + 2.0 * tol);
    }
    // h(z) <= B_{a Omega} (tanh k(0, z))^{1/L} on a * Omega, a in {1, 2}.
    for (double a : {1.0, 2.0}) {
        const DomainSpec scaled = DomainSpec::scaled(a, Omega);
        for (int i = 0; i < n; ++i) {
            const Point z = sample_domain(scaled, rng);
            double margin = 0.0;
            const auto k = model_distance(scaled, origin, z).distance;
            const auto out = lempert_lower_check(Omega, d, a, z, k, 1e-9, &margin);
            t.add(out == CheckOutcome::Fail ? std::min(margin, -1e-300) : margin);
        }
    }
    return t.result(CheckStatus::Pass);
}

/// Certificates of the available families, best first.
inline std::optional<Certificate> best_certificate(const DomainSpec& D, const DomainSpec& Omega, const MultiIndex& d,
                                                   const Point& z, const SearchBudget& budget) {
    std::optional<Certificate> best;
    for (MapFamily f : {MapFamily::Moebius, MapFamily::Affine}) {
        try {
            auto c = certify_lower_bound(D, Omega, d, z, f, budget);
            if (!best || c.radius > best->radius) best = std::move(c);
        } catch (const NumericFailure&) {
        }
    }
    return best;
}

/// Anchor of D with weighted gauge (of the filled domain) in [0.1, 0.9].
inline Point anchor_point(const DomainSpec& D, const MultiIndex& d, Rng& rng, double tol) {
    const DomainSpec f = D.filled();
    for (;;) {
        const Point u = sample_unit_level(f, d, rng, tol);
        const Point z = weighted_scale(u, d, rng.uniform(0.1, 0.9));
        if (D.contains(z)) return z;
    }
}

inline CheckResult product_lower_bound_check(const Context& ctx) {
    const DomainSpec& D = ctx.entry.domain;
    const DomainSpec Omega = target_of(ctx.entry);
    const MultiIndex& d = ctx.entry.d;
    if (!Omega.flags().convex || !Omega.is_d_balanced(d)) return skipped("target not convex and d-balanced");
    if (D.as<ProductDomain>() && D.has_punctures()) return skipped("product with punctured factors");
    SearchBudget budget = ctx.config.budget;
    budget.seed = derive_seed(ctx.seed, "budget");
    Rng rng(ctx.seed);
    Tally t;
    for (int i = 0; i < ctx.config.anchors; ++i) {
        const Point z1 = anchor_point(D, d, rng, ctx.config.tol);
        const Point z2 = anchor_point(D, d, rng, ctx.config.tol);
        auto c1 = best_certificate(D, Omega, d, z1, budget);
        auto c2 = best_certificate(D, Omega, d, z2, budget);
        if (!c1 || !c2) return skipped("no certificate from the shipped families");
        const auto pb = product_lower_bound({*c1, *c2}, derive_seed(ctx.seed, static_cast<std::uint64_t>(i)),
                                            budget.image_samples, budget.coverage_samples);
        t.add(pb.radius == std::min(c1->radius, c2->radius) ? 0.0 : -1.0);
        t.add(pb.certificate.imageCheck.failures == 0 && pb.certificate.coverageCheck.failures == 0 ? 0.0 : -1.0);
    }
    return t.result(CheckStatus::Pass);
}

inline CheckResult continuity(const Context& ctx) {
    const DomainSpec& D = ctx.entry.domain;
    const MultiIndex& d = ctx.entry.d;
    if (!is_punctured_model(ctx.entry)) return skipped("needs a punctured domain with known squeezing values");
    const DomainSpec Omega = target_of(ctx.entry);
    if (!Omega.flags().convex || !Omega.is_d_balanced(d) || !has_model_distance(Omega))
        return skipped("needs a convex d-balanced model target");
    const double tol = ctx.config.tol;
    const SupBound bm = sup_bound(Omega, d, -1.0, 256, derive_seed(ctx.seed, "b-1"));
    const SupBound b2 = sup_bound(Omega, d, 2.0, 256, derive_seed(ctx.seed, "b2"));
    Rng rng(ctx.seed);
    Tally t;
    const int n = std::max(1, ctx.config.samples / 2);
    for (int i = 0; i < n; ++i) {
        const Point z1 = sample_domain(D, rng);
        const Point z2 = (i % 4 == 0) ? anchor_point(D, d, rng, tol) : sample_domain(D, rng);
        // The filled-domain distance is a lower bound for the punctured one, so this is the stricter test.
        const double k = model_distance(Omega, z1, z2).distance;
        const double bound = continuity_modulus(Omega, d, k, bm, b2);
        t.add(bound + tol - bracket_gap(punctured_value(Omega, d, z1, tol), punctured_value(Omega, d, z2, tol)));
    }
    return t.result(CheckStatus::Pass, bm.certified && b2.certified ? "" : "sup bounds sampled, not certified");
}

inline CheckResult exhaustion(const Context& ctx) {
    const MultiIndex& d = ctx.entry.d;
    if (!is_punctured_model(ctx.entry)) return skipped("needs a punctured domain with known squeezing values");
    const DomainSpec Omega = target_of(ctx.entry);
    if (!Omega.flags().convex || !Omega.is_d_balanced(d)) return skipped("needs a convex d-balanced target");
    const double tol = ctx.config.tol;
    std::vector<double> radii;
    for (int k = 3; k <= 50; ++k) radii.push_back(1.0 - 1.0 / k);
    Rng rng(ctx.seed);
    Tally t;
    for (int i = 0; i < ctx.config.anchors; ++i) {
        const Point z = weighted_scale(sample_unit_level(Omega, d, rng, tol), d, 0.5);
        const ExhaustionSweep s = exhaustion_sweep(Omega, d, z, radii, tol);
        for (std::size_t k = 1; k < s.values.size(); ++k) {
            t.add(s.values[k - 1].lo - s.values[k].lo + 2.0 * tol);
            t.add(s.values[k - 1].hi - s.values[k].hi + 2.0 * tol);
        }
        const auto& last = s.values.back();
        t.add(0.011 - std::max(std::abs(last.lo - s.limit.lo), std::abs(last.hi - s.limit.hi)));
    }
    return t.result(CheckStatus::Pass);
}

inline CheckStatus combine(CheckStatus a, SandwichStatus b) {
    if (a == CheckStatus::Fail || b == SandwichStatus::Fail) return CheckStatus::Fail;
    if (a == CheckStatus::Inconclusive || b == SandwichStatus::Inconclusive) return CheckStatus::Inconclusive;
    return CheckStatus::Confirmed;
}

inline CheckResult fridman_squeeze(const Context& ctx) {
    const DomainSpec& D = ctx.entry.domain;
    const MultiIndex& d = ctx.entry.d;
    const DomainSpec Omega = target_of(ctx.entry);
    if (!CaratheodoryBall::supported(D)) return skipped("Caratheodory balls not computable");
    if (!Omega.flags().convex || !Omega.is_d_balanced(d)) return skipped("target not convex and d-balanced");
    SearchBudget budget = ctx.config.budget;
    budget.seed = derive_seed(ctx.seed, "budget");
    const double tol = 1e-9;
    Tally t;
    CheckStatus status = CheckStatus::Confirmed;
    std::string note;

    if (is_punctured_model(ctx.entry)) {
        if (!Omega.flags().homogeneous) return skipped("target not homogeneous");
        Rng rng(ctx.seed);
        for (int i = 0; i < ctx.config.anchors; ++i) {
            const Point a = anchor_point(D, d, rng, ctx.config.tol);
            const BracketedValue S = punctured_value(Omega, d, a, ctx.config.tol);
            const Certificate sq = certify_lower_bound(D, Omega, d, a, MapFamily::Moebius, budget);
            // A certified lower bound never exceeds the upper end of the sandwich.
            t.add(S.hi + 1e-6 - sq.radius);
            FridmanCertificate fr = fridman_lower_bound(D, Omega, d, a, MapFamily::Moebius, budget);
            if (d.L() > 1) {
                auto alt = fridman_lower_bound(D, Omega, d, a, MapFamily::DPower, budget, &sq);
                if (alt.tanhRadius > fr.tanhRadius) fr = std::move(alt);
            }
            t.add(1.0 - fr.tanhRadius);
            const SandwichReport rep = sandwich_check_general(S, fr, d.L(), tol);
            status = combine(status, rep.status);
            t.add(rep.status == SandwichStatus::Confirmed ? rep.margin + tol : 0.0);
            if (d.L() == 1 && std::abs(fr.tanhRadius - S.mid()) > 1e-3) {
                status = combine(status, SandwichStatus::Inconclusive);
                note = "Fridman bound outside the L = 1 equality corridor";
            }
        }
    } else {
        const Point a = Point::zero(D.dim());
        const DomainSpec model = unit_model_of(D);
        // The squeezing bracket at the origin is [certified lower bound, 1].
        const auto sq = best_certificate(D, model, d, a, budget);
        if (!sq) return skipped("no squeezing certificate from the shipped families");
        const BracketedValue S{sq->radius, 1.0};
        std::optional<FridmanCertificate> fr;
        for (MapFamily f : {MapFamily::Affine, MapFamily::Moebius}) {
            try {
                auto c = fridman_lower_bound(D, model, d, a, f, budget);
                if (!fr || c.tanhRadius > fr->tanhRadius) fr = std::move(c);
            } catch (const NumericFailure&) {
            } catch (const ContractViolation&) {
                return skipped("target not homogeneous");
            }
        }
        if (!fr) return skipped("no Fridman certificate from the shipped families");
        t.add(1.0 - fr->tanhRadius);
        const SandwichReport g = sandwich_check_general(S, *fr, d.L(), tol);
        status = combine(status, g.status);
        const SandwichReport o = sandwich_check_origin(D, model, d, *fr, S, tol);
        if (o.status != SandwichStatus::Skipped) {
            status = combine(status, o.status);
            t.add(o.margin);
        }
        if (g.status == SandwichStatus::Confirmed) t.add(g.margin + tol);
    }
    CheckResult r = t.result(status, note);
    return r;
}

inline CheckResult run(const std::string& id, const Context& ctx) {
    static const std::map<std::string, std::function<CheckResult(const Context&)>> table{
        {"homogeneity", homogeneity},
        {"triangle", triangle},
        {"sandwich-metric", sandwich_metric},
        {"sublevel-limit", sublevel_limit},
        {"product-lower-bound", product_lower_bound_check},
        {"continuity", continuity},
        {"exhaustion", exhaustion},
        {"fridman-squeeze", fridman_squeeze},
    };
    const auto it = table.find(id);
    if (it == table.end()) throw ConfigError("unknown check id '" + id + "'");
    try {
        return it->second(ctx);
    } catch (const UnsupportedDomain& e) {
        return skipped(e.what());
    }
}

}  // namespace checks

inline std::uint64_t check_seed(std::uint64_t seed, const std::string& domainId, const std::string& checkId) {
    return derive_seed(derive_seed(seed, domainId), checkId);
}

/// Runs every (domain, check) pair. Pairs run concurrently; each has its own seed derived from
/// (seed, domainId, checkId), so results do not depend on scheduling. Results keep config order.
inline std::vector<CheckResult> run_suite(const SuiteConfig& config, unsigned threads = 0) {
    struct Task {
        const DomainEntry* entry;
        std::string check;
    };
    std::vector<Task> tasks;
    for (const auto& e : config.domains)
        for (const auto& c : config.checks) tasks.push_back({&e, c});
    std::vector<CheckResult> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const auto& task = tasks[i];
            const auto seed = check_seed(config.seed, task.entry->id, task.check);
            const auto start = std::chrono::steady_clock::now();
            CheckResult r;
            try {
                r = checks::run(task.check, {*task.entry, config, seed});
            } catch (const NumericFailure& e) {
                r = checks::skipped(std::string("numeric failure: ") + e.what());
            }
            r.checkId = task.check;
            r.domainId = task.entry->id;
            r.elapsed = std::chrono::steady_clock::now() - start;
            std::ostringstream chain;
            chain << config.seed << '/' << task.entry->id << '/' << task.check << "=0x" << std::hex << seed;
            r.seedChain = chain.str();
            results[i] = std::move(r);
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

/// 0 when no check failed, 1 otherwise.
inline int exit_code(const std::vector<CheckResult>& results) {
    return std::any_of(results.begin(), results.end(), [](const CheckResult& r) { return r.status == CheckStatus::Fail; })
               ? 1
               : 0;
}

/// CSV report. Elapsed times are left out so that identical configs give identical files.
inline void write_csv(std::ostream& out, const std::vector<CheckResult>& results) {
    out << "#schema=" << kResultsSchema << '\n';
    out << "checkId,domainId,status,worstMargin,samples,seedChain\n";
    for (const auto& r : results) {
        char margin[64];
        std::snprintf(margin, sizeof margin, "%.9e", r.worstMargin);
        out << r.checkId << ',' << r.domainId << ',' << to_string(r.status) << ',' << margin << ',' << r.samples << ','
            << r.seedChain << '\n';
    }
}

// ---------------------------------------------------------------------------
// Traceability
// ---------------------------------------------------------------------------

struct TraceRow {
    std::string claim;
    std::string checkId;  ///< empty for out-of-scope rows
    std::string operation;
    std::string status;  ///< "mapped", "missing" or "out-of-scope"
};

/// Claim-to-check matrix. Rows whose check is not in `enabled` are flagged "missing".
inline std::vector<TraceRow> report_traceability(const std::set<std::string>& enabled = {known_checks().begin(),
                                                                                        known_checks().end()}) {
    struct Spec {
        const char* claim;
        const char* check;
        const char* op;
    };
    static const Spec rows[] = {
        {"weighted gauge is homogeneous under the weighted circle action", "homogeneity", "d_minkowski"},
        {"balanced sublevel sets scale linearly", "homogeneity", "minkowski"},
        {"triangle-type bound for convex d-balanced domains", "triangle", "d_minkowski"},
        {"domain equals its level-1 sublevel set", "sublevel-limit", "sublevel_membership"},
        {"sublevel set is the increasing union of smaller sublevel sets", "sublevel-limit", "sublevel_membership"},
        {"product sublevel set factors over the product", "sublevel-limit", "sublevel_membership"},
        {"Caratheodory and Kobayashi distances from the origin lie between atanh h^L and atanh h",
         "sandwich-metric", "caratheodory_sandwich"},
        {"weighted gauge bounded by B times a power of tanh of the Lempert function", "sandwich-metric",
         "lempert_lower_check"},
        {"extremal maps cover the sublevel set of the squeezing value", "product-lower-bound", "certify_lower_bound"},
        {"squeezing value of a product of balanced pairs is at least the minimum", "product-lower-bound",
         "product_lower_bound"},
        {"squeezing value of a product of d-balanced pairs is at least the minimum", "product-lower-bound",
         "product_lower_bound"},
        {"squeezing function is Lipschitz-type continuous with constant B_{-Omega} + B_{2 Omega}", "continuity",
         "continuity_modulus"},
        {"squeezing functions of an exhaustion converge on compact sets", "exhaustion", "exhaustion_sweep"},
        {"punctured d-balanced domain: S^L <= h <= S^{1/L}", "fridman-squeeze", "punctured_value"},
        {"punctured balanced domain: squeezing value equals the gauge", "fridman-squeeze", "punctured_value"},
        {"squeezing value to the power L is at most the Fridman invariant", "fridman-squeeze",
         "sandwich_check_general"},
        {"Fridman invariant at the origin to the power L is at most the squeezing value", "fridman-squeeze",
         "sandwich_check_origin"},
        {"existence of extremal maps via normal families and Montel's theorem", "", "out of scope: non-constructive"},
        {"squeezing value 1 at some point forces biholomorphic equivalence", "", "out of scope: needs extremal maps"},
        {"holomorphic homogeneous regularity of a domain", "", "out of scope: only lower-bound evidence is computed"},
    };
    std::vector<TraceRow> out;
    for (const auto& r : rows) {
        std::string status = "out-of-scope";
        if (*r.check) status = enabled.count(r.check) ? "mapped" : "missing";
        out.push_back({r.claim, r.check, r.op, status});
    }
    return out;
}

}  // namespace dsq
