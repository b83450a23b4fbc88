// dsqlab: command-line front end for the verification lab.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "dsq/dsq.hpp"

namespace {

using dsq::json;

json parse_arg(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw dsq::ConfigError(std::string("--") + what + " is not valid JSON: " + e.what());
    }
}

/// {"D": domain, "Omega": domain (defaults to the filled D), "d": [..], "z" or "a": point}
struct Pair {
    dsq::DomainSpec D;
    dsq::DomainSpec Omega;
    dsq::MultiIndex d;
    dsq::Point anchor;
};

Pair parse_pair(const std::string& text, const char* point_key) {
    const json j = parse_arg(text, "pair");
    try {
        dsq::DomainSpec D = dsq::domain_from_json(j.at("D"));
        dsq::DomainSpec Omega = j.contains("Omega") ? dsq::domain_from_json(j["Omega"]) : D.filled();
        dsq::MultiIndex d = j.contains("d") ? dsq::multi_index_from_json(j["d"]) : dsq::default_index(Omega);
        dsq::Point a = j.contains(point_key) ? dsq::point_from_json(j[point_key]) : dsq::Point::zero(D.dim());
        return {std::move(D), std::move(Omega), std::move(d), std::move(a)};
    } catch (const json::exception& e) {
        throw dsq::ConfigError(std::string("bad --pair: ") + e.what());
    }
}

int cmd_run(const std::string& config_path, const std::string& out_dir, std::optional<std::uint64_t> seed,
            std::optional<double> tol, unsigned threads) {
    dsq::SuiteConfig config = dsq::load_suite_config(config_path);
    if (seed) config.seed = *seed;
    if (tol) {
        config.tol = *tol;
        config.budget.tol = *tol;
    }
    const auto results = dsq::run_suite(config, threads);
    dsq::write_csv(std::cout, results);
    std::string dir = out_dir.empty() ? config.outputPath : out_dir;
    if (!dir.empty()) {
        std::filesystem::create_directories(dir);
        std::ofstream csv(std::filesystem::path(dir) / "results.csv");
        dsq::write_csv(csv, results);
        json log = json::array();
        for (const auto& r : results)
            log.push_back({{"checkId", r.checkId},
                           {"domainId", r.domainId},
                           {"status", dsq::to_string(r.status)},
                           {"worstMargin", r.worstMargin},
                           {"samples", r.samples},
                           {"elapsedSeconds", r.elapsed.count()},
                           {"seedChain", r.seedChain},
                           {"note", r.note}});
        std::ofstream(std::filesystem::path(dir) / "run.json") << json{{"schema", "dsq.run/1"}, {"results", log}}.dump(2)
                                                             << '\n';
    }
    for (const auto& r : results)
        if (!r.note.empty()) std::cerr << r.checkId << '@' << r.domainId << ": " << r.note << '\n';
    return dsq::exit_code(results);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dsqlab: numerical verification of squeezing and Fridman invariants"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    unsigned threads = 0;
    auto* run = app.add_subcommand("run", "Run a verification suite and print the CSV report");
    run->add_option("--config", config_path, "Suite config (JSON)")->required();
    run->add_option("--out", out_dir, "Directory for results.csv and run.json");
    run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--tol", tol, "Override the config tolerance");
    run->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

    auto* eval = app.add_subcommand("eval", "Evaluate a function");
    auto* eval_h = eval->add_subcommand("h", "Weighted Minkowski function h_{d,domain}(z)");
    eval->require_subcommand(1);
    std::string domain_text, d_text, z_text;
    double eval_tol = dsq::kDefaultTol;
    eval_h->add_option("--domain", domain_text, "Domain (JSON)")->required();
    eval_h->add_option("--d", d_text, "Weights, e.g. 1,2");
    eval_h->add_option("--z", z_text, "Point (JSON array; complex entries as [re, im])")->required();
    eval_h->add_option("--tol", eval_tol, "Bracket tolerance");

    std::string pair_text, family = "moebius";
    double budget_total = 1e4;
    auto* squeeze = app.add_subcommand("squeeze", "Certify a squeezing lower bound");
    squeeze->add_option("--pair", pair_text, R"(JSON {"D":..,"Omega":..,"d":[..],"z":[..]})")->required();
    squeeze->add_option("--family", family, "moebius | affine | dpower");
    squeeze->add_option("--budget", budget_total, "Total sample budget");

    std::string fr_pair_text, fr_family = "moebius";
    auto* fridman = app.add_subcommand("fridman", "Certify a Fridman lower bound and run the sandwich checks");
    fridman->add_option("--pair", fr_pair_text, R"(JSON {"D":..,"Omega":..,"d":[..],"a":[..]})")->required();
    fridman->add_option("--family", fr_family, "moebius | affine | dpower");

    std::vector<std::string> disabled;
    auto* trace = app.add_subcommand("trace", "Print the claim-to-check traceability matrix");
    trace->add_option("--disable", disabled, "Treat these check ids as disabled");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(config_path, out_dir, seed, tol, threads);

        if (*eval_h) {
            const dsq::DomainSpec D = dsq::domain_from_json(parse_arg(domain_text, "domain"));
            const dsq::MultiIndex d = d_text.empty() ? dsq::default_index(D) : dsq::parse_multi_index(d_text);
            const dsq::Point z = dsq::point_from_json(parse_arg(z_text, "z"));
            const auto h = dsq::d_minkowski(D, d, z, eval_tol);
            std::cout << json{{"lo", h.lo}, {"hi", h.hi}, {"closedForm", dsq::closed_form_gauge(D, d, z).value_or(-1.0)}}
                             .dump()
                      << '\n';
            return 0;
        }

        if (*squeeze) {
            const Pair p = parse_pair(pair_text, "z");
            const auto budget = dsq::SearchBudget::from_total(budget_total);
            const auto cert = dsq::certify_lower_bound(p.D, p.Omega, p.d, p.anchor, dsq::parse_family(family), budget);
            std::cout << dsq::to_json(cert).dump(2) << '\n';
            return 0;
        }

        if (*fridman) {
            const Pair p = parse_pair(fr_pair_text, "a");
            const dsq::SearchBudget budget;
            const auto fam = dsq::parse_family(fr_family);
            std::optional<dsq::Certificate> sq;
            if (p.D.has_punctures() || fam == dsq::MapFamily::DPower)
                sq = dsq::certify_lower_bound(p.D, p.Omega, p.d, p.anchor, dsq::MapFamily::Moebius, budget);
            const auto fr = dsq::fridman_lower_bound(p.D, p.Omega, p.d, p.anchor, fam, budget, sq ? &*sq : nullptr);
            json out{{"certificate", dsq::to_json(fr)}};
            if (p.D.as<dsq::PuncturedDomain>()) {
                const auto S = dsq::punctured_value(p.Omega, p.d, p.anchor);
                const auto g = dsq::sandwich_check_general(S, fr, p.d.L());
                out["squeeze"] = dsq::to_json(S);
                out["general"] = {{"status", dsq::to_string(g.status)}, {"margin", g.margin}};
            } else if (p.anchor.is_zero()) {
                const auto c = dsq::certify_lower_bound(p.D, p.Omega, p.d, p.anchor, dsq::MapFamily::Affine, budget);
                const dsq::BracketedValue S{c.radius, 1.0};
                const auto g = dsq::sandwich_check_general(S, fr, p.d.L());
                const auto o = dsq::sandwich_check_origin(p.D, p.Omega, p.d, fr, S);
                out["squeeze"] = dsq::to_json(S);
                out["general"] = {{"status", dsq::to_string(g.status)}, {"margin", g.margin}};
                out["origin"] = {{"status", dsq::to_string(o.status)}, {"margin", o.margin}};
            }
            std::cout << out.dump(2) << '\n';
            return 0;
        }

        if (*trace) {
            std::set<std::string> enabled(dsq::known_checks().begin(), dsq::known_checks().end());
            for (const auto& id : disabled) enabled.erase(id);
            std::cout << "claim,checkId,operation,status\n";
            for (const auto& r : dsq::report_traceability(enabled))
                std::cout << '"' << r.claim << "\"," << r.checkId << ',' << r.operation << ',' << r.status << '\n';
            return 0;
        }
    } catch (const dsq::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const dsq::ContractViolation& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
