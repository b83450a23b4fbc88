#pragma once

#include <json.hpp>

#include "dsq/fridman.hpp"

namespace dsq {

using json = nlohmann::json;

inline constexpr const char* kCertificateSchema = "dsq.certificate/1";
inline constexpr const char* kFridmanSchema = "dsq.fridman-certificate/1";

// Complex numbers: a plain number when real, [re, im] otherwise.

inline json to_json(Complex c) {
    if (c.imag() == 0.0) return c.real();
    return json::array({c.real(), c.imag()});
}

inline Complex complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ContractViolation("expected a number or [re, im], got " + j.dump());
}

inline json to_json(std::span<const Complex> v) {
    json a = json::array();
    for (const auto& c : v) a.push_back(to_json(c));
    return a;
}

inline std::vector<Complex> complex_vector_from_json(const json& j) {
    if (!j.is_array()) throw ContractViolation("expected an array of coordinates, got " + j.dump());
    std::vector<Complex> v;
    for (const auto& e : j) v.push_back(complex_from_json(e));
    return v;
}

inline json to_json(const Point& p) { return to_json(p.span()); }
inline Point point_from_json(const json& j) { return Point(complex_vector_from_json(j)); }

inline json to_json(const MultiIndex& d) { return d.values(); }
inline MultiIndex multi_index_from_json(const json& j) {
    if (!j.is_array()) throw ContractViolation("expected an integer array for d, got " + j.dump());
    return MultiIndex(j.get<std::vector<int>>());
}

/// Parses "1,2" into a multi-index.
inline MultiIndex parse_multi_index(const std::string& s) {
    std::vector<int> d;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto next = s.find(',', pos);
        const std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        try {
            std::size_t used = 0;
            d.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ContractViolation("bad multi-index entry '" + tok + "'");
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return MultiIndex(std::move(d));
}

// ---------------------------------------------------------------------------
// Domains
// ---------------------------------------------------------------------------

inline json to_json(const DomainSpec& D) {
    return std::visit(
        [&](const auto& k) -> json {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, UnitBall>) return {{"kind", "ball"}, {"n", k.n}};
            else if constexpr (std::is_same_v<K, Polydisk>) return {{"kind", "polydisk"}, {"n", k.n}};
            else if constexpr (std::is_same_v<K, ComplexEllipsoid>) return {{"kind", "ellipsoid"}, {"p", k.p}};
            else if constexpr (std::is_same_v<K, ProductDomain>) {
                json f = json::array();
                for (const auto& x : k.factors) f.push_back(to_json(*x));
                return {{"kind", "product"}, {"factors", f}};
            } else if constexpr (std::is_same_v<K, ScaledDomain>) {
                return {{"kind", "scaled"}, {"a", k.a}, {"inner", to_json(*k.inner)}};
            } else if constexpr (std::is_same_v<K, PuncturedDomain>) {
                return {{"kind", "punctured"}, {"inner", to_json(*k.inner)}};
            } else {
                json rows = json::array();
                for (const auto& r : k.rows) rows.push_back(to_json(std::span<const Complex>(r)));
                return {{"kind", "polyhedron"}, {"rows", rows}, {"bounds", k.bounds}};
            }
        },
        D.kind());
}

inline DomainSpec domain_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ContractViolation("domain description needs a string 'kind': " + j.dump());
    const auto kind = j["kind"].get<std::string>();
    auto field = [&](const char* name) -> const json& {
        if (!j.contains(name)) throw ContractViolation("domain '" + kind + "' is missing field '" + name + "'");
        return j[name];
    };
    auto dim = [&]() {
        const json& n = field("n");
        if (!n.is_number_integer() || n.get<long long>() < 1)
            throw ContractViolation("domain '" + kind + "': n must be a positive integer");
        return static_cast<std::size_t>(n.get<long long>());
    };
    try {
        if (kind == "disk") return DomainSpec::disk();
        if (kind == "ball") return DomainSpec::unit_ball(dim());
        if (kind == "polydisk") return DomainSpec::polydisk(dim());
        if (kind == "ellipsoid") return DomainSpec::ellipsoid(field("p").get<std::vector<int>>());
        if (kind == "product") {
            std::vector<DomainSpec> fs;
            for (const auto& f : field("factors")) fs.push_back(domain_from_json(f));
            return DomainSpec::product(std::move(fs));
        }
        if (kind == "scaled") return DomainSpec::scaled(field("a").get<double>(), domain_from_json(field("inner")));
        if (kind == "punctured") return DomainSpec::punctured(domain_from_json(field("inner")));
        if (kind == "polyhedron") {
            std::vector<std::vector<Complex>> rows;
            for (const auto& r : field("rows")) rows.push_back(complex_vector_from_json(r));
            return DomainSpec::linear_polyhedron(std::move(rows), field("bounds").get<std::vector<double>>());
        }
    } catch (const json::exception& e) {
        throw ContractViolation("domain '" + kind + "': " + e.what());
    }
    throw ContractViolation("unknown domain kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Maps and certificates
// ---------------------------------------------------------------------------

inline json to_json(const HoloMap& f) {
    return std::visit(
        [](const auto& n) -> json {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Translate>) return {{"node", "translate"}, {"b", to_json(n.b)}};
            else if constexpr (std::is_same_v<N, DiagScale>) return {{"node", "diag_scale"}, {"c", to_json(n.c)}};
            else if constexpr (std::is_same_v<N, MoebiusPerCoord>) return {{"node", "moebius"}, {"a", to_json(n.a)}};
            else if constexpr (std::is_same_v<N, DPower>) return {{"node", "dpower"}, {"r", n.r}, {"d", to_json(n.d)}};
            else if constexpr (std::is_same_v<N, ShiftShrink>)
                return {{"node", "shift_shrink"}, {"shift", to_json(n.shift)}, {"k", n.k}, {"d", to_json(n.d)}};
            else if constexpr (std::is_same_v<N, Compose>) {
                json s = json::array();
                for (const auto& x : n.steps) s.push_back(to_json(*x));
                return {{"node", "compose"}, {"steps", s}};
            } else if constexpr (std::is_same_v<N, InverseOf>) {
                return {{"node", "inverse"}, {"inner", to_json(*n.inner)}};
            } else {
                json s = json::array();
                for (const auto& x : n.factors) s.push_back(to_json(*x));
                return {{"node", "product"}, {"factors", s}};
            }
        },
        f.node());
}

inline HoloMap holomap_from_json(const json& j) {
    if (!j.is_object() || !j.contains("node")) throw ContractViolation("map description needs 'node': " + j.dump());
    const auto node = j.at("node").get<std::string>();
    if (node == "translate") return HoloMap::translate(complex_vector_from_json(j.at("b")));
    if (node == "diag_scale") return HoloMap::diag_scale(complex_vector_from_json(j.at("c")));
    if (node == "moebius") return HoloMap::moebius(complex_vector_from_json(j.at("a")));
    if (node == "dpower") return HoloMap::dpower(j.at("r").get<double>(), multi_index_from_json(j.at("d")));
    if (node == "shift_shrink")
        return HoloMap::shift_shrink(complex_vector_from_json(j.at("shift")), j.at("k").get<double>(),
                                     multi_index_from_json(j.at("d")));
    if (node == "compose" || node == "product") {
        std::vector<HoloMap> parts;
        for (const auto& x : j.at(node == "compose" ? "steps" : "factors")) parts.push_back(holomap_from_json(x));
        return node == "compose" ? HoloMap::compose(std::move(parts)) : HoloMap::product(std::move(parts));
    }
    if (node == "inverse") return holomap_from_json(j.at("inner")).inverse();
    throw ContractViolation("unknown map node '" + node + "'");
}

inline json to_json(const SampleRecord& r) {
    return {{"count", r.count}, {"seed", r.seed}, {"failures", r.failures}};
}

inline SampleRecord sample_record_from_json(const json& j) {
    return {j.at("count").get<int>(), j.at("seed").get<std::uint64_t>(), j.at("failures").get<int>()};
}

inline json to_json(const Certificate& c) {
    return {{"schema", kCertificateSchema},
            {"family", c.family},
            {"param", c.param},
            {"D", to_json(*c.D)},
            {"Omega", to_json(*c.Omega)},
            {"d", to_json(c.d)},
            {"anchor", to_json(c.anchor)},
            {"radius", c.radius},
            {"eps_cov", c.eps_cov},
            {"imageCheck", to_json(c.imageCheck)},
            {"coverageCheck", to_json(c.coverageCheck)},
            {"map", to_json(c.map)}};
}

inline Certificate certificate_from_json(const json& j) {
    if (j.value("schema", "") != kCertificateSchema) throw ContractViolation("not a squeezing certificate");
    return {holomap_from_json(j.at("map")),
            point_from_json(j.at("anchor")),
            j.at("radius").get<double>(),
            sample_record_from_json(j.at("imageCheck")),
            sample_record_from_json(j.at("coverageCheck")),
            std::make_shared<const DomainSpec>(domain_from_json(j.at("D"))),
            std::make_shared<const DomainSpec>(domain_from_json(j.at("Omega"))),
            multi_index_from_json(j.at("d")),
            j.at("family").get<std::string>(),
            j.at("param").get<double>(),
            j.at("eps_cov").get<double>()};
}

inline json to_json(const FridmanCertificate& c) {
    return {{"schema", kFridmanSchema},
            {"family", c.family},
            {"param", c.param},
            {"D", to_json(*c.D)},
            {"Omega", to_json(*c.Omega)},
            {"center", to_json(c.center)},
            {"radius", c.radius},
            {"tanhRadius", c.tanhRadius},
            {"infFormUpper", c.inf_form_upper()},
            {"ballCheck", to_json(c.ballCheck)},
            {"map", to_json(c.map)}};
}

inline FridmanCertificate fridman_certificate_from_json(const json& j) {
    if (j.value("schema", "") != kFridmanSchema) throw ContractViolation("not a Fridman certificate");
    return {holomap_from_json(j.at("map")),
            point_from_json(j.at("center")),
            j.at("radius").get<double>(),
            j.at("tanhRadius").get<double>(),
            sample_record_from_json(j.at("ballCheck")),
            std::make_shared<const DomainSpec>(domain_from_json(j.at("D"))),
            std::make_shared<const DomainSpec>(domain_from_json(j.at("Omega"))),
            j.at("family").get<std::string>(),
            j.at("param").get<double>()};
}

inline json to_json(const BracketedValue& b) { return {{"lo", b.lo}, {"hi", b.hi}}; }

}  // namespace dsq
