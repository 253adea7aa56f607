#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpus.hpp"
#include "pipeline.hpp"

namespace gevrey {

inline constexpr int kReportSchemaVersion = 1;

struct CoefficientEntry {
    RamifiedExponent exponent;
    GaussianRational value;

    friend bool operator==(const CoefficientEntry&, const CoefficientEntry&) = default;
};

struct GrowthPoint {
    std::int64_t s = 0;
    double log_magnitude = 0;

    friend bool operator==(const GrowthPoint&, const GrowthPoint&) = default;
};

/// Everything a run produces. Coefficient exponents are in z; support, hull,
/// characteristic values and residual are in the working variable.
struct ClassificationReport {
    int schema_version = kReportSchemaVersion;
    std::optional<std::string> case_id;
    std::string equation; // working variable, parameters substituted
    char variable = 'z';
    std::int64_t substitution = 1;
    std::optional<ParameterSet> parameters;
    std::int64_t ramification = 1; // exponent grid of `coefficients`, in z
    int branch = 0;
    std::vector<CoefficientEntry> seed;
    std::vector<CoefficientEntry> coefficients;
    std::vector<CoefficientEntry> characteristic_values;
    std::optional<RamifiedExponent> residual_leading_exponent;
    bool classified = false; // false for solve-only reports
    std::vector<SupportPoint> support;
    std::vector<SupportPoint> euler_support;
    std::vector<HullVertex> hull_vertices;
    std::vector<Rational> positive_slopes;
    std::vector<Rational> gevrey_candidates;
    std::vector<GrowthPoint> growth;
    std::string interpretation;
    std::string source;

    friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

/// Description of where the equation and seed came from.
struct ReportInput {
    std::optional<std::string> case_id;
    std::optional<ParameterSet> parameters;
    std::int64_t substitution = 1;
    std::string source;
};

inline ReportInput report_input(const CorpusCase& c) {
    return {c.id, c.parameters, c.substitution, c.source};
}

namespace detail {

inline std::vector<CoefficientEntry> entries(const SeedExpansion& seed) {
    std::vector<CoefficientEntry> out;
    for (const auto& [e, c] : seed.prescribed) out.push_back({e.reduced(), c});
    return out;
}

} // namespace detail

/// Report of the extension stage only.
inline ClassificationReport solve_report(const DiffSum& f, const ExtendedSolution& sol, const ReportInput& in) {
    ClassificationReport r;
    r.case_id = in.case_id;
    r.equation = to_string(f);
    r.variable = f.variable();
    r.substitution = in.substitution;
    r.parameters = in.parameters;
    r.ramification = sol.seed.ramification * in.substitution;
    r.branch = sol.seed.branch;
    r.seed = detail::entries(sol.seed);
    const RamifiedExponent lead = sol.seed.leading_exponent();
    r.coefficients.push_back({RamifiedExponent(lead.numerator, lead.ramification * in.substitution).reduced(),
                              sol.seed.leading_coefficient()});
    for (const auto& s : sol.steps) {
        r.coefficients.push_back(
            {RamifiedExponent(s.slot.numerator, s.slot.ramification * in.substitution).reduced(), s.coefficient});
        r.characteristic_values.push_back({s.slot.reduced(), s.characteristic_value});
    }
    r.residual_leading_exponent = residual_order(f, sol);
    if (r.residual_leading_exponent) r.residual_leading_exponent = r.residual_leading_exponent->reduced();
    r.source = in.source;
    return r;
}

inline ClassificationReport classification_report(const DiffSum& f, const Classification& c, const ReportInput& in) {
    ClassificationReport r = solve_report(f, c.solution, in);
    r.classified = true;
    r.support = c.polygon.support;
    r.euler_support = c.euler_polygon.support;
    r.hull_vertices = c.polygon.vertices;
    r.positive_slopes = c.polygon.positive_slopes;
    r.gevrey_candidates = c.candidates;
    for (const auto& g : c.growth) r.growth.push_back({g.s, g.log_magnitude});
    r.interpretation = c.interpretation;
    return r;
}

// JSON --------------------------------------------------------------------

inline nlohmann::json to_json_value(const GaussianRational& z) {
    return {{"re", z.real().get_str()}, {"im", z.imag().get_str()}};
}

inline GaussianRational gaussian_from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse_constant(j.get<std::string>());
    return GaussianRational(parse_rational(j.at("re").get<std::string>()),
                            parse_rational(j.value("im", std::string("0"))));
}

inline RamifiedExponent exponent_from_json(const nlohmann::json& j) {
    return exponent_from_rational(parse_rational(j.get<std::string>()));
}

inline nlohmann::json to_json(const std::vector<CoefficientEntry>& v) {
    auto out = nlohmann::json::array();
    for (const auto& e : v) out.push_back({{"exponent", e.exponent.to_string()}, {"value", to_json_value(e.value)}});
    return out;
}

inline std::vector<CoefficientEntry> entries_from_json(const nlohmann::json& j) {
    std::vector<CoefficientEntry> out;
    for (const auto& e : j) out.push_back({exponent_from_json(e.at("exponent")), gaussian_from_json(e.at("value"))});
    return out;
}

inline nlohmann::json to_json(const ParameterSet& p) {
    return {{"alpha", to_json_value(p.alpha)},
            {"beta", to_json_value(p.beta)},
            {"gamma", to_json_value(p.gamma)},
            {"delta", to_json_value(p.delta)}};
}

inline ParameterSet parameters_from_json(const nlohmann::json& j) {
    return {gaussian_from_json(j.at("alpha")), gaussian_from_json(j.at("beta")), gaussian_from_json(j.at("gamma")),
            gaussian_from_json(j.at("delta"))};
}

inline nlohmann::json to_json(const std::vector<SupportPoint>& pts) {
    auto out = nlohmann::json::array();
    for (const auto& p : pts) out.push_back({p.k, p.j0.to_string()});
    return out;
}

inline std::vector<SupportPoint> support_from_json(const nlohmann::json& j) {
    std::vector<SupportPoint> out;
    for (const auto& p : j) out.push_back({p.at(0).get<int>(), exponent_from_json(p.at(1))});
    return out;
}

inline nlohmann::json to_json(const std::vector<Rational>& v) {
    auto out = nlohmann::json::array();
    for (const auto& r : v) out.push_back(r.get_str());
    return out;
}

inline std::vector<Rational> rationals_from_json(const nlohmann::json& j) {
    std::vector<Rational> out;
    for (const auto& r : j) out.push_back(parse_rational(r.get<std::string>()));
    return out;
}

inline nlohmann::json to_json(const ClassificationReport& r) {
    nlohmann::json j;
    j["schema_version"] = r.schema_version;
    j["case_id"] = r.case_id ? nlohmann::json(*r.case_id) : nlohmann::json(nullptr);
    j["equation"] = r.equation;
    j["variable"] = std::string(1, r.variable);
    j["substitution"] = r.substitution;
    j["parameters"] = r.parameters ? to_json(*r.parameters) : nlohmann::json(nullptr);
    j["ramification"] = r.ramification;
    j["branch"] = r.branch;
    j["seed"] = to_json(r.seed);
    j["coefficients"] = to_json(r.coefficients);
    j["characteristic_values"] = to_json(r.characteristic_values);
    j["residual_leading_exponent"] =
        r.residual_leading_exponent ? nlohmann::json(r.residual_leading_exponent->to_string()) : nlohmann::json(nullptr);
    j["classified"] = r.classified;
    j["support"] = to_json(r.support);
    j["euler_support"] = to_json(r.euler_support);
    auto hull = nlohmann::json::array();
    for (const auto& v : r.hull_vertices) hull.push_back({v.q1, v.q2.get_str()});
    j["hull_vertices"] = hull;
    j["positive_slopes"] = to_json(r.positive_slopes);
    j["gevrey_candidates"] = to_json(r.gevrey_candidates);
    auto growth = nlohmann::json::array();
    for (const auto& g : r.growth) growth.push_back({{"s", g.s}, {"log_magnitude", g.log_magnitude}});
    j["growth"] = growth;
    j["interpretation"] = r.interpretation;
    j["source"] = r.source;
    return j;
}

inline ClassificationReport report_from_json(const nlohmann::json& j) {
    ClassificationReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion)
        throw std::invalid_argument("unsupported report schema_version " + std::to_string(r.schema_version));
    if (!j.at("case_id").is_null()) r.case_id = j.at("case_id").get<std::string>();
    r.equation = j.at("equation").get<std::string>();
    r.variable = j.at("variable").get<std::string>().at(0);
    r.substitution = j.at("substitution").get<std::int64_t>();
    if (!j.at("parameters").is_null()) r.parameters = parameters_from_json(j.at("parameters"));
    r.ramification = j.at("ramification").get<std::int64_t>();
    r.branch = j.at("branch").get<int>();
    r.seed = entries_from_json(j.at("seed"));
    r.coefficients = entries_from_json(j.at("coefficients"));
    r.characteristic_values = entries_from_json(j.at("characteristic_values"));
    if (!j.at("residual_leading_exponent").is_null())
        r.residual_leading_exponent = exponent_from_json(j.at("residual_leading_exponent"));
    r.classified = j.at("classified").get<bool>();
    r.support = support_from_json(j.at("support"));
    r.euler_support = support_from_json(j.at("euler_support"));
    for (const auto& v : j.at("hull_vertices"))
        r.hull_vertices.push_back({v.at(0).get<int>(), parse_rational(v.at(1).get<std::string>())});
    r.positive_slopes = rationals_from_json(j.at("positive_slopes"));
    r.gevrey_candidates = rationals_from_json(j.at("gevrey_candidates"));
    for (const auto& g : j.at("growth")) r.growth.push_back({g.at("s").get<std::int64_t>(), g.at("log_magnitude").get<double>()});
    r.interpretation = j.at("interpretation").get<std::string>();
    r.source = j.at("source").get<std::string>();
    return r;
}

// Corpus cases share the report vocabulary so external files can add cases.

inline nlohmann::json to_json(const CorpusCase& c) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["case_id"] = c.id;
    j["family"] = c.family;
    j["equation"] = c.equation;
    j["parameters"] = to_json(c.parameters);
    j["substitution"] = c.substitution;
    j["ramification"] = c.seed.ramification;
    j["branch"] = c.seed.branch;
    j["seed"] = to_json(detail::entries(c.seed));
    j["support"] = to_json(c.expected_support);
    j["positive_slopes"] = to_json(c.expected_slopes);
    j["gevrey_candidates"] = to_json(c.expected_candidates);
    j["source"] = c.source;
    return j;
}

inline CorpusCase case_from_json(const nlohmann::json& j) {
    CorpusCase c;
    c.id = j.at("case_id").get<std::string>();
    c.family = j.value("family", std::string());
    c.equation = j.at("equation").get<std::string>();
    if (j.contains("parameters") && !j.at("parameters").is_null()) c.parameters = parameters_from_json(j.at("parameters"));
    c.substitution = j.value("substitution", std::int64_t{1});
    c.seed.ramification = j.value("ramification", std::int64_t{1});
    c.seed.branch = j.value("branch", 0);
    for (const auto& e : entries_from_json(j.at("seed"))) c.seed.prescribed.emplace(e.exponent, e.value);
    c.expected_support = support_from_json(j.at("support"));
    c.expected_slopes = rationals_from_json(j.at("positive_slopes"));
    c.expected_candidates = rationals_from_json(j.at("gevrey_candidates"));
    c.source = j.value("source", std::string());
    return c;
}

inline nlohmann::json corpus_to_json(const std::vector<CorpusCase>& cases) {
    auto out = nlohmann::json::array();
    for (const auto& c : cases) out.push_back(to_json(c));
    return out;
}

inline std::vector<CorpusCase> corpus_from_json(const nlohmann::json& j) {
    std::vector<CorpusCase> out;
    for (const auto& c : j) out.push_back(case_from_json(c));
    return out;
}

} // namespace gevrey
