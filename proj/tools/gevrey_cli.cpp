#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gevrey/gevrey.hpp"

using namespace gevrey;

namespace {

enum ExitCode { kOk = 0, kParse = 1, kResonance = 2, kDegenerate = 3, kMismatch = 4 };

struct InputOptions {
    std::string corpus_id;
    std::string cases_file;
    std::string equation;
    std::string preset;
    std::vector<std::string> params;
    std::string seed;
    std::int64_t ramification = 0;
    std::int64_t substitute = 1;
    int branch = 0;
    std::size_t n = 12;
};

struct OutputOptions {
    std::string out;
    std::string svg;
    bool ascii = false;
    bool json = false;
};

struct Problem {
    DiffSum equation;
    std::optional<SeedExpansion> seed;
    ReportInput input;
};

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::vector<CorpusCase> load_cases(const std::string& file) {
    if (file.empty()) return corpus();
    return corpus_from_json(nlohmann::json::parse(read_text(file)));
}

ParameterSet preset_named(const std::string& name) {
    if (name == "P5-A") return preset_p5a();
    if (name == "P5-B") return preset_p5b();
    if (name == "P5-C") return preset_p5c();
    if (name == "P3-A") return preset_p3a();
    throw std::invalid_argument("unknown preset '" + name + "' (P5-A, P5-B, P5-C, P3-A)");
}

// "EXP:COEFF,EXP:COEFF,..." with exponents in the working variable.
SeedExpansion parse_seed(const std::string& spec, const Bindings& bindings, std::int64_t ramification, int branch) {
    SeedExpansion seed;
    seed.branch = branch;
    mpz_class den = 1;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw ParseError("seed term '" + item + "' is not EXP:COEFF", 0);
        Rational e;
        try {
            e = parse_rational(item.substr(0, colon));
        } catch (const std::exception&) {
            throw ParseError("bad seed exponent '" + item.substr(0, colon) + "'", 0);
        }
        den = lcm(den, mpz_class(e.get_den()));
        seed.prescribed.emplace(exponent_from_rational(e), parse_constant(item.substr(colon + 1), bindings));
    }
    if (seed.prescribed.empty()) throw ParseError("empty seed", 0);
    seed.ramification = ramification > 0 ? ramification : den.get_si();
    return seed;
}

Problem build_problem(const InputOptions& o) {
    Problem p;
    std::optional<CorpusCase> c;
    if (!o.corpus_id.empty()) c = find_case(load_cases(o.cases_file), o.corpus_id);

    ParameterSet params = c ? c->parameters : (o.preset.empty() ? ParameterSet{} : preset_named(o.preset));
    if (!o.preset.empty()) params = preset_named(o.preset);
    for (const auto& kv : o.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParseError("--param expects name=value, got '" + kv + "'", 0);
        const std::string name = kv.substr(0, eq);
        const GaussianRational v = parse_constant(kv.substr(eq + 1));
        if (name == "alpha" || name == "a") params.alpha = v;
        else if (name == "beta" || name == "b") params.beta = v;
        else if (name == "gamma" || name == "g") params.gamma = v;
        else if (name == "delta" || name == "d") params.delta = v;
        else throw std::invalid_argument("unknown parameter '" + name + "'");
    }
    const bool have_params = c || !o.preset.empty() || !o.params.empty();
    const Bindings b = have_params ? bindings(params) : Bindings{};

    std::string text;
    std::int64_t m = o.substitute;
    if (!o.equation.empty()) {
        if (o.equation == "P5") text = kPainleveV;
        else if (o.equation == "P3") text = kPainleveIII;
        else text = std::ifstream(o.equation).good() ? read_text(o.equation) : o.equation;
    } else if (c) {
        text = c->equation;
        if (m == 1) m = c->substitution;
    } else {
        throw std::invalid_argument("give --corpus <id> or --equation <file|string>");
    }
    p.equation = change_variable(parse_diffsum(text, b), m).sum;

    if (!o.seed.empty()) p.seed = parse_seed(o.seed, b, o.ramification, o.branch);
    else if (c) p.seed = c->seed;

    p.input.substitution = m;
    if (have_params) p.input.parameters = params;
    if (c && o.equation.empty() && o.seed.empty()) {
        p.input.case_id = c->id;
        p.input.source = c->source;
    } else {
        p.input.source = c ? "derived from corpus case " + c->id : "user input";
    }
    return p;
}

const SeedExpansion& require_seed(const Problem& p) {
    if (!p.seed) throw std::invalid_argument("a seed is required (--seed EXP:COEFF,...)");
    return *p.seed;
}

void emit_json(const nlohmann::json& j, const OutputOptions& out, bool to_stdout) {
    if (!out.out.empty()) write_text(out.out, j.dump(2) + "\n");
    if (to_stdout) std::cout << j.dump(2) << '\n';
}

void print_table(const ClassificationReport& r) {
    const std::string var = r.substitution > 1 ? "z (t = z^(1/" + std::to_string(r.substitution) + "))" : "z";
    std::cout << "equation (" << r.variable << "): " << r.equation << " = 0\n";
    std::cout << "coefficients in " << var << ":\n";
    std::cout << std::left << std::setw(12) << "exponent" << std::setw(28) << "coefficient" << "characteristic\n";
    for (std::size_t i = 0; i < r.coefficients.size(); ++i) {
        std::cout << std::setw(12) << r.coefficients[i].exponent.to_string() << std::setw(28)
                  << r.coefficients[i].value.to_string();
        if (i > 0) std::cout << r.characteristic_values[i - 1].value.to_string();
        else std::cout << "(seed)";
        std::cout << '\n';
    }
    std::cout << "residual leading exponent ("
              << r.variable << "): " << (r.residual_leading_exponent ? r.residual_leading_exponent->to_string() : "none (exact)")
              << '\n';
}

void print_summary(const ClassificationReport& r) {
    std::cout << "support (" << r.variable << "): " << detail::format_support(r.support) << '\n'
              << "euler support: " << detail::format_support(r.euler_support) << '\n'
              << "positive slopes: " << detail::format_rationals(r.positive_slopes) << '\n'
              << "gevrey candidates: " << detail::format_rationals(r.gevrey_candidates) << '\n'
              << r.interpretation << '\n';
}

int cmd_solve(const InputOptions& in, const OutputOptions& out) {
    if (in.n == 0) throw std::invalid_argument("-N must be at least 1");
    const Problem p = build_problem(in);
    const ExtendedSolution sol = extend(p.equation, require_seed(p), in.n);
    const ClassificationReport r = solve_report(p.equation, sol, p.input);
    if (!out.json) print_table(r);
    emit_json(to_json(r), out, out.json);
    return kOk;
}

int cmd_classify(const InputOptions& in, const OutputOptions& out) {
    const Problem p = build_problem(in);
    const Classification cl = classify(p.equation, require_seed(p), in.n);
    const ClassificationReport r = classification_report(p.equation, cl, p.input);
    if (!out.svg.empty()) write_text(out.svg, render_svg(cl.polygon, r.case_id.value_or("Newton polygon")));
    const bool json_stdout = out.json || !out.ascii;
    emit_json(to_json(r), out, json_stdout);
    if (out.ascii) {
        std::ostream& os = json_stdout ? std::cerr : std::cout;
        if (!json_stdout) print_summary(r);
        os << render_ascii(cl.polygon);
    }
    return kOk;
}

int cmd_variation(const InputOptions& in) {
    const Problem p = build_problem(in);
    std::cout << "F = " << to_string(p.equation) << '\n';
    std::cout << "first variation (d^l/d" << p.equation.variable() << "^l):\n"
              << to_string(first_variation(p.equation));
    if (p.seed) {
        const ExtendedSolution sol = extend(p.equation, *p.seed, in.n);
        const char v = p.equation.variable();
        std::cout << "on the series, weighted basis:\n" << variation_on_series(p.equation, sol.series).to_string(v);
        std::cout << "on the series, euler basis (L0):\n" << build_L0(p.equation, sol.series).to_string(v);
    }
    return kOk;
}

std::vector<SupportPoint> parse_support(const std::string& spec) {
    std::vector<SupportPoint> pts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw ParseError("support point '" + item + "' is not K:J", 0);
        try {
            pts.push_back({std::stoi(item.substr(0, colon)), exponent_from_rational(parse_rational(item.substr(colon + 1)))});
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("bad support point '" + item + "'", 0);
        }
    }
    return pts;
}

int cmd_polygon(const std::string& spec, const OutputOptions& out) {
    const NewtonPolygon p = polygon(parse_support(spec));
    const auto candidates = gevrey_candidates(p);
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["support"] = to_json(p.support);
    auto hull = nlohmann::json::array();
    for (const auto& v : p.vertices) hull.push_back({v.q1, v.q2.get_str()});
    j["hull_vertices"] = hull;
    j["positive_slopes"] = to_json(p.positive_slopes);
    j["gevrey_candidates"] = to_json(candidates);
    j["interpretation"] = gevrey_interpretation(candidates);
    if (!out.svg.empty()) write_text(out.svg, render_svg(p));
    const bool json_stdout = out.json || !out.ascii;
    emit_json(j, out, json_stdout);
    if (out.ascii) (json_stdout ? std::cerr : std::cout) << render_ascii(p);
    return kOk;
}

int cmd_corpus_check(const std::string& filter, const std::string& cases_file, const std::string& write_cases,
                     std::size_t n) {
    std::vector<CorpusCase> cases = load_cases(cases_file);
    if (!write_cases.empty()) {
        write_text(write_cases, corpus_to_json(cases).dump(2) + "\n");
        std::cout << "wrote " << cases.size() << " cases to " << write_cases << '\n';
        return kOk;
    }
    std::erase_if(cases, [&](const CorpusCase& c) { return c.id.find(filter) == std::string::npos; });
    if (cases.empty()) {
        std::cerr << "warning: no corpus case matches '" << filter << "'\n";
        std::cout << "0 cases checked\n";
        return kOk;
    }
    std::vector<std::string> failed;
    for (const auto& r : check_corpus(cases, n)) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << '\n';
        for (const auto& why : r.problems) std::cout << "     " << why << '\n';
        if (!r.passed) failed.push_back(r.id);
    }
    if (failed.empty()) {
        std::cout << "all cases pass (" << cases.size() << ")\n";
        return kOk;
    }
    std::cout << "mismatch in " << failed.size() << " case(s): "
              << std::accumulate(std::next(failed.begin()), failed.end(), failed.front(),
                                 [](std::string a, const std::string& b) { return a + " " + b; })
              << '\n';
    return kMismatch;
}

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("--corpus", in.corpus_id, "Corpus case id (see corpus-check)");
    cmd->add_option("--cases", in.cases_file, "Corpus JSON file replacing the built-in cases");
    cmd->add_option("--equation", in.equation, "Differential sum F(z, w, w', ...) = 0, as a file, a string, or P5 / P3");
    cmd->add_option("--preset", in.preset, "Parameter preset: P5-A, P5-B, P5-C, P3-A");
    cmd->add_option("--param", in.params, "Parameter binding name=value (alpha, beta, gamma, delta)");
    cmd->add_option("--seed", in.seed, "Seed terms EXP:COEFF,... in the working variable");
    cmd->add_option("--ramification", in.ramification, "Exponent grid 1/r of the seed (default: from the seed)");
    cmd->add_option("--substitute", in.substitute, "Solve in t with z = t^m")->check(CLI::PositiveNumber);
    cmd->add_option("--branch", in.branch, "Branch label recorded in the report");
    cmd->add_option("-N", in.n, "Number of coefficients to derive beyond the seed");
}

void add_output_options(CLI::App* cmd, OutputOptions& out, bool polygon) {
    cmd->add_option("--out", out.out, "Write the JSON report to this file");
    cmd->add_flag("--json", out.json, "Print JSON to stdout");
    if (polygon) {
        cmd->add_option("--svg", out.svg, "Write the Newton polygon as SVG");
        cmd->add_flag("--ascii", out.ascii, "Print the Newton polygon as ASCII");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Formal series solutions of algebraic ODEs and Gevrey order candidates from Newton polygons"};
    app.require_subcommand(1);

    InputOptions in;
    OutputOptions out;
    std::string filter, support_spec, write_cases;

    auto* solve = app.add_subcommand("solve", "Extend a seed to a formal series and print the coefficients");
    add_input_options(solve, in);
    add_output_options(solve, out, false);

    auto* cls = app.add_subcommand("classify", "Extend, linearize and report the Newton polygon and Gevrey candidates");
    add_input_options(cls, in);
    add_output_options(cls, out, true);

    auto* check = app.add_subcommand("corpus-check", "Run every corpus case against its recorded expectations");
    check->add_option("--filter", filter, "Only cases whose id contains this text");
    check->add_option("--cases", in.cases_file, "Corpus JSON file replacing the built-in cases");
    check->add_option("--write-cases", write_cases, "Write the corpus as JSON and exit");
    check->add_option("-N", in.n, "Coefficients derived per case");

    auto* var = app.add_subcommand("variation", "Print the first variation of an equation");
    add_input_options(var, in);

    auto* poly = app.add_subcommand("polygon", "Newton polygon and Gevrey candidates of a support list");
    poly->add_option("--support", support_spec, "Points K:J,... (order, minus leading exponent)")->required();
    add_output_options(poly, out, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    try {
        if (*solve) return cmd_solve(in, out);
        if (*cls) return cmd_classify(in, out);
        if (*check) return cmd_corpus_check(filter, in.cases_file, write_cases, in.n);
        if (*var) return cmd_variation(in);
        if (*poly) return cmd_polygon(support_spec, out);
    } catch (const ParseError& e) {
        std::cerr << "parse error at position " << e.position() << ": " << e.what() << '\n';
        return kParse;
    } catch (const SeedInconsistent& e) {
        std::cerr << "seed inconsistent: " << e.what() << '\n';
        return kResonance;
    } catch (const ResonanceError& e) {
        std::cerr << "resonance: " << e.what() << '\n';
        return kResonance;
    } catch (const UncertifiedLeading& e) {
        std::cerr << "uncertified: " << e.what() << '\n';
        return kResonance;
    } catch (const DegenerateLeadingCoefficient& e) {
        std::cerr << "degenerate leading coefficient: " << e.what() << '\n';
        return kDegenerate;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "bad JSON: " << e.what() << '\n';
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParse;
    }
    return kOk;
}
