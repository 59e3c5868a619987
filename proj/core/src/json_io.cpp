#include "domcone/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace domcone {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::malformed_input, what); }

template <class F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        malformed(std::string(what) + ": " + e.what());
    }
}

const json& field(const json& j, const char* key, const char* where) {
    if (!j.is_object()) malformed(std::string(where) + ": expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) malformed(std::string(where) + ": missing field \"" + key + "\"");
    return *it;
}

std::size_t dim_field(const json& j, const char* where) {
    const json& n = field(j, "n", where);
    if (!n.is_number_integer() || n.get<long long>() < 0) malformed(std::string(where) + ": \"n\" must be an integer");
    return n.get<std::size_t>();
}

std::vector<double> row_major_entries(const json& j, const char* where) {
    const std::size_t n = dim_field(j, where);
    const json& rows = field(j, "entries", where);
    if (!rows.is_array() || rows.size() != n) malformed(std::string(where) + ": \"entries\" must have n rows");
    std::vector<double> out;
    out.reserve(n * n);
    for (const json& row : rows) {
        if (!row.is_array() || row.size() != n) malformed(std::string(where) + ": every row must have n entries");
        for (const json& v : row) out.push_back(number_from_json(v));
    }
    return out;
}

json matrix_json(std::size_t n, std::span<const double> a) {
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < n; ++j) row.push_back(number_to_json(a[i * n + j]));
        rows.push_back(std::move(row));
    }
    return json{{"n", n}, {"entries", std::move(rows)}};
}

json violations_json(const std::vector<Violation>& vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back(to_json(v));
    return out;
}

std::vector<Violation> violations_from(const json& j) {
    std::vector<Violation> out;
    for (const json& v : j) out.push_back(violation_from_json(v));
    return out;
}

json doubles_json(const std::vector<double>& xs) {
    json out = json::array();
    for (double x : xs) out.push_back(number_to_json(x));
    return out;
}

double parse_double(const std::string& s, const std::string& where) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        malformed(where + ": \"" + s + "\" is not a number");
    }
    if (used != s.size()) malformed(where + ": \"" + s + "\" is not a number");
    return v;
}

std::size_t parse_dim(const std::string& s, const std::string& where) {
    const double v = parse_double(s, where);
    if (v < 0 || v != std::floor(v)) malformed(where + ": n must be a nonnegative integer");
    return static_cast<std::size_t>(v);
}

struct Shorthand {
    std::string kind;
    std::map<std::string, std::string> args;

    const std::string& at(const std::string& key) const {
        auto it = args.find(key);
        if (it == args.end()) malformed("shorthand \"" + kind + "\" needs " + key + "=...");
        return it->second;
    }
};

Shorthand split_shorthand(const std::string& s) {
    Shorthand sh;
    const auto colon = s.find(':');
    sh.kind = s.substr(0, colon);
    if (colon == std::string::npos) return sh;
    std::stringstream rest(s.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) malformed("shorthand item \"" + item + "\" is not key=value");
        sh.args[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return sh;
}

} // namespace

json number_to_json(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double number_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    malformed("expected a number, got " + j.dump());
}

json to_json(const SymMatrix& x) { return matrix_json(x.dim(), x.data()); }
json to_json(const SquareMatrix& x) { return matrix_json(x.dim(), x.data()); }

SymMatrix sym_matrix_from_json(const json& j) {
    return guarded("matrix", [&] {
        const auto a = row_major_entries(j, "matrix");
        return SymMatrix(dim_field(j, "matrix"), a);
    });
}

SquareMatrix square_matrix_from_json(const json& j) {
    return guarded("matrix", [&] {
        const auto a = row_major_entries(j, "matrix");
        return SquareMatrix(dim_field(j, "matrix"), a);
    });
}

json to_json(const Exponent& p) {
    if (p.is_infinite()) return "inf";
    return p.value();
}

Exponent exponent_from_json(const json& j) {
    if (j.is_string()) return parse_exponent(j.get<std::string>());
    if (j.is_number()) return Exponent::finite(j.get<double>());
    malformed("exponent must be a number or \"inf\"");
}

Exponent parse_exponent(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "Inf") return Exponent::infinity();
    return Exponent::finite(parse_double(s, "exponent"));
}

json to_json(const ConvexBody& body) {
    json gens = json::array();
    for (const auto& g : body.generators()) gens.push_back(to_json(g));
    return json{{"n", body.dim()}, {"generators", std::move(gens)}, {"rot_closed", body.rot_closed()}};
}

ConvexBody body_from_json(const json& j) {
    return guarded("body", [&] {
        const std::size_t n = dim_field(j, "body");
        const json& gens = field(j, "generators", "body");
        if (!gens.is_array()) malformed("body: \"generators\" must be an array");
        std::vector<SymMatrix> out;
        for (const json& g : gens) {
            out.push_back(sym_matrix_from_json(g));
            require_same_dim(n, out.back().dim(), "body generator");
        }
        const bool rot = j.value("rot_closed", true);
        return ConvexBody(std::move(out), rot);
    });
}

json to_json(const OperatorSpec& spec) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, op::DominativeP>) {
                return {{"type", "dominative"}, {"n", v.n}, {"p", to_json(v.p)}};
            } else if constexpr (std::is_same_v<T, op::Pucci>) {
                return {{"type", "pucci"}, {"n", v.n}, {"lam", v.lam}, {"Lam", v.Lam}};
            } else if constexpr (std::is_same_v<T, op::LinearTrace>) {
                return {{"type", "linear"}, {"A", to_json(v.A)}, {"m", v.m}};
            } else if constexpr (std::is_same_v<T, op::EnsembleSupport>) {
                return {{"type", "ensemble"}, {"body", to_json(v.body)}};
            } else if constexpr (std::is_same_v<T, op::ExampleEq>) {
                return {{"type", "example"}};
            } else if constexpr (std::is_same_v<T, op::Shifted>) {
                return {{"type", "shifted"}, {"inner", to_json(*v.inner)}, {"X0", to_json(v.X0)}};
            } else {
                return {{"type", "conjugated"}, {"inner", to_json(*v.inner)}, {"B", to_json(v.B.matrix())}};
            }
        },
        spec.variant());
}

OperatorSpec operator_from_json(const json& j) {
    return guarded("operator", [&]() -> OperatorSpec {
        const json& type = field(j, "type", "operator");
        if (!type.is_string()) malformed("operator: \"type\" must be a string");
        const std::string t = type.get<std::string>();
        if (t == "dominative") return OperatorSpec::dominative(dim_field(j, "operator"), exponent_from_json(field(j, "p", "operator")));
        if (t == "pucci")
            return OperatorSpec::pucci(dim_field(j, "operator"), number_from_json(field(j, "lam", "operator")),
                                       number_from_json(field(j, "Lam", "operator")));
        if (t == "linear")
            return OperatorSpec::linear(sym_matrix_from_json(field(j, "A", "operator")),
                                        number_from_json(field(j, "m", "operator")));
        if (t == "ensemble") return OperatorSpec::ensemble(body_from_json(field(j, "body", "operator")));
        if (t == "example") return OperatorSpec::example();
        if (t == "shifted")
            return OperatorSpec::shifted(operator_from_json(field(j, "inner", "operator")),
                                         sym_matrix_from_json(field(j, "X0", "operator")));
        if (t == "conjugated")
            return OperatorSpec::conjugated(operator_from_json(field(j, "inner", "operator")),
                                            InvertibleMap(square_matrix_from_json(field(j, "B", "operator"))));
        malformed("operator: unknown type \"" + t + "\"");
    });
}

OperatorSpec parse_operator_shorthand(const std::string& s) {
    const Shorthand sh = split_shorthand(s);
    if (sh.kind == "dominative") return OperatorSpec::dominative(parse_dim(sh.at("n"), s), parse_exponent(sh.at("p")));
    if (sh.kind == "pucci")
        return OperatorSpec::pucci(parse_dim(sh.at("n"), s), parse_double(sh.at("lam"), s), parse_double(sh.at("Lam"), s));
    if (sh.kind == "example") return OperatorSpec::example();
    malformed("unknown operator shorthand \"" + s + "\"");
}

ConvexBody parse_body_shorthand(const std::string& s) {
    const Shorthand sh = split_shorthand(s);
    if (sh.kind == "dominative") return dominative_body(parse_dim(sh.at("n"), s), parse_exponent(sh.at("p")));
    if (sh.kind == "pucci") return pucci_body(parse_dim(sh.at("n"), s), parse_double(sh.at("lam"), s), parse_double(sh.at("Lam"), s));
    malformed("unknown body shorthand \"" + s + "\"");
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_failure, "cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        malformed(path.string() + ": " + e.what());
    }
}

json to_json(const Violation& v) {
    return {{"sample", v.sample}, {"what", v.what}, {"value", number_to_json(v.value)}};
}

Violation violation_from_json(const json& j) {
    return guarded("violation", [&] {
        return Violation{j.at("sample").get<std::size_t>(), j.at("what").get<std::string>(),
                         number_from_json(j.at("value"))};
    });
}

json to_json(const PropertyReport& r) {
    return {{"name", r.name},          {"samples", r.samples},
            {"worst", number_to_json(r.worst)}, {"passed", r.passed()},
            {"violations", violations_json(r.violations)}, {"note", r.note}};
}

PropertyReport property_report_from_json(const json& j) {
    return guarded("property report", [&] {
        PropertyReport r;
        r.name = j.at("name").get<std::string>();
        r.samples = j.at("samples").get<std::size_t>();
        r.worst = number_from_json(j.at("worst"));
        r.violations = violations_from(j.at("violations"));
        r.note = j.at("note").get<std::string>();
        return r;
    });
}

json to_json(const ApertureResult& r) {
    return {{"alpha", r.alpha},
            {"p", to_json(r.p)},
            {"argmin_index", r.argmin_index},
            {"c", r.c},
            {"alpha_bisection", r.alpha_bisection},
            {"bisection_iterations", r.bisection_iterations},
            {"lower_bound_only", r.lower_bound_only}};
}

ApertureResult aperture_result_from_json(const json& j) {
    return guarded("aperture", [&] {
        ApertureResult r;
        r.alpha = j.at("alpha").get<double>();
        r.p = exponent_from_json(j.at("p"));
        r.argmin_index = j.at("argmin_index").get<std::size_t>();
        r.c = j.at("c").get<double>();
        r.alpha_bisection = j.at("alpha_bisection").get<double>();
        r.bisection_iterations = j.at("bisection_iterations").get<int>();
        r.lower_bound_only = j.at("lower_bound_only").get<bool>();
        return r;
    });
}

json to_json(const MinimalBoundReport& r) {
    return {{"aperture", to_json(r.aperture)},
            {"samples", r.samples},
            {"worst_margin", number_to_json(r.worst_margin)},
            {"tightest_index", r.tightest_index},
            {"tightest_x", doubles_json(r.tightest_x)},
            {"sharpness_probes", r.sharpness_probes},
            {"equality_hits", r.equality_hits},
            {"best_equality_gap", number_to_json(r.best_equality_gap)},
            {"passed", r.passed()},
            {"violations", violations_json(r.violations)}};
}

json to_json(const PermutationDecomposition& d) {
    return {{"weights", doubles_json(d.weights)}, {"permutations", d.permutations}};
}

json to_json(const AcdoResult& r) {
    return {{"value", number_to_json(r.value)},
            {"bracket", json::array({number_to_json(r.t_member), number_to_json(r.t_outside)})},
            {"iterations", r.iterations}};
}

json to_json(const NestingReport& r) {
    return {{"n", r.n},
            {"p", to_json(r.p)},
            {"p_prime", to_json(r.p_prime)},
            {"samples", r.samples},
            {"members_of_theta_p", r.members_of_theta_p},
            {"boundary_probes", r.boundary_probes},
            {"passed", r.passed()},
            {"violations", violations_json(r.violations)}};
}

json to_json(const InclusionReport& r) {
    return {{"n", r.n},
            {"p", to_json(r.p)},
            {"radii", doubles_json(r.radii)},
            {"worst_fp", doubles_json(r.worst_fp)},
            {"trend_slope", number_to_json(r.trend_slope)},
            {"beta", number_to_json(r.beta)},
            {"verdict", to_string(r.verdict)},
            {"q_upper", number_to_json(r.q_upper)},
            {"q_statement", r.q_statement},
            {"zero_floor", number_to_json(r.zero_floor)},
            {"count", r.count}};
}

InclusionReport inclusion_report_from_json(const json& j) {
    return guarded("inclusion report", [&] {
        InclusionReport r;
        r.n = j.at("n").get<std::size_t>();
        r.p = exponent_from_json(j.at("p"));
        for (const json& v : j.at("radii")) r.radii.push_back(number_from_json(v));
        for (const json& v : j.at("worst_fp")) r.worst_fp.push_back(number_from_json(v));
        r.trend_slope = number_from_json(j.at("trend_slope"));
        r.beta = number_from_json(j.at("beta"));
        const std::string verdict = j.at("verdict").get<std::string>();
        if (verdict == "consistent") r.verdict = InclusionVerdict::consistent;
        else if (verdict == "violated") r.verdict = InclusionVerdict::violated;
        else if (verdict == "inconclusive") r.verdict = InclusionVerdict::inconclusive;
        else malformed("inclusion report: unknown verdict \"" + verdict + "\"");
        r.q_upper = number_from_json(j.at("q_upper"));
        r.q_statement = j.at("q_statement").get<std::string>();
        r.zero_floor = number_from_json(j.at("zero_floor"));
        r.count = j.at("count").get<std::size_t>();
        return r;
    });
}

json to_json(const PairingEstimate& e) {
    return {{"value", number_to_json(e.value)}, {"probes", e.probes}, {"lower_bound", e.lower_bound}};
}

json to_json(const AnnihilationReport& r) {
    return {{"aperture", to_json(r.aperture)},
            {"fs_alpha", r.fs_alpha},
            {"samples", r.samples},
            {"g_lambda_alpha", number_to_json(r.g_lambda_alpha)},
            {"worst_scaled_residual", number_to_json(r.worst_scaled_residual)},
            {"worst_scaling_defect", number_to_json(r.worst_scaling_defect)},
            {"passed", r.passed()},
            {"violations", violations_json(r.violations)}};
}

json to_json(const SobolevResult& r) {
    return {{"value", number_to_json(r.value)},
            {"numeric", number_to_json(r.numeric)},
            {"relative_gap", number_to_json(r.relative_gap)},
            {"exponent", r.exponent},
            {"log_branch", r.log_branch},
            {"threshold_q", number_to_json(r.threshold_q)},
            {"diverges", r.diverges}};
}

SobolevResult sobolev_result_from_json(const json& j) {
    return guarded("sobolev result", [&] {
        SobolevResult r;
        r.value = number_from_json(j.at("value"));
        r.numeric = number_from_json(j.at("numeric"));
        r.relative_gap = number_from_json(j.at("relative_gap"));
        r.exponent = j.at("exponent").get<double>();
        r.log_branch = j.at("log_branch").get<bool>();
        r.threshold_q = number_from_json(j.at("threshold_q"));
        r.diverges = j.at("diverges").get<bool>();
        return r;
    });
}

json to_json(const SobolevDichotomy& d) {
    return {{"value_eps_1e-2", d.value_1e2}, {"value_eps_1e-4", d.value_1e4}, {"value_eps_1e-6", d.value_1e6},
            {"growth", d.growth},           {"log_rate", d.log_rate},       {"diverges", d.diverges}};
}

json to_json(const ExampleRadialReport& r) {
    json pts = json::array();
    for (const auto& p : r.points)
        pts.push_back({{"r", p.r}, {"lambda1", p.lambda1}, {"lambda2", p.lambda2}, {"residual", number_to_json(p.residual)}});
    return {{"c", r.c},
            {"points", std::move(pts)},
            {"worst_residual", number_to_json(r.worst_residual)},
            {"passed", r.passed()},
            {"violations", violations_json(r.violations)}};
}

} // namespace domcone
