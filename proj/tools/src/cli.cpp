#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <domcone/suite.hpp>

namespace domcone::cli {

namespace {

constexpr const char* kFooter = R"(Operator shorthands (--op):
  dominative:n=3,p=4        normalized dominative p-Laplacian, p may be inf
  pucci:n=2,lam=1,Lam=3     maximal Pucci operator
  example                   lambda1 + lambda2 - 2 sqrt(1 + lambda2) + 2 on S(2)
Body shorthands (--body):
  dominative:n=3,p=4, pucci:n=2,lam=1,Lam=3
--op, --body, --X and --B also accept a JSON file path or inline JSON.
DOMCONE_THREADS caps worker threads.
Exit status: 0 ok, 2 property violated (report written), 1 input or machinery error.)";

const std::vector<std::pair<Command, const char*>> kCommands{
    {Command::eval, "eval"},
    {Command::aperture, "aperture"},
    {Command::acdo, "acdo"},
    {Command::check_inclusion, "check-inclusion"},
    {Command::fundsol, "fundsol"},
    {Command::sobolev, "sobolev"},
    {Command::example, "example"},
    {Command::verify, "verify"},
    {Command::suite, "suite"},
    {Command::report, "report"},
};

std::string csv_num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", v);
}

/// File path, inline JSON, or nullopt (caller tries a shorthand).
std::optional<json> load_json_arg(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
        try {
            return json::parse(arg);
        } catch (const json::exception& e) {
            throw Error(ErrorCode::malformed_input, std::string("inline JSON: ") + e.what());
        }
    }
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return read_json_file(arg);
    return std::nullopt;
}

const std::string& need(const std::string& v, const char* flag) {
    if (v.empty()) throw Error(ErrorCode::invalid_argument, std::string("missing required option ") + flag);
    return v;
}

OperatorSpec load_operator(const RunConfig& cfg) {
    const std::string& arg = need(cfg.op, "--op");
    if (auto j = load_json_arg(arg)) return operator_from_json(*j);
    return parse_operator_shorthand(arg);
}

ConvexBody load_body(const RunConfig& cfg) {
    const std::string& arg = need(cfg.body, "--body");
    if (auto j = load_json_arg(arg)) return body_from_json(*j);
    return parse_body_shorthand(arg);
}

json load_matrix_json(const std::string& arg, const char* flag) {
    auto j = load_json_arg(need(arg, flag));
    if (!j) throw Error(ErrorCode::io_failure, std::string(flag) + ": cannot read " + arg);
    return *j;
}

InvertibleMap load_map(const RunConfig& cfg, std::size_t n) {
    if (cfg.B.empty()) return InvertibleMap::identity(n);
    InvertibleMap b(square_matrix_from_json(load_matrix_json(cfg.B, "--B")));
    require_same_dim(n, b.dim(), "--B");
    return b;
}

Exponent need_p(const RunConfig& cfg) { return parse_exponent(need(cfg.p, "--p")); }

std::size_t need_n(const RunConfig& cfg) {
    if (!cfg.n) throw Error(ErrorCode::invalid_argument, "missing required option --n");
    return *cfg.n;
}

AcdoOptions acdo_options(const RunConfig& cfg) {
    AcdoOptions o;
    o.tol = cfg.tol.root;
    return o;
}

struct Produced {
    json report;
    bool violated = false;
    std::optional<std::string> csv;
};

Produced cmd_eval(const RunConfig& cfg) {
    const OperatorSpec op = load_operator(cfg);
    const SymMatrix x = sym_matrix_from_json(load_matrix_json(cfg.X, "--X"));
    require_same_dim(op.dim(), x.dim(), "--X");
    const EvalResult r = evaluate(op, x);
    const EigenDecomposition e = eigh(x, cfg.tol.eigen);
    Produced out;
    out.report = {{"operator", op.describe()},
                  {"value", r.minus_infinity ? json("-inf") : number_to_json(r.value)},
                  {"minus_infinity", r.minus_infinity},
                  {"member", r.le(0.0)},
                  {"eigenvalues", e.spectrum.values},
                  {"is_psd", e.spectrum.min() >= -cfg.tol.loewner},
                  {"inf_norm", std::max(-e.spectrum.min(), e.spectrum.max())}};
    if (r.boundary_distance_hint) out.report["boundary_distance_hint"] = *r.boundary_distance_hint;
    return out;
}

Produced cmd_aperture(const RunConfig& cfg) {
    const ConvexBody body = load_body(cfg);
    Produced out;
    out.report = to_json(body_cone_aperture(body));
    if (cfg.count && *cfg.count > 0) {
        const MinimalBoundReport m = minimal_bound_check(body, *cfg.count, cfg.seed);
        out.report["minimal_bound"] = to_json(m);
        out.violated = !m.passed();
    }
    return out;
}

Produced cmd_acdo(const RunConfig& cfg) {
    const OperatorSpec op = load_operator(cfg);
    const SymMatrix x = sym_matrix_from_json(load_matrix_json(cfg.X, "--X"));
    const EllipticSetOracle oracle = oracle_from_operator(op);
    Produced out;
    out.report = to_json(acdo_eval(oracle, x, acdo_options(cfg)));
    out.report["operator"] = op.describe();
    return out;
}

std::vector<double> radii_or_default(const RunConfig& cfg) {
    return cfg.radii.empty() ? std::vector<double>{1e2, 1e4, 1e6} : cfg.radii;
}

Produced cmd_check_inclusion(const RunConfig& cfg, bool with_pairing) {
    const OperatorSpec op = load_operator(cfg);
    const EllipticSetOracle oracle = oracle_from_operator(op);
    const InvertibleMap b = load_map(cfg, oracle.n);
    const Exponent p = need_p(cfg);
    const std::size_t count = cfg.count.value_or(200);
    const InclusionReport rep = check_inclusion(oracle, b, p, radii_or_default(cfg), count, cfg.seed, acdo_options(cfg));
    Produced out;
    out.violated = rep.verdict == InclusionVerdict::violated;
    std::optional<PropertyReport> rays;
    if (cfg.convex) {
        const auto samples = boundary_sample(conjugate_oracle(oracle, b), rep.radii.back(), count, cfg.seed, acdo_options(cfg));
        rays = recession_ray_check(conjugate_oracle(oracle, b), samples, 1e6, 1e-6, acdo_options(cfg));
        out.violated = out.violated || !rays->passed();
    }
    if (!with_pairing) {
        out.report = to_json(rep);
        if (rays) out.report["recession_rays"] = to_json(*rays);
        std::string csv = "radius,worst_fp\n";
        for (std::size_t i = 0; i < rep.radii.size(); ++i)
            csv += csv_num(rep.radii[i]) + "," + csv_num(rep.worst_fp[i]) + "\n";
        out.csv = std::move(csv);
        return out;
    }
    const PairingEstimate pair = sup_pairing_estimate(oracle, b, p, count, cfg.seed, 1e6, acdo_options(cfg));
    out.report = {{"operator", op.describe()},
                  {"inclusion", to_json(rep)},
                  {"q_interval",
                   {{"lower", 0.0},
                    {"upper", number_to_json(rep.q_upper)},
                    {"open", true},
                    {"holds_if_inclusion_holds", true},
                    {"sampled_verdict", to_string(rep.verdict)}}},
                  {"statement", rep.q_statement},
                  {"pairing_estimate", to_json(pair)}};
    if (rays) out.report["recession_rays"] = to_json(*rays);
    return out;
}

std::vector<double> parse_point(const std::vector<double>& at, std::size_t n) {
    if (at.size() != n) throw Error(ErrorCode::dimension_mismatch, "--at must have n coordinates");
    return at;
}

Produced cmd_fundsol(const RunConfig& cfg) {
    const std::size_t n = need_n(cfg);
    const FundamentalSolution fs(n, need_p(cfg));
    const std::vector<double> x = parse_point(cfg.at, n);
    const SymMatrix h = w_hessian(fs, x);
    json grad = json::array();
    for (double g : w_gradient(fs, x)) grad.push_back(number_to_json(g));
    Produced out;
    out.report = {{"n", n},
                  {"p", to_json(fs.p())},
                  {"alpha", fs.alpha()},
                  {"at", x},
                  {"value", number_to_json(w_value(fs, x))},
                  {"gradient", std::move(grad)},
                  {"hessian", to_json(h)},
                  {"eigs", eigh(h, cfg.tol.eigen).spectrum.values}};
    return out;
}

struct Sweep {
    double a, b, step;
};

Sweep parse_sweep(const std::string& s) {
    Sweep sw{};
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> sw.a >> c1 >> sw.b >> c2 >> sw.step) || c1 != ':' || c2 != ':' || !is.eof())
        throw Error(ErrorCode::invalid_argument, "--q-sweep must be a:b:step");
    if (!(sw.step > 0.0) || sw.b < sw.a) throw Error(ErrorCode::invalid_argument, "--q-sweep needs step > 0 and b >= a");
    return sw;
}

Produced cmd_sobolev(const RunConfig& cfg) {
    const std::size_t n = need_n(cfg);
    const Exponent p = need_p(cfg);
    const std::vector<double> eps = cfg.eps.empty() ? std::vector<double>{1e-2, 1e-4, 1e-6} : cfg.eps;
    Produced out;
    if (!cfg.q_sweep.empty()) {
        const Sweep sw = parse_sweep(cfg.q_sweep);
        const auto steps = static_cast<std::size_t>(std::floor((sw.b - sw.a) / sw.step + 1e-9));
        std::string csv = "q";
        for (double e : eps) csv += ",value_eps_" + fmt::format("{}", e);
        csv += "\n";
        json rows = json::array();
        for (std::size_t k = 0; k <= steps; ++k) {
            const double q = sw.a + static_cast<double>(k) * sw.step;
            csv += csv_num(q);
            json vals = json::array();
            for (double e : eps) {
                const double v = sobolev_integral(n, p, q, e).value;
                csv += "," + csv_num(v);
                vals.push_back(number_to_json(v));
            }
            csv += "\n";
            rows.push_back({{"q", q}, {"values", std::move(vals)}});
        }
        out.report = {{"n", n}, {"p", to_json(p)}, {"eps", eps}, {"threshold_q", sobolev_threshold(n, p)},
                      {"rows", std::move(rows)}};
        out.csv = std::move(csv);
        return out;
    }
    if (!cfg.q) throw Error(ErrorCode::invalid_argument, "missing required option --q (or --q-sweep)");
    if (eps.size() == 1) {
        out.report = to_json(sobolev_integral(n, p, *cfg.q, eps.front()));
        out.report["eps"] = eps.front();
    } else {
        json vals = json::array();
        for (double e : eps) {
            json r = to_json(sobolev_integral(n, p, *cfg.q, e));
            r["eps"] = e;
            vals.push_back(std::move(r));
        }
        out.report = {{"values", std::move(vals)}};
    }
    const SobolevDichotomy d = sobolev_dichotomy(n, p, *cfg.q);
    out.report["n"] = n;
    out.report["p"] = to_json(p);
    out.report["q"] = *cfg.q;
    out.report["threshold_q"] = number_to_json(sobolev_threshold(n, p));
    out.report["diverges"] = d.diverges;
    out.report["dichotomy"] = to_json(d);
    return out;
}

Produced cmd_example(const RunConfig& cfg) {
    std::vector<double> grid;
    for (int k = 1; k <= 19; ++k) grid.push_back(0.05 * k);
    const ExampleRadialReport r = example_radial_check(cfg.c.value_or(1.0), grid);
    Produced out;
    out.report = to_json(r);
    out.violated = !r.passed();
    std::string csv = "r,lambda1,lambda2,residual\n";
    for (const auto& pt : r.points)
        csv += csv_num(pt.r) + "," + csv_num(pt.lambda1) + "," + csv_num(pt.lambda2) + "," + csv_num(pt.residual) + "\n";
    out.csv = std::move(csv);
    return out;
}

Produced cmd_verify(const RunConfig& cfg) {
    const OperatorSpec op = load_operator(cfg);
    const ConvexBody body = support_body(op);
    const std::size_t n = body.dim();
    const Exponent p = cfg.p.empty() ? body_cone_aperture(body).p : parse_exponent(cfg.p);
    const FundamentalSolution fs(n, p);
    const AnnihilationReport ann = verify_annihilation(body, fs, cfg.count.value_or(500), cfg.seed, !cfg.no_enforce_aperture);
    const auto per_axis = static_cast<std::size_t>(std::max(3.0, std::floor(std::pow(4000.0, 1.0 / static_cast<double>(n)))));
    const auto grid = cube_grid(n, 1.0, per_axis, 1e-6);
    const PropertyReport visc = viscosity_grid_check(op, [&fs](std::span<const double> x) { return w_hessian(fs, x); },
                                                     grid, cfg.tol.property);
    Produced out;
    out.report = {{"operator", op.describe()},
                  {"fundamental_solution_p", to_json(p)},
                  {"enforce_aperture", !cfg.no_enforce_aperture},
                  {"annihilation", to_json(ann)},
                  {"viscosity_grid", to_json(visc)}};
    out.violated = !ann.passed() || !visc.passed();
    return out;
}

Produced cmd_suite(const RunConfig& cfg, bool& machinery_failed) {
    std::vector<int> ids = cfg.groups;
    if (cfg.all || ids.empty()) {
        ids.clear();
        for (const auto& g : suite_groups()) ids.push_back(g.id);
    }
    json groups = json::array();
    bool all_passed = true;
    std::string csv = "id,name,passed,error\n";
    for (int id : ids) {
        const CriterionResult r = run_criterion(id, cfg.seed);
        all_passed = all_passed && r.passed;
        machinery_failed = machinery_failed || r.error.has_value();
        groups.push_back(to_json(r));
        csv += std::to_string(r.id) + "," + r.name + "," + (r.passed ? "true" : "false") + "," +
               (r.error ? "\"" + *r.error + "\"" : "") + "\n";
    }
    Produced out;
    out.report = {{"passed", all_passed}, {"groups", std::move(groups)}};
    out.violated = !all_passed;
    out.csv = std::move(csv);
    return out;
}

json error_report(const RunConfig& cfg, const std::string& code, const std::string& message) {
    return {{"schema", kReportSchema},
            {"command", to_string(cfg.command)},
            {"config", config_to_json(cfg)},
            {"error", {{"code", code}, {"message", message}}}};
}

} // namespace

std::string to_string(Command c) {
    for (const auto& [cmd, name] : kCommands)
        if (cmd == c) return name;
    return "unknown";
}

json config_to_json(const RunConfig& cfg) {
    json j{{"command", to_string(cfg.command)},
           {"seed", cfg.seed},
           {"tolerances",
            {{"eigen", cfg.tol.eigen}, {"loewner", cfg.tol.loewner}, {"root", cfg.tol.root}, {"property", cfg.tol.property}}},
           {"format", cfg.format == Format::json ? "json" : "csv"},
           {"out", cfg.out}};
    json in = json::object();
    auto put_str = [&](const char* k, const std::string& v) {
        if (!v.empty()) in[k] = v;
    };
    put_str("op", cfg.op);
    put_str("body", cfg.body);
    put_str("X", cfg.X);
    put_str("B", cfg.B);
    put_str("p", cfg.p);
    put_str("q_sweep", cfg.q_sweep);
    if (cfg.q) in["q"] = *cfg.q;
    if (cfg.n) in["n"] = *cfg.n;
    if (!cfg.eps.empty()) in["eps"] = cfg.eps;
    if (!cfg.radii.empty()) in["radii"] = cfg.radii;
    if (cfg.count) in["count"] = *cfg.count;
    if (!cfg.at.empty()) in["at"] = cfg.at;
    if (cfg.c) in["c"] = *cfg.c;
    if (!cfg.groups.empty()) in["groups"] = cfg.groups;
    if (cfg.all) in["all"] = true;
    if (cfg.no_enforce_aperture) in["no_enforce_aperture"] = true;
    if (cfg.convex) in["convex"] = true;
    j["inputs"] = std::move(in);
    return j;
}

std::string emit_report(const json& report) { return report.dump(2) + "\n"; }

RunOutcome run(const RunConfig& cfg) {
    RunOutcome outcome;
    try {
        Produced p;
        bool machinery_failed = false;
        switch (cfg.command) {
        case Command::eval: p = cmd_eval(cfg); break;
        case Command::aperture: p = cmd_aperture(cfg); break;
        case Command::acdo: p = cmd_acdo(cfg); break;
        case Command::check_inclusion: p = cmd_check_inclusion(cfg, false); break;
        case Command::report: p = cmd_check_inclusion(cfg, true); break;
        case Command::fundsol: p = cmd_fundsol(cfg); break;
        case Command::sobolev: p = cmd_sobolev(cfg); break;
        case Command::example: p = cmd_example(cfg); break;
        case Command::verify: p = cmd_verify(cfg); break;
        case Command::suite: p = cmd_suite(cfg, machinery_failed); break;
        }
        outcome.exit_code = machinery_failed ? 1 : p.violated ? 2 : 0;
        if (cfg.format == Format::csv) {
            if (!p.csv) throw Error(ErrorCode::invalid_argument, "--format csv is not available for " + to_string(cfg.command));
            outcome.artifact = *p.csv;
        } else {
            json report{{"schema", kReportSchema}, {"command", to_string(cfg.command)}, {"config", config_to_json(cfg)}};
            if (!p.report.contains("violations")) report["violations"] = json::array();
            report.update(p.report);
            outcome.artifact = emit_report(report);
        }
    } catch (const Error& e) {
        outcome.exit_code = 1;
        outcome.artifact = emit_report(error_report(cfg, std::string(domcone::to_string(e.code())), e.what()));
    } catch (const std::exception& e) {
        outcome.exit_code = 1;
        outcome.artifact = emit_report(error_report(cfg, "internal", e.what()));
    }
    return outcome;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Numerical toolkit for dominative p-Laplace operators, body cone apertures and elliptic sets",
                 "domcone"};
    app.footer(kFooter);
    app.require_subcommand(1);

    std::string format = "json";
    app.add_option("--op", cfg.op, "Operator: JSON file, inline JSON or shorthand");
    app.add_option("--body", cfg.body, "Convex body: JSON file, inline JSON or shorthand");
    app.add_option("--X", cfg.X, "Symmetric matrix: JSON file or inline JSON");
    app.add_option("--B", cfg.B, "Invertible map: JSON file or inline JSON (default identity)");
    app.add_option("--p", cfg.p, "Exponent p >= 2 or inf");
    app.add_option("--q", cfg.q, "Integrability exponent q > 0");
    app.add_option("--n", cfg.n, "Dimension");
    app.add_option("--eps", cfg.eps, "Inner radius (or comma list)")->delimiter(',');
    app.add_option("--radii", cfg.radii, "Comma list of radii")->delimiter(',');
    app.add_option("--count", cfg.count, "Sample count");
    app.add_option("--at", cfg.at, "Point as a comma list")->delimiter(',');
    app.add_option("--q-sweep", cfg.q_sweep, "q sweep a:b:step (sobolev)");
    app.add_option("--c", cfg.c, "Radial family parameter c >= 1 (example)");
    app.add_option("--group", cfg.groups, "Suite group id (repeatable)");
    app.add_flag("--all", cfg.all, "Run every suite group");
    app.add_flag("--no-enforce-aperture", cfg.no_enforce_aperture,
                 "verify: report residuals instead of rejecting p != p(G)");
    app.add_flag("--convex", cfg.convex,
                 "check-inclusion/report: the set is convex; also test recession rays from the inside witness");
    app.add_option("--seed", cfg.seed, "RNG seed");
    app.add_option("--tol-eigen", cfg.tol.eigen, "Jacobi threshold relative to ||X||_F");
    app.add_option("--tol-loewner", cfg.tol.loewner, "Loewner-order fuzz");
    app.add_option("--tol-root", cfg.tol.root, "acdo bisection tolerance");
    app.add_option("--tol-property", cfg.tol.property, "Property-check tolerance");
    app.add_option("--out", cfg.out, "Write the report here instead of stdout");
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    static const char* kHelp[] = {
        "F(X) for --op at --X",
        "Body cone aperture of --body (with --count: minimality check)",
        "Bisection acdo of the sublevel set of --op at --X",
        "Sampled inclusion of the asymptotic cone of B^T Theta B in Theta_p",
        "Fundamental solution value, gradient, Hessian at --at",
        "Sobolev integral of |grad w|^q on the unit ball minus B_eps",
        "Radial solutions of the n = 2 example equation",
        "Fundamental-solution annihilation and grid supersolution check for --op",
        "Bundled property suite",
        "check-inclusion plus the q-interval statement and a pairing estimate",
    };
    std::vector<std::pair<Command, CLI::App*>> subs;
    for (std::size_t i = 0; i < kCommands.size(); ++i) {
        CLI::App* s = app.add_subcommand(kCommands[i].second, kHelp[i]);
        s->fallthrough();
        subs.emplace_back(kCommands[i].first, s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }
    for (const auto& [cmd, s] : subs)
        if (s->parsed()) cfg.command = cmd;
    cfg.format = format == "csv" ? Format::csv : Format::json;

    const RunOutcome outcome = run(cfg);
    if (outcome.exit_code == 1) {
        try {
            const json j = json::parse(outcome.artifact);
            if (j.contains("error")) err << "error [" << j["error"]["code"].get<std::string>() << "]: "
                                         << j["error"]["message"].get<std::string>() << "\n";
        } catch (const json::exception&) {
        }
    }
    if (cfg.out.empty()) {
        out << outcome.artifact;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!(f << outcome.artifact)) {
            err << "error [io_failure]: cannot write " << cfg.out << "\n";
            return 1;
        }
    }
    return outcome.exit_code;
}

} // namespace domcone::cli
