#include "domcone/suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include "domcone/random.hpp"

namespace domcone {

namespace {

// Parameter draws for a group come from a stream of their own so that
// adding samples to one group never shifts another.
RandomStream param_stream(std::uint64_t seed, int id) { return RandomStream(seed, 0x5EED0000u + static_cast<unsigned>(id)); }

std::uint64_t sub_seed(std::uint64_t seed, int id, std::uint64_t k) {
    return splitmix64(seed ^ splitmix64((static_cast<std::uint64_t>(id) << 32) + k));
}

std::vector<Exponent> exponent_grid(std::size_t n) {
    std::vector<Exponent> ps;
    for (double p : {2.0, 2.5, 3.0, static_cast<double>(n), 10.0}) {
        const Exponent e = Exponent::finite(p);
        if (std::find(ps.begin(), ps.end(), e) == ps.end()) ps.push_back(e);
    }
    ps.push_back(Exponent::infinity());
    return ps;
}

ConvexBody random_body(RandomStream& rng) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 5.0) % 5;
    const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() * 4.0) % 4;
    std::vector<SymMatrix> gens;
    for (std::size_t j = 0; j < k; ++j) gens.push_back(sample_psd_unit_trace(rng, n) * rng.uniform(0.5, 2.0));
    return ConvexBody(std::move(gens));
}

CriterionResult aperture_exactness(std::uint64_t seed) {
    CriterionResult res;
    json cases = json::array();
    double worst = 0.0;
    bool ok = true;
    for (std::size_t n = 2; n <= 6; ++n) {
        for (const Exponent& p : exponent_grid(n)) {
            const ApertureResult a = body_cone_aperture(dominative_body(n, p));
            double err = 0.0;
            bool good = true;
            if (p.is_infinite()) {
                good = a.p.is_infinite();
            } else {
                good = !a.p.is_infinite();
                err = good ? std::abs(a.p.value() - p.value()) : std::numeric_limits<double>::infinity();
                good = good && err <= 1e-10;
            }
            worst = std::max(worst, err);
            ok = ok && good;
            cases.push_back({{"body", "dominative"}, {"n", n}, {"p", to_json(p)}, {"p_aperture", to_json(a.p)},
                             {"abs_error", number_to_json(err)}, {"passed", good}});
        }
    }
    RandomStream rng = param_stream(seed, 1);
    for (int k = 0; k < 10; ++k) {
        const std::size_t n = 2 + static_cast<std::size_t>(k) % 5;
        const double lam = rng.uniform(0.1, 2.0);
        const double Lam = lam * rng.uniform(1.0, 6.0);
        const ApertureResult a = body_cone_aperture(pucci_body(n, lam, Lam));
        const double expected = (static_cast<double>(n) - 1.0) * lam / Lam + 1.0;
        const double err = std::abs(a.alpha - expected);
        const bool good = err <= 1e-10;
        worst = std::max(worst, err);
        ok = ok && good;
        cases.push_back({{"body", "pucci"}, {"n", n}, {"lam", lam}, {"Lam", Lam}, {"alpha", a.alpha},
                         {"alpha_expected", expected}, {"abs_error", err}, {"passed", good}});
    }
    res.passed = ok;
    res.detail = {{"worst_abs_error", worst}, {"tolerance", 1e-10}, {"cases", std::move(cases)}};
    return res;
}

CriterionResult minimality(std::uint64_t seed) {
    constexpr std::size_t kSamples = 2000;
    std::vector<std::pair<std::string, ConvexBody>> bodies;
    bodies.emplace_back("dominative(n=4,p=3)", dominative_body(4, Exponent::finite(3.0)));
    bodies.emplace_back("pucci(n=3,lam=1,Lam=3)", pucci_body(3, 1.0, 3.0));
    RandomStream rng = param_stream(seed, 2);
    for (int k = 0; k < 20; ++k) bodies.emplace_back("random_body_" + std::to_string(k), random_body(rng));

    CriterionResult res;
    res.passed = true;
    json rows = json::array();
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < bodies.size(); ++b) {
        const MinimalBoundReport r = minimal_bound_check(bodies[b].second, kSamples, sub_seed(seed, 2, b));
        const bool good = r.passed() && r.equality_hits >= 1;
        res.passed = res.passed && good;
        worst = std::min(worst, r.worst_margin);
        rows.push_back({{"body", bodies[b].first}, {"n", bodies[b].second.dim()}, {"alpha", r.aperture.alpha},
                        {"c", r.aperture.c}, {"worst_margin", number_to_json(r.worst_margin)},
                        {"violations", r.violations.size()}, {"equality_hits", r.equality_hits},
                        {"best_equality_gap", number_to_json(r.best_equality_gap)}, {"passed", good}});
    }
    res.detail = {{"samples_per_body", kSamples}, {"bound_tolerance", 1e-9}, {"equality_tolerance", 1e-6},
                  {"worst_margin", number_to_json(worst)}, {"bodies", std::move(rows)}};
    return res;
}

CriterionResult annihilation(std::uint64_t seed) {
    constexpr std::size_t kSamples = 500;
    std::vector<OperatorSpec> ops;
    ops.push_back(OperatorSpec::dominative(2, Exponent::finite(2.0)));
    ops.push_back(OperatorSpec::dominative(3, Exponent::finite(4.0)));
    ops.push_back(OperatorSpec::dominative(4, Exponent::finite(2.5)));
    ops.push_back(OperatorSpec::dominative(5, Exponent::infinity()));
    ops.push_back(OperatorSpec::dominative(6, Exponent::finite(10.0)));
    ops.push_back(OperatorSpec::pucci(2, 1.0, 2.0));
    ops.push_back(OperatorSpec::pucci(3, 0.5, 2.0));
    ops.push_back(OperatorSpec::pucci(4, 1.0, 3.0));
    RandomStream rng = param_stream(seed, 3);
    ops.push_back(OperatorSpec::ensemble(random_body(rng)));

    CriterionResult res;
    res.passed = true;
    json rows = json::array();
    for (std::size_t k = 0; k < ops.size(); ++k) {
        const ConvexBody body = support_body(ops[k]);
        const ApertureResult ap = body_cone_aperture(body);
        const FundamentalSolution fs(body.dim(), ap.p);
        const AnnihilationReport r = verify_annihilation(body, fs, kSamples, sub_seed(seed, 3, k));
        res.passed = res.passed && r.passed();
        rows.push_back({{"operator", ops[k].describe()}, {"p", to_json(ap.p)}, {"alpha", ap.alpha},
                        {"worst_scaled_residual", number_to_json(r.worst_scaled_residual)},
                        {"worst_scaling_defect", number_to_json(r.worst_scaling_defect)},
                        {"violations", r.violations.size()}, {"passed", r.passed()}});
    }
    res.detail = {{"samples_per_operator", kSamples}, {"tolerance", 1e-9}, {"radius_range", {1e-2, 1e2}},
                  {"operators", std::move(rows)}};
    return res;
}

CriterionResult acdo_fidelity(std::uint64_t seed) {
    const AcdoOptions opts;
    constexpr double kTol = 2e-10;
    const std::vector<std::pair<std::size_t, Exponent>> cases{{2, Exponent::finite(2.0)},
                                                              {3, Exponent::finite(4.0)},
                                                              {4, Exponent::finite(2.5)},
                                                              {5, Exponent::infinity()},
                                                              {6, Exponent::finite(10.0)}};
    CriterionResult res;
    res.passed = true;
    json rows = json::array();
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const auto& [n, p] = cases[k];
        const OperatorSpec op = OperatorSpec::dominative(n, p);
        const EllipticSetOracle oracle = oracle_from_operator(op);
        constexpr std::size_t kPoints = 200;
        std::vector<double> err(kPoints);
        const std::uint64_t s = sub_seed(seed, 4, k);
        for (std::size_t i = 0; i < kPoints; ++i) {
            RandomStream rng(s, i);
            const SymMatrix x = sample_goe_normalized(rng, n, rng.uniform(0.25, 4.0));
            err[i] = std::abs(acdo(oracle, x, opts) - eval_dominative(x, p));
        }
        const double worst = *std::max_element(err.begin(), err.end());
        const PropertyReport nd = check_nondegeneracy(oracle, 100, sub_seed(seed, 4, 100 + k), opts);
        const PropertyReport lip = check_lipschitz(oracle, 100, sub_seed(seed, 4, 200 + k), opts);
        const bool good = worst <= kTol && nd.passed() && lip.passed();
        res.passed = res.passed && good;
        rows.push_back({{"operator", op.describe()}, {"points", kPoints}, {"worst_abs_error", worst},
                        {"nondegeneracy", to_json(nd)}, {"lipschitz", to_json(lip)}, {"passed", good}});
    }

    json halfspaces = json::array();
    RandomStream prng = param_stream(seed, 4);
    for (std::size_t k = 0; k < 5; ++k) {
        const std::size_t n = 2 + k;
        const SymMatrix A = sample_psd_unit_trace(prng, n) * prng.uniform(0.5, 3.0);
        const double m = prng.uniform(-1.0, 1.0);
        const EllipticSetOracle oracle = oracle_from_operator(OperatorSpec::linear(A, m));
        double worst = 0.0;
        const std::uint64_t s = sub_seed(seed, 4, 300 + k);
        for (std::size_t i = 0; i < 100; ++i) {
            RandomStream rng(s, i);
            const SymMatrix x = sample_goe_normalized(rng, n, rng.uniform(0.25, 4.0));
            worst = std::max(worst, std::abs(acdo(oracle, x, opts) - acdo_halfspace_closed_form(A, m, x)));
        }
        const bool good = worst <= kTol;
        res.passed = res.passed && good;
        halfspaces.push_back({{"n", n}, {"m", m}, {"trace_A", A.trace()}, {"worst_abs_error", worst}, {"passed", good}});
    }
    res.detail = {{"tolerance", kTol}, {"root_tolerance", opts.tol}, {"dominative", std::move(rows)},
                  {"halfspaces", std::move(halfspaces)}};
    return res;
}

CriterionResult sobolev(std::uint64_t) {
    CriterionResult res;
    res.passed = true;
    json rows = json::array();
    std::set<std::pair<std::size_t, double>> seen;
    for (std::size_t n = 2; n <= 5; ++n) {
        for (double pv : {2.0, 3.0, static_cast<double>(n)}) {
            if (!seen.insert({n, pv}).second) continue;
            const Exponent p = Exponent::finite(pv);
            const double qstar = sobolev_threshold(n, p);
            for (double f : {0.95, 1.0, 1.05}) {
                const double q = f * qstar;
                const SobolevDichotomy d = sobolev_dichotomy(n, p, q);
                double gap = 0.0;
                for (double eps : {1e-2, 1e-4, 1e-6}) gap = std::max(gap, sobolev_integral(n, p, q, eps).relative_gap);
                const bool expect_div = f >= 1.0;
                const bool good = d.diverges == expect_div && gap <= 1e-8;
                res.passed = res.passed && good;
                rows.push_back({{"n", n}, {"p", pv}, {"q_factor", f}, {"q", q}, {"q_star", qstar},
                                {"growth", d.growth}, {"growth_threshold", 0.4 * d.log_rate},
                                {"diverges", d.diverges}, {"expected_diverges", expect_div},
                                {"quadrature_relative_gap", gap}, {"passed", good}});
            }
        }
    }
    res.detail = {{"quadrature_tolerance", 1e-8}, {"cases", std::move(rows)}};
    return res;
}

CriterionResult example_equation(std::uint64_t seed) {
    CriterionResult res;
    std::vector<double> grid;
    for (int k = 1; k <= 19; ++k) grid.push_back(0.05 * k);
    json radial = json::array();
    bool radial_ok = true;
    for (double c : {1.0, 1.5, 2.0}) {
        const ExampleRadialReport r = example_radial_check(c, grid);
        radial_ok = radial_ok && r.passed();
        radial.push_back({{"c", c}, {"worst_residual", number_to_json(r.worst_residual)},
                          {"violations", r.violations.size()}, {"passed", r.passed()}});
    }

    const EllipticSetOracle oracle = oracle_from_operator(OperatorSpec::example());
    const InvertibleMap id = InvertibleMap::identity(2);
    const std::vector<double> radii{1e2, 1e4, 1e6};
    constexpr std::size_t kCount = 200;
    const InclusionReport inc2 = check_inclusion(oracle, id, Exponent::finite(2.0), radii, kCount, sub_seed(seed, 6, 0));
    const InclusionReport inc25 = check_inclusion(oracle, id, Exponent::finite(2.5), radii, kCount, sub_seed(seed, 6, 1));
    const bool p2_ok = inc2.verdict == InclusionVerdict::consistent && inc2.beta >= 0.4 && inc2.beta <= 0.6;
    const bool p25_ok = inc25.verdict == InclusionVerdict::violated;

    res.passed = radial_ok && p2_ok && p25_ok;
    res.detail = {{"radial_tolerance", 1e-9},
                  {"radial", std::move(radial)},
                  {"inclusion_p2", to_json(inc2)},
                  {"inclusion_p2_expected", "consistent with beta in [0.4, 0.6]"},
                  {"inclusion_p2_passed", p2_ok},
                  {"inclusion_p2_5", to_json(inc25)},
                  {"inclusion_p2_5_expected", "violated"},
                  {"inclusion_p2_5_passed", p25_ok}};
    return res;
}

CriterionResult permutation_lemma(std::uint64_t seed) {
    CriterionResult res;
    res.passed = true;
    double worst = 0.0;
    RandomStream rng = param_stream(seed, 7);
    json rows = json::array();
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = 2 + static_cast<std::size_t>(k) % 7;
        const Exponent p = k % 10 == 9 ? Exponent::infinity() : Exponent::finite(rng.uniform(2.0, 12.0));
        const std::vector<double> pv = p_vector(n, p);
        // Hypothesis: a_n = p_n and sum a = sum p, free otherwise.
        std::vector<double> a(n);
        a[n - 1] = pv[n - 1];
        double rest = 1.0 - pv[n - 1];
        double acc = 0.0;
        for (std::size_t i = 0; i + 2 < n; ++i) {
            a[i] = rng.uniform(-1.0, 1.0) + rest / static_cast<double>(n - 1);
            acc += a[i];
        }
        a[n - 2] = rest - acc;
        const PermutationDecomposition d = perc_weights(a, pv);
        const std::vector<double> back = d.apply(a);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(back[i] - pv[i]));
        worst = std::max(worst, err);
        const bool good = err <= 1e-12;
        res.passed = res.passed && good;
        if (!good) rows.push_back({{"case", k}, {"n", n}, {"p", to_json(p)}, {"max_abs_error", err}});
    }
    res.detail = {{"cases", 100}, {"tolerance", 1e-12}, {"worst_abs_error", worst}, {"failures", std::move(rows)}};
    return res;
}

CriterionResult pucci_nonintegrability(std::uint64_t seed) {
    CriterionResult res;
    const OperatorSpec op = OperatorSpec::pucci(2, 1.0, 2.0);
    const ApertureResult ap = body_cone_aperture(support_body(op));
    const bool p_ok = !ap.p.is_infinite() && std::abs(ap.p.value() - 3.0) <= 1e-10;
    const FundamentalSolution fs(2, Exponent::finite(3.0));
    const auto grid = cube_grid(2, 1.0, 41, 1e-6);
    const PropertyReport visc = viscosity_grid_check(op, [&fs](std::span<const double> x) { return w_hessian(fs, x); },
                                                     grid, 1e-9);
    const AnnihilationReport ann = verify_annihilation(op, fs, 500, sub_seed(seed, 8, 0));
    const SobolevDichotomy d = sobolev_dichotomy(2, Exponent::finite(3.0), 4.0);
    res.passed = p_ok && visc.passed() && ann.passed() && d.diverges;
    res.detail = {{"operator", op.describe()},
                  {"aperture_p", to_json(ap.p)},
                  {"aperture_p_is_3", p_ok},
                  {"viscosity_grid", to_json(visc)},
                  {"grid_points", grid.size()},
                  {"annihilation_worst_scaled_residual", number_to_json(ann.worst_scaled_residual)},
                  {"annihilation_passed", ann.passed()},
                  {"q", 4.0},
                  {"sobolev", to_json(d)}};
    return res;
}

} // namespace

const std::vector<SuiteGroup>& suite_groups() {
    static const std::vector<SuiteGroup> groups{
        {1, "aperture_exactness", "body cone aperture of dominative and Pucci bodies"},
        {2, "minimality", "c F_p <= G on samples, with equality at rotations of Lambda_alpha"},
        {3, "fundamental_solution_annihilation", "|G(Hw(x))| |x|^alpha <= 1e-9"},
        {4, "acdo_fidelity", "bisection acdo against closed forms, nondegeneracy, 1-Lipschitz"},
        {5, "sobolev_dichotomy", "gradient integrability threshold and its sharpness"},
        {6, "example_equation", "radial solutions and the asymptotic-cone inclusion"},
        {7, "permutation_lemma", "p-vector as an average of cyclic shifts"},
        {8, "pucci_nonintegrability", "w_{2,3} solves the Pucci equation but |grad w|^4 is not integrable"},
    };
    return groups;
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
    using Fn = CriterionResult (*)(std::uint64_t);
    static constexpr Fn kFns[] = {aperture_exactness, minimality,        annihilation,      acdo_fidelity,
                                  sobolev,            example_equation,  permutation_lemma, pucci_nonintegrability};
    if (id < 1 || id > 8) throw Error(ErrorCode::invalid_argument, "suite groups are numbered 1..8");
    CriterionResult res;
    try {
        res = kFns[id - 1](seed);
    } catch (const std::exception& e) {
        res = CriterionResult{};
        res.passed = false;
        res.error = e.what();
    }
    res.id = id;
    res.name = suite_groups()[static_cast<std::size_t>(id - 1)].name;
    return res;
}

std::vector<CriterionResult> run_suite(std::uint64_t seed) {
    std::vector<CriterionResult> out;
    for (const auto& g : suite_groups()) out.push_back(run_criterion(g.id, seed));
    return out;
}

json to_json(const CriterionResult& r) {
    json j{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
    j["error"] = r.error ? json(*r.error) : json(nullptr);
    return j;
}

} // namespace domcone
