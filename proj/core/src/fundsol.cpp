#include "domcone/fundsol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "domcone/random.hpp"

namespace domcone {

namespace {

double euclidean_norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

} // namespace

FundamentalSolution::FundamentalSolution(std::size_t n, Exponent p)
    : n_(n), p_(p), alpha_(alpha_from_p(n, p)), branch_(Branch::power) {
    SymMatrix::zero(n); // dimension check
    if (p_.is_infinite()) branch_ = Branch::linear;
    else if (p_.value() == static_cast<double>(n)) branch_ = Branch::log;
}

double w_value(const FundamentalSolution& fs, std::span<const double> x) {
    require_same_dim(fs.n(), x.size(), "w_value");
    const double r = euclidean_norm(x);
    switch (fs.branch()) {
    case FundamentalSolution::Branch::linear: return -r;
    case FundamentalSolution::Branch::log:
        return r == 0.0 ? std::numeric_limits<double>::infinity() : -std::log(r);
    case FundamentalSolution::Branch::power: {
        const double p = fs.p().value();
        const double n = static_cast<double>(fs.n());
        if (r == 0.0 && p < n) return std::numeric_limits<double>::infinity();
        return -(p - 1.0) / (p - n) * std::pow(r, (p - n) / (p - 1.0));
    }
    }
    return 0.0;
}

std::vector<double> w_gradient(const FundamentalSolution& fs, std::span<const double> x) {
    require_same_dim(fs.n(), x.size(), "w_gradient");
    const double r = euclidean_norm(x);
    if (r == 0.0) throw Error(ErrorCode::invalid_argument, "w_gradient is undefined at x = 0");
    // |grad w| = r^(1 - alpha), pointing inward.
    const double scale = -std::pow(r, 1.0 - fs.alpha()) / r;
    std::vector<double> g(x.begin(), x.end());
    for (double& v : g) v *= scale;
    return g;
}

SymMatrix w_hessian(const FundamentalSolution& fs, std::span<const double> x) {
    require_same_dim(fs.n(), x.size(), "w_hessian");
    const double r = euclidean_norm(x);
    if (r == 0.0) throw Error(ErrorCode::invalid_argument, "w_hessian is undefined at x = 0");
    const std::size_t n = fs.n();
    const double a = fs.alpha();
    const double s = std::pow(r, -a);
    return SymMatrix::from_function(n, [&](std::size_t i, std::size_t j) {
        const double xx = x[i] * x[j] / (r * r);
        return s * (a * xx - (i == j ? 1.0 : 0.0));
    });
}

RadialProfile radial_profile(const FundamentalSolution& fs) {
    const double a = fs.alpha();
    RadialProfile prof;
    const FundamentalSolution copy = fs;
    prof.U = [copy](double r) {
        std::vector<double> x(copy.n(), 0.0);
        x[0] = r;
        return w_value(copy, x);
    };
    prof.dU = [a](double r) { return -std::pow(r, 1.0 - a); };
    prof.d2U = [a](double r) { return (a - 1.0) * std::pow(r, -a); };
    return prof;
}

RadialProfile example_profile(double c) {
    if (!(c >= 1.0)) throw Error(ErrorCode::invalid_argument, "example profile needs c >= 1");
    RadialProfile prof;
    prof.U = [c](double r) { return -0.5 * r * r + 2.0 * c * r - c * c * std::log(r); };
    prof.dU = [c](double r) { return -r + 2.0 * c - c * c / r; };
    prof.d2U = [c](double r) { return -1.0 + c * c / (r * r); };
    prof.c = c;
    return prof;
}

Spectrum radial_hessian_eigs(const RadialProfile& profile, std::size_t n, double r) {
    if (!(r > 0.0)) throw Error(ErrorCode::invalid_argument, "radial_hessian_eigs needs r > 0");
    if (n < 1) throw Error(ErrorCode::dimension_mismatch, "radial_hessian_eigs needs n >= 1");
    Spectrum s{std::vector<double>(n, profile.dU(r) / r)};
    s.values[0] = profile.d2U(r);
    std::sort(s.values.begin(), s.values.end());
    return s;
}

ConvexBody support_body(const OperatorSpec& op) {
    const auto& v = op.variant();
    if (const auto* d = std::get_if<op::DominativeP>(&v)) return dominative_body(d->n, d->p);
    if (const auto* d = std::get_if<op::Pucci>(&v)) return pucci_body(d->n, d->lam, d->Lam);
    if (const auto* d = std::get_if<op::EnsembleSupport>(&v)) return d->body;
    throw Error(ErrorCode::precondition,
                op.describe() + " is not a rotationally invariant sublinear operator with a known convex body");
}

AnnihilationReport verify_annihilation(const ConvexBody& body, const FundamentalSolution& fs, std::size_t samples,
                                       std::uint64_t seed, bool enforce_aperture) {
    constexpr double kResidualTol = 1e-9;
    require_same_dim(body.dim(), fs.n(), "verify_annihilation");
    const std::size_t n = fs.n();

    AnnihilationReport rep;
    rep.aperture = body_cone_aperture(body);
    rep.fs_alpha = fs.alpha();
    rep.samples = samples;
    if (enforce_aperture && std::abs(rep.aperture.alpha - fs.alpha()) > 1e-9) {
        std::ostringstream os;
        os.precision(17);
        os << "fundamental solution exponent p = " << fs.p().to_string()
           << " differs from the body cone aperture p(G) = " << rep.aperture.p.to_string();
        throw Error(ErrorCode::aperture_mismatch, os.str());
    }

    const double a = fs.alpha();
    rep.g_lambda_alpha = eval_support(lambda_alpha(n, a), body);
    for (std::size_t i = 0; i < samples; ++i) {
        RandomStream rng(seed, i);
        std::vector<double> x = sample_unit_vector(rng, n);
        const double radius = std::pow(10.0, rng.uniform(-2.0, 2.0));
        for (double& v : x) v *= radius;
        const double r = euclidean_norm(x);
        const double ra = std::pow(r, a);
        const double g = eval_support(w_hessian(fs, x), body);
        const double scaled = std::abs(g) * ra;
        const double scaling_defect = std::abs(g - rep.g_lambda_alpha / ra) * ra;
        rep.worst_scaled_residual = std::max(rep.worst_scaled_residual, scaled);
        rep.worst_scaling_defect = std::max(rep.worst_scaling_defect, scaling_defect);
        if (scaled > kResidualTol) rep.violations.push_back({i, "|G(Hw(x))| |x|^alpha > 1e-9", scaled});
        if (scaling_defect > kResidualTol)
            rep.violations.push_back({i, "G(Hw(x)) != |x|^-alpha G(Lambda_alpha)", scaling_defect});
    }
    return rep;
}

AnnihilationReport verify_annihilation(const OperatorSpec& op, const FundamentalSolution& fs, std::size_t samples,
                                       std::uint64_t seed, bool enforce_aperture) {
    return verify_annihilation(support_body(op), fs, samples, seed, enforce_aperture);
}

double sphere_measure(std::size_t n) {
    const double h = 0.5 * static_cast<double>(n);
    return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

SobolevResult sobolev_integral(std::size_t n, const Exponent& p, double q, double eps) {
    if (p.is_infinite()) throw Error(ErrorCode::invalid_argument, "sobolev_integral needs a finite p");
    if (!(q > 0.0)) throw Error(ErrorCode::invalid_argument, "sobolev_integral needs q > 0");
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::invalid_argument, "sobolev_integral needs eps in (0, 1)");
    if (n < 2) throw Error(ErrorCode::dimension_mismatch, "sobolev_integral needs n >= 2");

    const double nd = static_cast<double>(n);
    const double pv = p.value();
    const double omega = sphere_measure(n);

    SobolevResult res;
    res.exponent = nd - 1.0 - q * (nd - 1.0) / (pv - 1.0);
    res.threshold_q = sobolev_threshold(n, p);
    // int_eps^1 r^(k-1) dr with k = exponent + 1.
    const double k = res.exponent + 1.0;
    const double log_eps = std::log(eps);
    res.log_branch = std::abs(k) <= 1e-12;
    res.value = res.log_branch ? -omega * log_eps : -omega * std::expm1(k * log_eps) / k;
    res.diverges = k <= 1e-12;

    // r = e^s turns the endpoint singularity into a smooth exponential.
    auto integrand = [k](double s) { return std::exp(k * s); };
    double err = 0.0;
    res.numeric = omega * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, log_eps, 0.0, 30,
                                                                                      1e-14, &err);
    res.relative_gap = std::abs(res.numeric - res.value) / std::max(std::abs(res.value), 1e-300);
    return res;
}

SobolevDichotomy sobolev_dichotomy(std::size_t n, const Exponent& p, double q) {
    SobolevDichotomy d;
    d.value_1e2 = sobolev_integral(n, p, q, 1e-2).value;
    d.value_1e4 = sobolev_integral(n, p, q, 1e-4).value;
    d.value_1e6 = sobolev_integral(n, p, q, 1e-6).value;
    d.growth = d.value_1e6 - d.value_1e4;
    d.log_rate = sphere_measure(n) * std::log(1e6 / 1e4);
    d.diverges = d.growth >= 0.4 * d.log_rate;
    return d;
}

ExampleRadialReport example_radial_check(double c, std::span<const double> r_grid) {
    constexpr double kResidualTol = 1e-9;
    const RadialProfile prof = example_profile(c);
    ExampleRadialReport rep;
    rep.c = c;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        const double r = r_grid[i];
        if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::invalid_argument, "example grid must lie in (0, 1)");
        const Spectrum s = radial_hessian_eigs(prof, 2, r);
        const EvalResult f = eval_example(SymMatrix::diagonal({s[0], s[1]}));
        const double residual = f.minus_infinity ? std::numeric_limits<double>::infinity() : std::abs(f.value);
        rep.points.push_back({r, s[0], s[1], f.value});
        rep.worst_residual = std::max(rep.worst_residual, residual);
        if (residual > kResidualTol) rep.violations.push_back({i, "example equation residual > 1e-9", residual});
        const double d2u = prof.d2U(r);
        if (std::abs(s[1] - d2u) > 1e-12 * std::max(1.0, std::abs(d2u)))
            rep.violations.push_back({i, "U'' is not the largest Hessian eigenvalue", s[1] - d2u});
    }
    return rep;
}

PropertyReport viscosity_grid_check(const OperatorSpec& op, const HessianField& hessian,
                                    const std::vector<std::vector<double>>& grid, double tol) {
    PropertyReport rep;
    rep.name = "viscosity_grid";
    rep.samples = grid.size();
    rep.worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const EvalResult f = evaluate(op, hessian(grid[i]));
        if (f.minus_infinity) continue;
        rep.worst = std::max(rep.worst, f.value);
        if (f.value > tol) rep.violations.push_back({i, "F(Hu(x)) > tol", f.value});
    }
    return rep;
}

HessianField shifted_hessian_field(const FundamentalSolution& fs, const SymMatrix& x0) {
    require_same_dim(fs.n(), x0.dim(), "shifted_hessian_field");
    return [fs, x0](std::span<const double> x) { return w_hessian(fs, x) + x0; };
}

SymMatrix default_quadratic_shift(const EllipticSetOracle& oracle, const AcdoOptions& opts) {
    const SymMatrix zero = SymMatrix::zero(oracle.n);
    return zero.plus_identity(-acdo(oracle, zero, opts));
}

std::vector<std::vector<double>> cube_grid(std::size_t n, double half_width, std::size_t per_axis,
                                           double exclude_radius) {
    if (per_axis < 2) throw Error(ErrorCode::invalid_argument, "cube_grid needs at least 2 points per axis");
    std::vector<std::vector<double>> out;
    std::vector<std::size_t> idx(n, 0);
    const double step = 2.0 * half_width / static_cast<double>(per_axis - 1);
    for (;;) {
        std::vector<double> x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = -half_width + step * static_cast<double>(idx[k]);
        if (euclidean_norm(x) >= exclude_radius) out.push_back(std::move(x));
        std::size_t k = 0;
        while (k < n && ++idx[k] == per_axis) idx[k++] = 0;
        if (k == n) break;
    }
    return out;
}

} // namespace domcone
