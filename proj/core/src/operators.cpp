#include "domcone/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "domcone/random.hpp"

namespace domcone {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_pucci_constants(double lam, double Lam) {
    if (!(lam > 0.0) || !(Lam >= lam) || !std::isfinite(Lam)) {
        std::ostringstream os;
        os << "Pucci constants must satisfy 0 < lam <= Lam (got lam = " << lam << ", Lam = " << Lam << ")";
        throw Error(ErrorCode::invalid_argument, os.str());
    }
}

} // namespace

// ---------------------------------------------------------------------------
// OperatorSpec factories

OperatorSpec OperatorSpec::dominative(std::size_t n, Exponent p) {
    SymMatrix::zero(n); // dimension check
    return OperatorSpec(op::DominativeP{n, p});
}

OperatorSpec OperatorSpec::pucci(std::size_t n, double lam, double Lam) {
    SymMatrix::zero(n);
    require_pucci_constants(lam, Lam);
    return OperatorSpec(op::Pucci{n, lam, Lam});
}

OperatorSpec OperatorSpec::linear(SymMatrix A, double m) {
    if (!is_psd(A, kGeneratorPsdTol)) throw Error(ErrorCode::invalid_argument, "linear operator needs A >= 0");
    if (!(A.trace() > 0.0)) throw Error(ErrorCode::invalid_argument, "linear operator needs tr A > 0");
    if (!std::isfinite(m)) throw Error(ErrorCode::invalid_argument, "linear operator offset must be finite");
    return OperatorSpec(op::LinearTrace{std::move(A), m});
}

OperatorSpec OperatorSpec::ensemble(ConvexBody body) { return OperatorSpec(op::EnsembleSupport{std::move(body)}); }

OperatorSpec OperatorSpec::example() { return OperatorSpec(op::ExampleEq{}); }

OperatorSpec OperatorSpec::shifted(OperatorSpec inner, SymMatrix X0) {
    require_same_dim(inner.dim(), X0.dim(), "shifted operator");
    return OperatorSpec(op::Shifted{std::make_shared<const OperatorSpec>(std::move(inner)), std::move(X0)});
}

OperatorSpec OperatorSpec::conjugated(OperatorSpec inner, InvertibleMap B) {
    require_same_dim(inner.dim(), B.dim(), "conjugated operator");
    return OperatorSpec(op::Conjugated{std::make_shared<const OperatorSpec>(std::move(inner)), std::move(B)});
}

std::size_t OperatorSpec::dim() const {
    return std::visit(overloaded{
                          [](const op::DominativeP& d) { return d.n; },
                          [](const op::Pucci& d) { return d.n; },
                          [](const op::LinearTrace& d) { return d.A.dim(); },
                          [](const op::EnsembleSupport& d) { return d.body.dim(); },
                          [](const op::ExampleEq&) { return std::size_t{2}; },
                          [](const op::Shifted& d) { return d.inner->dim(); },
                          [](const op::Conjugated& d) { return d.inner->dim(); },
                      },
                      v_);
}

std::string OperatorSpec::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const op::DominativeP& d) { os << "dominative(n=" << d.n << ",p=" << d.p.to_string() << ")"; },
                   [&](const op::Pucci& d) { os << "pucci(n=" << d.n << ",lam=" << d.lam << ",Lam=" << d.Lam << ")"; },
                   [&](const op::LinearTrace& d) { os << "linear(n=" << d.A.dim() << ",m=" << d.m << ")"; },
                   [&](const op::EnsembleSupport& d) {
                       os << "ensemble(n=" << d.body.dim() << ",generators=" << d.body.generators().size() << ")";
                   },
                   [&](const op::ExampleEq&) { os << "example(n=2)"; },
                   [&](const op::Shifted& d) { os << "shifted(" << d.inner->describe() << ")"; },
                   [&](const op::Conjugated& d) { os << "conjugated(" << d.inner->describe() << ")"; },
               },
               v_);
    return os.str();
}

// ---------------------------------------------------------------------------
// Evaluation

double eval_dominative(const Spectrum& s, const Exponent& p) {
    if (p.is_infinite()) return s.max();
    const double pv = p.value();
    const double n = static_cast<double>(s.size());
    return (s.sum() + (pv - 2.0) * s.max()) / (n + pv - 2.0);
}

double eval_dominative(const SymMatrix& x, const Exponent& p) { return eval_dominative(eigvals_sym(x), p); }

double eval_pucci(const SymMatrix& x, double lam, double Lam) {
    require_pucci_constants(lam, Lam);
    double pos = 0.0;
    double neg = 0.0;
    for (double v : eigvals_sym(x).values) {
        if (v > 0.0) pos += v;
        else neg += v;
    }
    return Lam * pos + lam * neg;
}

double eval_support(const Spectrum& x, const ConvexBody& body) {
    require_same_dim(x.size(), body.dim(), "eval_support");
    if (!body.rot_closed()) {
        throw Error(ErrorCode::invalid_argument, "spectral support evaluation needs a rotation-closed body");
    }
    double best = -std::numeric_limits<double>::infinity();
    for (const Spectrum& g : body.generator_spectra()) {
        double s = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) s += g[i] * x[i];
        best = std::max(best, s);
    }
    return best;
}

double eval_support(const SymMatrix& x, const ConvexBody& body) {
    require_same_dim(x.dim(), body.dim(), "eval_support");
    if (body.rot_closed()) return eval_support(eigvals_sym(x), body);
    double best = -std::numeric_limits<double>::infinity();
    for (const SymMatrix& g : body.generators()) best = std::max(best, inner(g, x));
    return best;
}

EvalResult eval_example(const SymMatrix& x) {
    if (x.dim() != 2) throw Error(ErrorCode::dimension_mismatch, "example operator is defined on S(2) only");
    const Spectrum s = eigvals_sym(x);
    const double l1 = s[0];
    const double l2 = s[1];
    if (l2 < -1.0) return EvalResult{-std::numeric_limits<double>::infinity(), true, std::nullopt};
    return EvalResult{l1 + l2 - 2.0 * std::sqrt(1.0 + l2) + 2.0, false, std::nullopt};
}

EvalResult evaluate(const OperatorSpec& spec, const SymMatrix& x) {
    require_same_dim(spec.dim(), x.dim(), "evaluate");
    return std::visit(overloaded{
                          [&](const op::DominativeP& d) {
                              const double v = eval_dominative(x, d.p);
                              return EvalResult{v, false, v};
                          },
                          [&](const op::Pucci& d) { return EvalResult{eval_pucci(x, d.lam, d.Lam), false, std::nullopt}; },
                          [&](const op::LinearTrace& d) {
                              const double v = inner(d.A, x) - d.m;
                              return EvalResult{v, false, v / d.A.trace()};
                          },
                          [&](const op::EnsembleSupport& d) {
                              return EvalResult{eval_support(x, d.body), false, std::nullopt};
                          },
                          [&](const op::ExampleEq&) { return eval_example(x); },
                          [&](const op::Shifted& d) { return evaluate(*d.inner, x - d.X0); },
                          [&](const op::Conjugated& d) {
                              EvalResult r = evaluate(*d.inner, inverse_congruence(x, d.B));
                              r.boundary_distance_hint.reset();
                              return r;
                          },
                      },
                      spec.variant());
}

bool sublevel_member(const OperatorSpec& spec, const SymMatrix& x, double tol) { return evaluate(spec, x).le(tol); }

SymMatrix lambda_alpha(std::size_t n, double alpha) {
    std::vector<double> d(n, -1.0);
    d[0] = alpha - 1.0;
    return SymMatrix::diagonal(d);
}

// ---------------------------------------------------------------------------
// Nesting

NestingReport check_nesting(std::size_t n, const Exponent& p, const Exponent& p_prime, std::size_t samples,
                            std::uint64_t seed) {
    const bool ordered = !p_prime.is_infinite() && (p.is_infinite() || p_prime.value() < p.value());
    if (!ordered) throw Error(ErrorCode::invalid_argument, "check_nesting requires 2 <= p' < p <= inf");

    constexpr double kInclusionTol = 1e-12;
    constexpr double kBoundaryTol = 1e-9;
    constexpr double kScale = 1.0;

    NestingReport rep{n, p, p_prime, samples, 0, 0, {}};
    auto boundary_probe = [&](std::size_t i, const SymMatrix& y) {
        const Spectrum s = eigvals_sym(y);
        const double fp = eval_dominative(s, p);
        const double fq = eval_dominative(s, p_prime);
        if (std::abs(fp) + std::abs(fq) <= kBoundaryTol) {
            ++rep.boundary_probes;
            const double norm = inf_norm(s);
            if (norm > 1e-6 * kScale) rep.violations.push_back({i, "boundaries of Theta_p and Theta_p' meet away from 0", norm});
        }
    };

    for (std::size_t i = 0; i < samples; ++i) {
        RandomStream rng(seed, i);
        const SymMatrix x = sample_goe_normalized(rng, n, kScale);
        const double fp = eval_dominative(eigvals_sym(x), p);
        // Outsiders are pushed into Theta_p along -I, so every sample tests the inclusion.
        const SymMatrix m = fp <= 0.0 ? x : x.plus_identity(-fp - rng.uniform() * kScale);
        const Spectrum sm = eigvals_sym(m);
        if (eval_dominative(sm, p) <= kInclusionTol) {
            ++rep.members_of_theta_p;
            const double fq = eval_dominative(sm, p_prime);
            if (fq > kInclusionTol) rep.violations.push_back({i, "X in Theta_p but F_p'(X) > 0", fq});
        }
        // Project onto the boundary of Theta_p along I, and shrink towards 0.
        boundary_probe(i, x.plus_identity(-fp));
        boundary_probe(i, x * 1e-12);
    }
    return rep;
}

} // namespace domcone
