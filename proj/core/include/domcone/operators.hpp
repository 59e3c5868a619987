#pragma once

// Catalog of second-order operators F: S(n) -> [-inf, inf) and their
// sublevel sets Theta(F) = {X | F(X) <= 0}.

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>

#include "domcone/body.hpp"
#include "domcone/exponent.hpp"
#include "domcone/report.hpp"
#include "domcone/symmat.hpp"

namespace domcone {

class OperatorSpec;

namespace op {

/// F_p(X) = (tr X + (p - 2) lambda_n(X)) / (n + p - 2); F_inf = lambda_n.
struct DominativeP {
    std::size_t n;
    Exponent p;
};

/// Maximal Pucci operator with ellipticity constants 0 < lam <= Lam.
struct Pucci {
    std::size_t n;
    double lam;
    double Lam;
};

/// F(X) = <A, X> - m with A PSD and tr A > 0.
struct LinearTrace {
    SymMatrix A;
    double m;
};

/// Support function of a convex body.
struct EnsembleSupport {
    ConvexBody body;
};

/// lambda_1 + lambda_2 - 2 sqrt(1 + lambda_2) + 2 on S(2).
struct ExampleEq {};

/// X -> F(X - X0).
struct Shifted {
    std::shared_ptr<const OperatorSpec> inner;
    SymMatrix X0;
};

/// X -> F(B^-T X B^-1); sublevel set B^T Theta B.
struct Conjugated {
    std::shared_ptr<const OperatorSpec> inner;
    InvertibleMap B;
};

} // namespace op

class OperatorSpec {
public:
    using Variant = std::variant<op::DominativeP, op::Pucci, op::LinearTrace, op::EnsembleSupport, op::ExampleEq,
                                 op::Shifted, op::Conjugated>;

    static OperatorSpec dominative(std::size_t n, Exponent p);
    static OperatorSpec pucci(std::size_t n, double lam, double Lam);
    static OperatorSpec linear(SymMatrix A, double m);
    static OperatorSpec ensemble(ConvexBody body);
    static OperatorSpec example();
    static OperatorSpec shifted(OperatorSpec inner, SymMatrix X0);
    static OperatorSpec conjugated(OperatorSpec inner, InvertibleMap B);

    std::size_t dim() const;
    const Variant& variant() const noexcept { return v_; }
    /// Short human-readable description, e.g. "dominative(n=3,p=4)".
    std::string describe() const;

private:
    explicit OperatorSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

struct EvalResult {
    double value = 0.0;
    /// Set when F(X) = -inf (ExampleEq below its domain edge).
    bool minus_infinity = false;
    /// Signed infinity-norm distance to the boundary, when it has a closed form.
    std::optional<double> boundary_distance_hint;

    bool le(double t) const noexcept { return minus_infinity || value <= t; }
};

double eval_dominative(const SymMatrix& x, const Exponent& p);
double eval_dominative(const Spectrum& s, const Exponent& p);
double eval_pucci(const SymMatrix& x, double lam, double Lam);

/// G(X) = max over the body of <A, X>. For rotation-closed bodies this is the
/// max over generators of sum_i lambda_i(A) lambda_i(X) (both ascending).
double eval_support(const SymMatrix& x, const ConvexBody& body);
double eval_support(const Spectrum& x, const ConvexBody& body);

/// Throws dimension_mismatch unless n = 2.
EvalResult eval_example(const SymMatrix& x);

EvalResult evaluate(const OperatorSpec& spec, const SymMatrix& x);

/// F(X) <= tol (with -inf counted as a member).
bool sublevel_member(const OperatorSpec& spec, const SymMatrix& x, double tol = 0.0);

/// Lambda_alpha = diag(alpha - 1, -1, ..., -1).
SymMatrix lambda_alpha(std::size_t n, double alpha);

/// Sampled check of Theta_p subset Theta_p' (p' < p) and of the boundaries
/// meeting only at 0.
struct NestingReport {
    std::size_t n = 0;
    Exponent p = Exponent::infinity();
    Exponent p_prime = Exponent::finite(2.0);
    std::size_t samples = 0;
    std::size_t members_of_theta_p = 0;
    std::size_t boundary_probes = 0;
    std::vector<Violation> violations;

    bool passed() const noexcept { return violations.empty(); }
};

NestingReport check_nesting(std::size_t n, const Exponent& p, const Exponent& p_prime, std::size_t samples,
                            std::uint64_t seed);

} // namespace domcone
