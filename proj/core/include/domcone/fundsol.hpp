#pragma once

// Radial fundamental solutions
//
//     w(x) = -(p - 1)/(p - n) |x|^((p - n)/(p - 1))   2 <= p != n
//     w(x) = -ln |x|                                  p = n
//     w(x) = -|x|                                     p = inf
//
// with w(0) = +inf for p <= n, together with the Sobolev integrals that
// measure how singular their gradients are, radial Hessian calculus and a
// pointwise supersolution checker for C^2 functions.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "domcone/acdo.hpp"
#include "domcone/aperture.hpp"
#include "domcone/exponent.hpp"
#include "domcone/operators.hpp"
#include "domcone/report.hpp"
#include "domcone/symmat.hpp"

namespace domcone {

class FundamentalSolution {
public:
    enum class Branch { power, log, linear };

    FundamentalSolution(std::size_t n, Exponent p);

    std::size_t n() const noexcept { return n_; }
    const Exponent& p() const noexcept { return p_; }
    /// (alpha - 1)(p - 1) = n - 1, alpha = 1 at p = inf.
    double alpha() const noexcept { return alpha_; }
    Branch branch() const noexcept { return branch_; }

private:
    std::size_t n_;
    Exponent p_;
    double alpha_;
    Branch branch_;
};

/// +inf at x = 0 when p <= n.
double w_value(const FundamentalSolution& fs, std::span<const double> x);
/// -|x|^(1 - alpha) x/|x|. Throws for x = 0.
std::vector<double> w_gradient(const FundamentalSolution& fs, std::span<const double> x);
/// |x|^-alpha ((alpha - 1) xh xh^T - (I - xh xh^T)). Throws for x = 0.
SymMatrix w_hessian(const FundamentalSolution& fs, std::span<const double> x);

/// U, U', U'' of a radial function u(x) = U(|x|).
struct RadialProfile {
    std::function<double(double)> U;
    std::function<double(double)> dU;
    std::function<double(double)> d2U;
    std::optional<double> c;
};

RadialProfile radial_profile(const FundamentalSolution& fs);

/// U(r) = -r^2/2 + 2 c r - c^2 ln r, c >= 1.
RadialProfile example_profile(double c);

/// Hessian eigenvalues of x -> U(|x|) in R^n: U''(r) once, U'(r)/r with
/// multiplicity n - 1; ascending. Throws for r <= 0.
Spectrum radial_hessian_eigs(const RadialProfile& profile, std::size_t n, double r);

/// Operators that are support functions of a known body (dominative, Pucci,
/// ensemble). Others throw ErrorCode::precondition.
ConvexBody support_body(const OperatorSpec& op);

struct AnnihilationReport {
    ApertureResult aperture;
    double fs_alpha = 0.0;
    std::size_t samples = 0;
    /// G(Lambda_alpha) with alpha taken from the fundamental solution.
    double g_lambda_alpha = 0.0;
    /// max |G(Hw(x))| |x|^alpha.
    double worst_scaled_residual = 0.0;
    /// max |G(Hw(x)) - |x|^-alpha G(Lambda_alpha)| |x|^alpha.
    double worst_scaling_defect = 0.0;
    std::vector<Violation> violations;

    bool passed() const noexcept { return violations.empty(); }
};

/// Samples x with |x| log-uniform in [1e-2, 1e2] and checks
/// |G(Hw(x))| <= 1e-9 |x|^-alpha and the scaling law. With enforce_aperture,
/// p(fs) must equal the body cone aperture of G (ErrorCode::aperture_mismatch
/// otherwise).
AnnihilationReport verify_annihilation(const ConvexBody& body, const FundamentalSolution& fs, std::size_t samples,
                                       std::uint64_t seed, bool enforce_aperture = true);
AnnihilationReport verify_annihilation(const OperatorSpec& op, const FundamentalSolution& fs, std::size_t samples,
                                       std::uint64_t seed, bool enforce_aperture = true);

/// Surface measure of the unit sphere in R^n, 2 pi^(n/2) / Gamma(n/2).
double sphere_measure(std::size_t n);

struct SobolevResult {
    /// omega_{n-1} int_eps^1 r^(n-1-q(n-1)/(p-1)) dr, analytic antiderivative.
    double value = 0.0;
    /// Same integral by adaptive Gauss-Kronrod quadrature in log r.
    double numeric = 0.0;
    double relative_gap = 0.0;
    /// n - 1 - q (n - 1)/(p - 1).
    double exponent = 0.0;
    bool log_branch = false;
    double threshold_q = 0.0;
    /// q >= threshold: the integral is unbounded as eps -> 0.
    bool diverges = false;
};

/// Requires q > 0, finite p, eps in (0, 1).
SobolevResult sobolev_integral(std::size_t n, const Exponent& p, double q, double eps);

struct SobolevDichotomy {
    double value_1e2 = 0.0;
    double value_1e4 = 0.0;
    double value_1e6 = 0.0;
    /// I(1e-6) - I(1e-4).
    double growth = 0.0;
    /// omega_{n-1} ln(1e6 / 1e4): growth of the borderline logarithmic case.
    double log_rate = 0.0;
    /// growth >= 0.4 log_rate.
    bool diverges = false;
};

SobolevDichotomy sobolev_dichotomy(std::size_t n, const Exponent& p, double q);

struct RadialCheckPoint {
    double r;
    double lambda1;
    double lambda2;
    double residual;
};

struct ExampleRadialReport {
    double c = 1.0;
    std::vector<RadialCheckPoint> points;
    double worst_residual = 0.0;
    std::vector<Violation> violations;

    bool passed() const noexcept { return violations.empty(); }
};

/// Checks that U(r) = -r^2/2 + 2 c r - c^2 ln r solves the n = 2 example
/// equation on the grid (residual <= 1e-9) and that U'' is the larger
/// eigenvalue. Grid points must lie in (0, 1); c >= 1.
ExampleRadialReport example_radial_check(double c, std::span<const double> r_grid);

using HessianField = std::function<SymMatrix(std::span<const double>)>;

/// F(Hu(x)) <= tol at each grid point (the C^2 supersolution test).
PropertyReport viscosity_grid_check(const OperatorSpec& op, const HessianField& hessian,
                                    const std::vector<std::vector<double>>& grid, double tol);

/// Hessian field of w + x^T X0 x / 2.
HessianField shifted_hessian_field(const FundamentalSolution& fs, const SymMatrix& x0);

/// Boundary point of Theta on the identity line: -Fbar(0) I.
SymMatrix default_quadratic_shift(const EllipticSetOracle& oracle, const AcdoOptions& opts = {});

/// Tensor grid on [-h, h]^n with `per_axis` points per axis, dropping points
/// with |x| < exclude_radius.
std::vector<std::vector<double>> cube_grid(std::size_t n, double half_width, std::size_t per_axis,
                                           double exclude_radius);

} // namespace domcone
