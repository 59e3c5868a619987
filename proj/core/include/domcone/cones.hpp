#pragma once

// Asymptotic-cone sampling of elliptic sets and the inclusion test
// ac(B^T Theta B) subset Theta_p.
//
// The asymptotic cone is a limit object; it is approximated here by
// boundary points at a finite ladder of radii, projected to the boundary
// along the identity line and normalized to the unit sphere of || ||_inf.

#include <cstdint>
#include <string>
#include <vector>

#include "domcone/acdo.hpp"
#include "domcone/exponent.hpp"

namespace domcone {

/// member'(X) = member(B^-T X B^-1), i.e. the set B^T Theta B.
EllipticSetOracle conjugate_oracle(const EllipticSetOracle& oracle, const InvertibleMap& b);

/// member'(X) = member(X - X0), i.e. the set Theta + {X0}.
EllipticSetOracle shift_oracle(const EllipticSetOracle& oracle, const SymMatrix& x0);

struct ConeSample {
    double radius;
    /// raw_point / ||raw_point||_inf.
    SymMatrix direction;
    /// R D - Fbar(R D) I, a boundary point of Theta.
    SymMatrix raw_point;
};

/// For each of `count` random unit directions D: raw = R D - Fbar(R D) I.
/// Draws with ||raw||_inf < R / 10 are discarded and redrawn from the same
/// stream. Sample i always uses stream i of `seed`.
std::vector<ConeSample> boundary_sample(const EllipticSetOracle& oracle, double radius, std::size_t count,
                                        std::uint64_t seed, const AcdoOptions& opts = {});

enum class InclusionVerdict { consistent, violated, inconclusive };
std::string to_string(InclusionVerdict v);

struct InclusionReport {
    std::size_t n = 0;
    Exponent p = Exponent::infinity();
    std::vector<double> radii;
    /// max over normalized boundary directions of F_p, per radius.
    std::vector<double> worst_fp;
    /// Least-squares slope of log(max(worst, floor)) against log R.
    double trend_slope = 0.0;
    /// Decay exponent beta = -trend_slope.
    double beta = 0.0;
    InclusionVerdict verdict = InclusionVerdict::inconclusive;
    /// Exponents q in (0, q_upper) are guaranteed when the inclusion holds
    /// (+inf at p = infinity). Conditional on inclusion, never certified.
    double q_upper = 0.0;
    std::string q_statement;
    double zero_floor = 0.0;
    std::size_t count = 0;
};

/// Decision rule, with floor = 5 tol:
///  - consistent: every worst <= floor, or the fitted decay exponent is >= 0.25;
///  - violated: otherwise, when worst at the largest radius exceeds 10 * floor;
///  - inconclusive: anything else.
/// Radii must be increasing, at least 3 of them, spanning >= 3 decades.
InclusionReport check_inclusion(const EllipticSetOracle& oracle, const InvertibleMap& b, const Exponent& p,
                                const std::vector<double>& radii, std::size_t count, std::uint64_t seed,
                                const AcdoOptions& opts = {});

/// Ray test available when the caller asserts Theta convex: the asymptotic
/// cone is then the recession cone, so Z belongs to it iff W + tZ stays in
/// Theta for every t >= 0 and any member W. For each sample direction Z,
/// starting at the inside witness, checks t in {1, 10, ..., t_max}; `worst`
/// is max acdo(W + t_max Z) / t_max, and a non-member ray point whose acdo
/// exceeds t * slope_tol is a violation.
PropertyReport recession_ray_check(const EllipticSetOracle& oracle, const std::vector<ConeSample>& samples,
                                   double t_max = 1e6, double slope_tol = 1e-6, const AcdoOptions& opts = {});

struct PairingEstimate {
    /// Sampled max of F_p'(X) over boundary and interior probes of B^T Theta B;
    /// -inf when nothing could be sampled (empty set).
    double value = 0.0;
    std::size_t probes = 0;
    /// Always true: a sampled maximum only bounds the supremum from below.
    bool lower_bound = true;
};

PairingEstimate sup_pairing_estimate(const EllipticSetOracle& oracle, const InvertibleMap& b,
                                     const Exponent& p_prime, std::size_t samples, std::uint64_t seed,
                                     double radius = 1e6, const AcdoOptions& opts = {});

} // namespace domcone
