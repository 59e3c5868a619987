#pragma once

// Body cone aperture of rotation-invariant sublinear elliptic operators,
// the minimality bound c F_p <= G, and the permutation averaging used to
// prove it.

#include <cstdint>
#include <span>
#include <vector>

#include "domcone/body.hpp"
#include "domcone/exponent.hpp"
#include "domcone/report.hpp"

namespace domcone {

/// Single generator (I + (p - 2) e_n e_n^T) / (n + p - 2), or e_n e_n^T at
/// p = infinity; rotation closure supplies the rest.
ConvexBody dominative_body(std::size_t n, const Exponent& p);

/// Generators diag(Lam, ..., Lam, lam, ..., lam) with k copies of Lam,
/// k = 0..n. Their rotation hull is {lam I <= A <= Lam I}.
ConvexBody pucci_body(std::size_t n, double lam, double Lam);

struct ApertureResult {
    /// min over the body of tr A / lambda_n(A), in [1, n].
    double alpha = 1.0;
    Exponent p = Exponent::infinity();
    /// First generator attaining the minimum.
    std::size_t argmin_index = 0;
    /// tr of the argmin generator.
    double c = 0.0;
    /// Root of a -> G(Lambda_a) on [1, n]; equals alpha for rotation-closed bodies.
    double alpha_bisection = 1.0;
    int bisection_iterations = 0;
    /// True for bodies without rotation closure: alpha is then only the
    /// generator minimum, a lower bound for the hull minimum.
    bool lower_bound_only = false;
};

/// Both routes (generator minimum and bisection on a -> G(Lambda_a)) are
/// always computed for rotation-closed bodies; a disagreement beyond 1e-8
/// throws ErrorCode::aperture_inconsistent.
ApertureResult body_cone_aperture(const ConvexBody& body);

struct MinimalBoundReport {
    ApertureResult aperture;
    std::size_t samples = 0;
    /// min over samples of G(X) - c F_p(X) / ||X||_inf.
    double worst_margin = 0.0;
    /// Sample attaining worst_margin.
    std::size_t tightest_index = 0;
    std::vector<double> tightest_x; // row-major
    /// Rotations of Lambda_alpha probed for sharpness, and how many hit
    /// |G - c F_p| <= 1e-6.
    std::size_t sharpness_probes = 0;
    std::size_t equality_hits = 0;
    double best_equality_gap = 0.0;
    std::vector<Violation> violations;

    bool passed() const noexcept { return violations.empty(); }
};

/// c F_p(X) <= G(X) + 1e-9 on seeded random X, plus targeted probes at
/// rotations of Lambda_alpha where equality should hold.
MinimalBoundReport minimal_bound_check(const ConvexBody& body, std::size_t samples, std::uint64_t seed);

struct PermutationDecomposition {
    std::vector<double> weights;
    /// permutations[k][i] = source index: (P_k a)[i] = a[permutations[k][i]].
    std::vector<std::vector<std::size_t>> permutations;

    /// sum_k weights[k] P_k a.
    std::vector<double> apply(std::span<const double> a) const;
};

/// The p-vector (1, ..., 1, p - 1) / (n + p - 2), or e_n at p = infinity.
std::vector<double> p_vector(std::size_t n, const Exponent& p);

/// Writes p_vec as the uniform average of the n - 1 cyclic shifts of the
/// first n - 1 entries of a (the last entry fixed).
///
/// Requires sum a = sum p_vec and a_n = p_n (both within 1e-12), and p_vec
/// of p-vector form: first n - 1 entries equal, last >= them, sum 1.
/// Violations throw ErrorCode::precondition naming the failed condition.
PermutationDecomposition perc_weights(std::span<const double> a, std::span<const double> p_vec);

} // namespace domcone
