#pragma once

// Associated consistent distance operator (acdo) of a proper negative
// elliptic set Theta:
//
//     Fbar(X) = -sup{ t | X + tI in Theta }.
//
// Fbar is negative inside Theta, positive outside, and X - Fbar(X) I lies on
// the boundary. It is evaluated from a membership predicate only, by
// exponential bracketing along the identity line followed by bisection.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "domcone/operators.hpp"
#include "domcone/report.hpp"
#include "domcone/symmat.hpp"

namespace domcone {

/// Membership predicate for a proper negative elliptic set. The predicate
/// must be re-entrant: it is called concurrently from sampling loops.
struct EllipticSetOracle {
    std::function<bool(const SymMatrix&)> member;
    std::size_t n = 2;
    std::optional<SymMatrix> inside_witness;
    std::optional<SymMatrix> outside_witness;
    std::string description;
};

/// Sublevel set {F <= tol} of a catalog operator, with witnesses found on the
/// identity line.
EllipticSetOracle oracle_from_operator(const OperatorSpec& spec, double tol = 0.0);

/// Checks member(inside) and !member(outside) for the witnesses present.
bool witnesses_consistent(const EllipticSetOracle& oracle);

struct AcdoOptions {
    double tol = 1e-10;
    int max_iterations = 200;
    double bracket_cap = 1e15;
};

struct AcdoResult {
    double value = 0.0;
    /// Final bracket in the shift variable t: X + t_member I in Theta,
    /// X + t_outside I not in Theta.
    double t_member = 0.0;
    double t_outside = 0.0;
    int iterations = 0;
};

/// Thrown when bracketing along X + tI exceeds the cap.
class NonProperError : public Error {
public:
    enum class Side { no_member, no_outsider };
    NonProperError(Side side, const std::string& what) : Error(ErrorCode::non_proper_set, what), side_(side) {}
    /// no_member: the line misses Theta (empty set); no_outsider: the line
    /// stays inside Theta (set is everything along it).
    Side side() const noexcept { return side_; }

private:
    Side side_;
};

/// Post: member(X - (v + tol) I) and !member(X - (v - tol) I) up to the
/// floating-point resolution of the bracket. Throws NonProperError, or
/// Error(non_monotone_set) when the membership set along the line is seen
/// not to be an interval.
AcdoResult acdo_eval(const EllipticSetOracle& oracle, const SymMatrix& x, const AcdoOptions& opts = {});

inline double acdo(const EllipticSetOracle& oracle, const SymMatrix& x, const AcdoOptions& opts = {}) {
    return acdo_eval(oracle, x, opts).value;
}

/// Fbar(X) = (tr(AX) - m) / tr A for Theta = {<A, X> <= m}.
double acdo_halfspace_closed_form(const SymMatrix& A, double m, const SymMatrix& x);

/// |Fbar(X + tau I) - Fbar(X) - tau| <= 3 tol for tau in {-10, -1, 0.1, 7}.
PropertyReport check_nondegeneracy(const EllipticSetOracle& oracle, std::size_t samples, std::uint64_t seed,
                                   const AcdoOptions& opts = {});

/// |Fbar(X) - Fbar(Y)| <= ||X - Y||_inf + 3 tol on sampled pairs.
PropertyReport check_lipschitz(const EllipticSetOracle& oracle, std::size_t samples, std::uint64_t seed,
                               const AcdoOptions& opts = {});

struct StructureFlags {
    bool convex = false;
    bool concave_complement = false;
    bool cone = false;
    bool rot_invariant = false;
};

/// One report per asserted flag. A violation falsifies the caller's claim
/// about the set; the note field says so.
std::vector<PropertyReport> check_structure(const EllipticSetOracle& oracle, StructureFlags flags,
                                            std::size_t samples, std::uint64_t seed, const AcdoOptions& opts = {});

/// Sampled ellipticity of the set: member(X) and N <= 0 imply member(X + N).
PropertyReport check_downward_closed(const EllipticSetOracle& oracle, std::size_t samples, std::uint64_t seed);

} // namespace domcone
