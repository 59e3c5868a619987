#pragma once

#include <cstddef>
#include <vector>

#include "domcone/symmat.hpp"

namespace domcone {

/// Tolerance on the smallest generator eigenvalue (ellipticity).
inline constexpr double kGeneratorPsdTol = 1e-10;
/// Smallest admissible generator trace (keeps 0 out of the body).
inline constexpr double kGeneratorMinTrace = 1e-8;

/// Convex body given by finitely many generators.
///
/// With rot_closed the body is conv(rot{generators}), i.e. every rotation
/// Q A Q^T of a generator is included. Otherwise it is conv{generators}.
/// Generators must be PSD (within 1e-10) with trace >= 1e-8.
class ConvexBody {
public:
    ConvexBody(std::vector<SymMatrix> generators, bool rot_closed = true);

    std::size_t dim() const noexcept { return n_; }
    bool rot_closed() const noexcept { return rot_closed_; }
    const std::vector<SymMatrix>& generators() const noexcept { return generators_; }
    /// Ascending eigenvalues of each generator, cached at construction.
    const std::vector<Spectrum>& generator_spectra() const noexcept { return spectra_; }

    ConvexBody scaled(double c) const;

private:
    std::size_t n_;
    std::vector<SymMatrix> generators_;
    std::vector<Spectrum> spectra_;
    bool rot_closed_;
};

} // namespace domcone
