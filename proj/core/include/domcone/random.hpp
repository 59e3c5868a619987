#pragma once

// Counter-based random streams.
//
// A stream is identified by (seed, stream id). The k-th 64-bit output is
// splitmix64(key + k * 0x9E3779B97F4A7C15) where key mixes the seed and the
// stream id through splitmix64. Sample i of any sampling loop draws from
// stream i, so results do not depend on thread scheduling.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "domcone/symmat.hpp"

namespace domcone {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Standard normal via Box-Muller.
    double normal() noexcept;

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Gaussian orthogonal ensemble draw: off-diagonal N(0, 1/2), diagonal N(0, 1).
SymMatrix sample_goe(RandomStream& rng, std::size_t n);

/// GOE draw rescaled so that ||X||_inf == radius exactly.
SymMatrix sample_goe_normalized(RandomStream& rng, std::size_t n, double radius = 1.0);

/// Negative semidefinite -G G^T / n with Gaussian G; rank drawn in [1, n].
SymMatrix sample_nsd(RandomStream& rng, std::size_t n);

/// Positive semidefinite with trace 1, random rank in [1, n].
SymMatrix sample_psd_unit_trace(RandomStream& rng, std::size_t n);

/// Haar-ish orthogonal matrix: Gram-Schmidt on a Gaussian matrix.
SquareMatrix sample_orthogonal(RandomStream& rng, std::size_t n);

std::vector<double> sample_unit_vector(RandomStream& rng, std::size_t n);

/// Random well-conditioned invertible map (orthogonal times a diagonal in [0.5, 2]).
InvertibleMap sample_invertible(RandomStream& rng, std::size_t n);

} // namespace domcone
