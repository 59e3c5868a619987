#include "domcone/random.hpp"

#include <cmath>
#include <numbers>

namespace domcone {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(splitmix64(seed ^ splitmix64(stream + 0xD1B54A32D192ED03ULL))) {}

std::uint64_t RandomStream::next_u64() noexcept {
    return splitmix64(key_ + (counter_++) * 0x9E3779B97F4A7C15ULL);
}

double RandomStream::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
}

SymMatrix sample_goe(RandomStream& rng, std::size_t n) {
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i * n + i] = rng.normal();
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = rng.normal() * std::numbers::sqrt2 / 2.0;
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    }
    return SymMatrix(n, a);
}

SymMatrix sample_goe_normalized(RandomStream& rng, std::size_t n, double radius) {
    for (;;) {
        SymMatrix x = sample_goe(rng, n);
        const double norm = inf_norm(x);
        if (norm > 1e-8) return x * (radius / norm);
    }
}

SymMatrix sample_nsd(RandomStream& rng, std::size_t n) {
    const std::size_t rank = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
    SymMatrix acc(n);
    for (std::size_t r = 0; r < rank && r < n; ++r) {
        std::vector<double> v(n);
        for (double& e : v) e = rng.normal();
        acc = acc - SymMatrix::outer(v);
    }
    return acc / static_cast<double>(n);
}

SymMatrix sample_psd_unit_trace(RandomStream& rng, std::size_t n) {
    SymMatrix nsd = sample_nsd(rng, n);
    while (nsd.trace() > -1e-6) nsd = sample_nsd(rng, n);
    return nsd / nsd.trace();
}

SquareMatrix sample_orthogonal(RandomStream& rng, std::size_t n) {
    for (;;) {
        SquareMatrix q(n);
        bool ok = true;
        for (std::size_t c = 0; c < n && ok; ++c) {
            std::vector<double> v(n);
            for (double& e : v) e = rng.normal();
            // Modified Gram-Schmidt, twice for stability.
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t k = 0; k < c; ++k) {
                    double d = 0.0;
                    for (std::size_t i = 0; i < n; ++i) d += q(i, k) * v[i];
                    for (std::size_t i = 0; i < n; ++i) v[i] -= d * q(i, k);
                }
            }
            double norm = 0.0;
            for (double e : v) norm += e * e;
            norm = std::sqrt(norm);
            if (norm < 1e-8) {
                ok = false;
                break;
            }
            for (std::size_t i = 0; i < n; ++i) q(i, c) = v[i] / norm;
        }
        if (ok) return q;
    }
}

std::vector<double> sample_unit_vector(RandomStream& rng, std::size_t n) {
    for (;;) {
        std::vector<double> v(n);
        double norm = 0.0;
        for (double& e : v) {
            e = rng.normal();
            norm += e * e;
        }
        norm = std::sqrt(norm);
        if (norm < 1e-12) continue;
        for (double& e : v) e /= norm;
        return v;
    }
}

InvertibleMap sample_invertible(RandomStream& rng, std::size_t n) {
    SquareMatrix q = sample_orthogonal(rng, n);
    SquareMatrix d(n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = rng.uniform(0.5, 2.0);
    return InvertibleMap(q * d);
}

} // namespace domcone
