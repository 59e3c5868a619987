#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include <domcone/random.hpp>
#include <domcone/symmat.hpp>

#include "oracles.hpp"

using namespace domcone;

namespace {

SymMatrix random_sym(std::uint64_t seed, std::size_t i, std::size_t n) {
    RandomStream rng(seed, i);
    return sample_goe(rng, n) * rng.uniform(0.1, 10.0);
}

std::size_t dim_for(std::size_t i) { return 2 + i % 5; }

} // namespace

TEST(SymMatrix, RejectsDimensionsOutsideRange) {
    EXPECT_THROW(SymMatrix(1), Error);
    EXPECT_THROW(SymMatrix(17), Error);
    try {
        SymMatrix x(1);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::dimension_mismatch);
    }
    EXPECT_NO_THROW(SymMatrix(16));
}

TEST(SymMatrix, SymmetrizesOnConstruction) {
    const std::vector<double> a{1.0, 2.0, 4.0, 3.0};
    const SymMatrix x(2, a);
    EXPECT_DOUBLE_EQ(x(0, 1), 3.0);
    EXPECT_DOUBLE_EQ(x(1, 0), 3.0);
}

TEST(SymMatrix, RejectsNonFiniteEntries) {
    const std::vector<double> a{1.0, std::numeric_limits<double>::quiet_NaN(), 0.0, 1.0};
    EXPECT_THROW(SymMatrix(2, a), Error);
}

TEST(Eigen, DiagonalInput) {
    const Spectrum s = eigvals_sym(SymMatrix::diagonal({3.0, -1.0, 2.0}));
    ASSERT_EQ(s.size(), 3u);
    EXPECT_DOUBLE_EQ(s[0], -1.0);
    EXPECT_DOUBLE_EQ(s[1], 2.0);
    EXPECT_DOUBLE_EQ(s[2], 3.0);
}

TEST(Eigen, SwapMatrix) {
    const std::vector<double> a{0.0, 1.0, 1.0, 0.0};
    const Spectrum s = eigvals_sym(SymMatrix(2, a));
    EXPECT_NEAR(s[0], -1.0, 1e-15);
    EXPECT_NEAR(s[1], 1.0, 1e-15);
}

TEST(Eigen, TwoByTwoMatchesQuadraticRoots) {
    for (std::size_t i = 0; i < 300; ++i) {
        const SymMatrix x = random_sym(11, i, 2);
        const auto [lo, hi] = oracle::eig2(x);
        const Spectrum s = eigvals_sym(x);
        const double scale = 1.0 + x.max_abs();
        EXPECT_NEAR(s[0], lo, 1e-13 * scale);
        EXPECT_NEAR(s[1], hi, 1e-13 * scale);
    }
}

TEST(Eigen, TraceDeterminantAndReconstruction) {
    for (std::size_t i = 0; i < 1000; ++i) {
        const std::size_t n = dim_for(i);
        const SymMatrix x = random_sym(12, i, n);
        const EigenDecomposition e = eigh(x);
        const double norm = inf_norm(x);
        EXPECT_NEAR(e.spectrum.sum(), x.trace(), 1e-10 * (1.0 + norm));
        for (std::size_t k = 0; k + 1 < n; ++k) EXPECT_LE(e.spectrum[k], e.spectrum[k + 1] + 1e-12);
        if (n <= 4) {
            double prod = 1.0;
            for (double v : e.spectrum.values) prod *= v;
            const double d = oracle::det(x);
            EXPECT_LE(std::abs(prod - d), 1e-8 * std::max(std::abs(d), std::pow(norm, static_cast<double>(n)) * 1e-3))
                << "sample " << i;
        }
        // V diag(lambda) V^T = X and V^T V = I.
        double resid = 0.0, orth = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                double s = 0.0, o = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    s += e.vectors(r, k) * e.spectrum[k] * e.vectors(c, k);
                    o += e.vectors(k, r) * e.vectors(k, c);
                }
                resid = std::max(resid, std::abs(s - x(r, c)));
                orth = std::max(orth, std::abs(o - (r == c ? 1.0 : 0.0)));
            }
        }
        EXPECT_LE(resid, 1e-9 * (1.0 + norm));
        EXPECT_LE(orth, 1e-12);
    }
}

TEST(Eigen, CustomThresholdAndValidation) {
    const SymMatrix x = random_sym(13, 0, 5);
    const EigenDecomposition loose = eigh(x, 1e-4);
    const EigenDecomposition tight = eigh(x);
    EXPECT_LE(loose.sweeps, tight.sweeps);
    for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(loose.spectrum[k], tight.spectrum[k], 1e-3 * (1 + x.max_abs()));
    EXPECT_THROW(eigh(x, 0.0), Error);
}

TEST(Eigen, WeylMonotonicity) {
    for (std::size_t i = 0; i < 1000; ++i) {
        const std::size_t n = dim_for(i);
        RandomStream rng(14, i);
        const SymMatrix x = sample_goe(rng, n);
        const SymMatrix nsd = sample_nsd(rng, n) * rng.uniform(0.0, 3.0);
        ASSERT_TRUE(is_psd(-nsd));
        const Spectrum a = eigvals_sym(x + nsd);
        const Spectrum b = eigvals_sym(x);
        for (std::size_t k = 0; k < n; ++k) EXPECT_LE(a[k], b[k] + 1e-10);
    }
}

TEST(Inner, Examples) {
    const SymMatrix d = SymMatrix::diagonal({1.0, 2.0, 3.0});
    EXPECT_DOUBLE_EQ(inner(SymMatrix::identity(3), d), 6.0);
    const SymMatrix a = random_sym(15, 0, 3);
    EXPECT_DOUBLE_EQ(inner(a, SymMatrix::zero(3)), 0.0);
    const std::vector<double> e1{1.0, 0.0, 0.0};
    EXPECT_DOUBLE_EQ(inner(SymMatrix::outer(e1), a), a(0, 0));
    EXPECT_THROW(inner(a, SymMatrix::zero(2)), Error);
}

TEST(Inner, SymmetricBilinearAndTrace) {
    for (std::size_t i = 0; i < 200; ++i) {
        const std::size_t n = dim_for(i);
        const SymMatrix a = random_sym(16, 2 * i, n), b = random_sym(16, 2 * i + 1, n);
        EXPECT_NEAR(inner(a, b), inner(b, a), 1e-12 * (1 + a.max_abs() * b.max_abs()));
        EXPECT_NEAR(inner(SymMatrix::identity(n), a), a.trace(), 1e-12 * (1 + a.max_abs()));
        EXPECT_NEAR(inner(a * 2.0 + b, b), 2.0 * inner(a, b) + inner(b, b), 1e-10 * (1 + inner(b, b)));
    }
}

TEST(Norms, InfNormExamples) {
    EXPECT_DOUBLE_EQ(inf_norm(SymMatrix::diagonal({-3.0, 1.0})), 3.0);
    EXPECT_DOUBLE_EQ(inf_norm(SymMatrix::identity(4)), 1.0);
    EXPECT_DOUBLE_EQ(inf_norm(SymMatrix::zero(3)), 0.0);
}

TEST(Norms, InfNormMatchesPowerIteration) {
    for (std::size_t i = 0; i < 200; ++i) {
        const SymMatrix x = random_sym(17, i, dim_for(i));
        EXPECT_NEAR(inf_norm(x), oracle::spectral_radius(x), 1e-8 * (1 + inf_norm(x))) << "sample " << i;
    }
}

TEST(Norms, InfNormIsANorm) {
    for (std::size_t i = 0; i < 1000; ++i) {
        const std::size_t n = dim_for(i);
        RandomStream rng(18, i);
        const SymMatrix x = sample_goe(rng, n), y = sample_goe(rng, n);
        const double c = rng.uniform(-5.0, 5.0);
        EXPECT_LE(inf_norm(x + y), inf_norm(x) + inf_norm(y) + 1e-12);
        EXPECT_NEAR(inf_norm(x * c), std::abs(c) * inf_norm(x), 1e-12 * (1 + inf_norm(x)));
        EXPECT_GT(inf_norm(x), 0.0);
    }
}

TEST(Norms, OneNormExamples) {
    EXPECT_DOUBLE_EQ(one_norm(SymMatrix::diagonal({-3.0, 1.0})), 4.0);
    EXPECT_DOUBLE_EQ(one_norm(SymMatrix::identity(5)), 5.0);
    for (std::size_t i = 0; i < 100; ++i) {
        RandomStream rng(19, i);
        const SymMatrix p = sample_psd_unit_trace(rng, dim_for(i)) * 3.0;
        EXPECT_NEAR(one_norm(p), p.trace(), 1e-12);
        const SymMatrix x = sample_goe(rng, dim_for(i));
        EXPECT_GE(one_norm(x), inf_norm(x));
    }
}

TEST(Loewner, Examples) {
    const SymMatrix z = SymMatrix::zero(3), id = SymMatrix::identity(3);
    EXPECT_TRUE(loewner_leq(z, id, 1e-9));
    EXPECT_FALSE(loewner_leq(id, z, 1e-9));
    for (std::size_t i = 0; i < 200; ++i) {
        RandomStream rng(20, i);
        const std::size_t n = dim_for(i);
        const SymMatrix x = sample_goe(rng, n);
        std::vector<double> v(n);
        for (double& c : v) c = rng.normal();
        EXPECT_TRUE(loewner_leq(x, x + SymMatrix::outer(v), 1e-9));
    }
}

TEST(Loewner, ToleranceIsHonored) {
    const SymMatrix x = SymMatrix::identity(2).plus_identity(-1.0 - 5e-10);
    EXPECT_TRUE(loewner_leq(SymMatrix::zero(2), x, 1e-9));
    EXPECT_FALSE(loewner_leq(SymMatrix::zero(2), x, 1e-10));
}

TEST(Congruence, Examples) {
    RandomStream rng(21, 0);
    const SymMatrix x = sample_goe(rng, 3);
    EXPECT_EQ(congruence(x, InvertibleMap::identity(3)), x);
    const InvertibleMap b = sample_invertible(rng, 3);
    const SymMatrix btb = congruence(SymMatrix::identity(3), b);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) s += b.matrix()(k, i) * b.matrix()(k, j);
            EXPECT_NEAR(btb(i, j), s, 1e-13);
        }
    EXPECT_THROW(congruence(SymMatrix::zero(2), b), Error);
}

TEST(Congruence, InertiaAndOrderPreserved) {
    for (std::size_t i = 0; i < 300; ++i) {
        RandomStream rng(22, i);
        const std::size_t n = dim_for(i);
        const InvertibleMap b = sample_invertible(rng, n);
        // Random signature with eigenvalues away from 0.
        std::vector<double> d(n);
        for (double& v : d) v = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 2.0);
        const SymMatrix x = congruence(SymMatrix::diagonal(d), sample_orthogonal(rng, n));
        const Inertia a = inertia(x, 1e-9), c = inertia(congruence(x, b), 1e-9);
        EXPECT_EQ(a.negative, c.negative);
        EXPECT_EQ(a.positive, c.positive);
        EXPECT_EQ(a.zero, c.zero);
        const SymMatrix y = x + sample_psd_unit_trace(rng, n);
        EXPECT_TRUE(loewner_leq(congruence(x, b), congruence(y, b), 1e-9));
        EXPECT_LE((inverse_congruence(congruence(x, b), b) - x).max_abs(), 1e-10);
    }
}

TEST(InvertibleMap, RejectsSingular) {
    const std::vector<double> a{1.0, 2.0, 2.0, 4.0};
    try {
        InvertibleMap b{SquareMatrix(2, a)};
        FAIL() << "singular map accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::singular_map);
    }
    const std::vector<double> tiny{1e-6, 0.0, 0.0, 1e-5};
    EXPECT_THROW(InvertibleMap{SquareMatrix(2, tiny)}, Error);
}

TEST(InvertibleMap, ConditionEstimate) {
    const std::vector<double> a{2.0, 0.0, 0.0, 0.5};
    const InvertibleMap b{SquareMatrix(2, a)};
    EXPECT_DOUBLE_EQ(b.condition_estimate(), 4.0);
    EXPECT_DOUBLE_EQ(InvertibleMap::identity(4).condition_estimate(), 1.0);
}

TEST(SquareMatrix, DeterminantAgainstCofactors) {
    for (std::size_t i = 0; i < 100; ++i) {
        RandomStream rng(23, i);
        const std::size_t n = 2 + i % 4;
        std::vector<double> a(n * n);
        for (double& v : a) v = rng.normal();
        EXPECT_NEAR(SquareMatrix(n, a).determinant(), oracle::det(a, n), 1e-11);
    }
}
