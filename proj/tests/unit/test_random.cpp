#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include <domcone/parallel.hpp>
#include <domcone/random.hpp>

using namespace domcone;

TEST(RandomStream, ReproducibleAndStreamSeparated) {
    RandomStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
    for (int k = 0; k < 100; ++k) {
        const auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        EXPECT_NE(x, c.next_u64());
        EXPECT_NE(x, d.next_u64());
    }
}

TEST(RandomStream, UniformAndNormalMoments) {
    RandomStream rng(1, 0);
    constexpr int kN = 200000;
    double su = 0, sn = 0, sn2 = 0;
    for (int k = 0; k < kN; ++k) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        su += u;
        const double z = rng.normal();
        sn += z;
        sn2 += z * z;
    }
    EXPECT_NEAR(su / kN, 0.5, 5e-3);
    EXPECT_NEAR(sn / kN, 0.0, 1e-2);
    EXPECT_NEAR(sn2 / kN, 1.0, 1.5e-2);
}

TEST(Samplers, Shapes) {
    for (std::size_t i = 0; i < 200; ++i) {
        RandomStream rng(2, i);
        const std::size_t n = 2 + i % 5;
        EXPECT_NEAR(inf_norm(sample_goe_normalized(rng, n, 3.5)), 3.5, 1e-12);
        const SymMatrix nsd = sample_nsd(rng, n);
        EXPECT_TRUE(is_psd(-nsd));
        const SymMatrix psd = sample_psd_unit_trace(rng, n);
        EXPECT_TRUE(is_psd(psd));
        EXPECT_NEAR(psd.trace(), 1.0, 1e-12);
        const SquareMatrix q = sample_orthogonal(rng, n);
        const SquareMatrix qtq = q.transposed() * q;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) EXPECT_NEAR(qtq(r, c), r == c ? 1.0 : 0.0, 1e-13);
        const auto v = sample_unit_vector(rng, n);
        double s = 0;
        for (double x : v) s += x * x;
        EXPECT_NEAR(s, 1.0, 1e-14);
        EXPECT_GT(std::abs(sample_invertible(rng, n).matrix().determinant()), 1e-10);
    }
}

TEST(Parallel, VisitsEveryIndexOnce) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Parallel, RethrowsLowestFailingIndex) {
    try {
        parallel_for(100, [](std::size_t i) {
            if (i == 17 || i == 80) throw std::runtime_error("index " + std::to_string(i));
        });
        FAIL() << "no exception";
    } catch (const std::runtime_error& e) {
        EXPECT_STREQ(e.what(), "index 17");
    }
}

TEST(Parallel, ThreadCapFromEnvironment) {
    ::setenv("DOMCONE_THREADS", "1", 1);
    EXPECT_EQ(worker_count(), 1u);
    ::unsetenv("DOMCONE_THREADS");
    EXPECT_GE(worker_count(), 1u);
}
