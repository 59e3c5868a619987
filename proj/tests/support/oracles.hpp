#pragma once

// Reference computations for the tests. None of these reuse library
// numerics beyond the matrix containers.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <domcone/symmat.hpp>

namespace oracle {

/// Ascending roots of lambda^2 - tr lambda + det.
inline std::pair<double, double> eig2(const domcone::SymMatrix& x) {
    const double a = x(0, 0), b = x(0, 1), d = x(1, 1);
    const double half_tr = 0.5 * (a + d);
    const double disc = std::hypot(0.5 * (a - d), b);
    return {half_tr - disc, half_tr + disc};
}

/// Cofactor expansion along the first row.
inline double det(const std::vector<double>& a, std::size_t n) {
    if (n == 1) return a[0];
    double s = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<double> minor;
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) minor.push_back(a[i * n + j]);
        s += ((c % 2) ? -1.0 : 1.0) * a[c] * det(minor, n - 1);
    }
    return s;
}

inline double det(const domcone::SymMatrix& x) {
    return det(std::vector<double>(x.data().begin(), x.data().end()), x.dim());
}

/// sqrt of the top eigenvalue of X^2 by power iteration: max |lambda_i(X)|.
inline double spectral_radius(const domcone::SymMatrix& x, int iters = 3000) {
    const std::size_t n = x.dim();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.37 * static_cast<double>(i) * (i % 2 ? -1.0 : 1.0);
    auto mul = [&](const std::vector<double>& u) {
        std::vector<double> w(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) w[i] += x(i, j) * u[j];
        return w;
    };
    double rq = 0.0;
    for (int k = 0; k < iters; ++k) {
        auto w = mul(mul(v));
        const double nw = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
        if (nw == 0.0) return 0.0;
        rq = std::inner_product(v.begin(), v.end(), w.begin(), 0.0) /
             std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
    }
    return std::sqrt(rq);
}

/// max over permutations sigma of sum_i a_sigma(i) x_i.
inline double max_permuted_pairing(std::vector<double> a, const std::vector<double>& x) {
    std::sort(a.begin(), a.end());
    double best = -std::numeric_limits<double>::infinity();
    do {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
        best = std::max(best, s);
    } while (std::next_permutation(a.begin(), a.end()));
    return best;
}

using Field = std::function<double(const std::vector<double>&)>;

inline std::vector<double> fd_gradient(const Field& f, const std::vector<double>& x, double h) {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (f(xp) - f(xm)) / (2.0 * h);
    }
    return g;
}

/// Fourth-order central differences for second derivatives.
inline std::vector<double> fd_hessian(const Field& f, const std::vector<double>& x, double h) {
    const std::size_t n = x.size();
    std::vector<double> H(n * n);
    auto at = [&](std::size_t i, double di, std::size_t j, double dj) {
        auto y = x;
        y[i] += di;
        y[j] += dj;
        return f(y);
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                H[i * n + i] = (-at(i, 2 * h, i, 0) + 16 * at(i, h, i, 0) - 30 * f(x) + 16 * at(i, -h, i, 0) -
                                at(i, -2 * h, i, 0)) /
                               (12.0 * h * h);
            } else {
                H[i * n + j] = (at(i, h, j, h) - at(i, h, j, -h) - at(i, -h, j, h) + at(i, -h, j, -h)) / (4.0 * h * h);
            }
        }
    }
    return H;
}

/// Composite Simpson rule with m (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int m) {
    const double h = (b - a) / m;
    double s = f(a) + f(b);
    for (int k = 1; k < m; ++k) s += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// Surface measure of S^{n-1} = n |B_1| with |B_1| by hit-or-miss in [-1,1]^n.
inline double mc_sphere_measure(std::size_t n, std::size_t samples, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::size_t hits = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = u(gen);
            r2 += v * v;
        }
        hits += r2 <= 1.0;
    }
    return static_cast<double>(n) * std::pow(2.0, static_cast<double>(n)) * static_cast<double>(hits) /
           static_cast<double>(samples);
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

} // namespace oracle
