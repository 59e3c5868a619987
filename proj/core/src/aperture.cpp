#include "domcone/aperture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "domcone/operators.hpp"
#include "domcone/random.hpp"

namespace domcone {

ConvexBody dominative_body(std::size_t n, const Exponent& p) {
    std::vector<double> d(n, 0.0);
    if (p.is_infinite()) {
        d[n - 1] = 1.0;
    } else {
        const double pv = p.value();
        const double denom = static_cast<double>(n) + pv - 2.0;
        std::fill(d.begin(), d.end(), 1.0 / denom);
        d[n - 1] = (pv - 1.0) / denom;
    }
    return ConvexBody({SymMatrix::diagonal(d)}, true);
}

ConvexBody pucci_body(std::size_t n, double lam, double Lam) {
    if (!(lam > 0.0) || !(Lam >= lam)) {
        std::ostringstream os;
        os << "Pucci body needs 0 < lam <= Lam (got lam = " << lam << ", Lam = " << Lam << ")";
        throw Error(ErrorCode::invalid_argument, os.str());
    }
    std::vector<SymMatrix> gens;
    gens.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<double> d(n, lam);
        for (std::size_t i = 0; i < k; ++i) d[i] = Lam;
        gens.push_back(SymMatrix::diagonal(d));
    }
    return ConvexBody(std::move(gens), true);
}

namespace {

constexpr double kBisectionTol = 1e-12;
constexpr int kBisectionMaxIter = 200;
constexpr double kPathAgreement = 1e-8;

} // namespace

ApertureResult body_cone_aperture(const ConvexBody& body) {
    const std::size_t n = body.dim();
    const double nd = static_cast<double>(n);
    ApertureResult res;

    // Route 1: minimum of tr A / lambda_n(A) over generators.
    double best = std::numeric_limits<double>::infinity();
    const auto& gens = body.generators();
    const auto& spectra = body.generator_spectra();
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const double ratio = gens[k].trace() / spectra[k].max();
        if (ratio < best) {
            best = ratio;
            res.argmin_index = k;
        }
    }
    res.alpha = std::clamp(best, 1.0, nd);
    res.c = gens[res.argmin_index].trace();
    res.p = p_from_alpha(n, res.alpha);

    if (!body.rot_closed()) {
        res.lower_bound_only = true;
        res.alpha_bisection = res.alpha;
        return res;
    }

    // Route 2: a -> G(Lambda_a) = max_A (a lambda_n(A) - tr A) is nondecreasing
    // with its unique zero crossing at alpha.
    auto g = [&](double a) { return eval_support(lambda_alpha(n, a), body); };
    double lo = 1.0;
    double hi = nd;
    if (g(lo) >= 0.0) {
        res.alpha_bisection = lo;
    } else {
        int it = 0;
        while (hi - lo > kBisectionTol && it < kBisectionMaxIter) {
            const double mid = 0.5 * (lo + hi);
            if (g(mid) >= 0.0) hi = mid;
            else lo = mid;
            ++it;
        }
        res.bisection_iterations = it;
        res.alpha_bisection = 0.5 * (lo + hi);
    }

    if (std::abs(res.alpha_bisection - res.alpha) > kPathAgreement) {
        std::ostringstream os;
        os.precision(17);
        os << "aperture routes disagree: generator minimum " << res.alpha << " vs bisection root "
           << res.alpha_bisection << " (body is not consistent with rotation closure)";
        throw Error(ErrorCode::aperture_inconsistent, os.str());
    }
    return res;
}

MinimalBoundReport minimal_bound_check(const ConvexBody& body, std::size_t samples, std::uint64_t seed) {
    constexpr double kSlack = 1e-9;
    constexpr double kEqualityTol = 1e-6;
    constexpr std::size_t kSharpnessProbes = 8;

    const std::size_t n = body.dim();
    MinimalBoundReport rep;
    rep.aperture = body_cone_aperture(body);
    rep.samples = samples;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    const double c = rep.aperture.c;
    const Exponent p = rep.aperture.p;

    for (std::size_t i = 0; i < samples; ++i) {
        RandomStream rng(seed, i);
        const SymMatrix x = sample_goe_normalized(rng, n);
        const double margin = eval_support(x, body) - c * eval_dominative(x, p);
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.tightest_index = i;
            rep.tightest_x.assign(x.data().begin(), x.data().end());
        }
        if (margin < -kSlack) rep.violations.push_back({i, "c F_p(X) > G(X)", -margin});
    }

    const SymMatrix la = lambda_alpha(n, rep.aperture.alpha);
    rep.best_equality_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < kSharpnessProbes; ++k) {
        RandomStream rng(seed, samples + k);
        const SymMatrix x = congruence(la, sample_orthogonal(rng, n));
        const double margin = eval_support(x, body) - c * eval_dominative(x, p);
        ++rep.sharpness_probes;
        rep.best_equality_gap = std::min(rep.best_equality_gap, std::abs(margin));
        if (std::abs(margin) <= kEqualityTol) ++rep.equality_hits;
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.tightest_index = samples + k;
            rep.tightest_x.assign(x.data().begin(), x.data().end());
        }
        if (margin < -kSlack) rep.violations.push_back({samples + k, "c F_p(X) > G(X) at rotated Lambda_alpha", -margin});
    }
    return rep;
}

std::vector<double> PermutationDecomposition::apply(std::span<const double> a) const {
    std::vector<double> out(a.size(), 0.0);
    for (std::size_t k = 0; k < permutations.size(); ++k) {
        const auto& perm = permutations[k];
        require_same_dim(perm.size(), a.size(), "PermutationDecomposition::apply");
        for (std::size_t i = 0; i < a.size(); ++i) out[i] += weights[k] * a[perm[i]];
    }
    return out;
}

std::vector<double> p_vector(std::size_t n, const Exponent& p) {
    std::vector<double> v(n, 0.0);
    if (p.is_infinite()) {
        v[n - 1] = 1.0;
        return v;
    }
    const double pv = p.value();
    const double denom = static_cast<double>(n) + pv - 2.0;
    std::fill(v.begin(), v.end(), 1.0 / denom);
    v[n - 1] = (pv - 1.0) / denom;
    return v;
}

PermutationDecomposition perc_weights(std::span<const double> a, std::span<const double> p_vec) {
    constexpr double kTol = 1e-12;
    const std::size_t n = a.size();
    if (n < 2 || p_vec.size() != n) {
        throw Error(ErrorCode::dimension_mismatch, "perc_weights needs vectors of equal length n >= 2");
    }
    const std::size_t m = n - 1;

    for (std::size_t i = 1; i < m; ++i) {
        if (std::abs(p_vec[i] - p_vec[0]) > kTol) {
            throw Error(ErrorCode::precondition, "p_vec is not a p-vector: its first n-1 entries differ");
        }
    }
    if (p_vec[m] < p_vec[0] - kTol) {
        throw Error(ErrorCode::precondition, "p_vec is not a p-vector: last entry smaller than the others (p < 2)");
    }
    const double sum_p = std::accumulate(p_vec.begin(), p_vec.end(), 0.0);
    if (std::abs(sum_p - 1.0) > kTol) {
        throw Error(ErrorCode::precondition, "p_vec is not a p-vector: entries do not sum to 1");
    }
    const double sum_a = std::accumulate(a.begin(), a.end(), 0.0);
    if (std::abs(sum_a - sum_p) > kTol) {
        std::ostringstream os;
        os << "sum condition violated: sum(a) = " << sum_a << " but sum(p_vec) = " << sum_p;
        throw Error(ErrorCode::precondition, os.str());
    }
    if (std::abs(a[m] - p_vec[m]) > kTol) {
        std::ostringstream os;
        os << "last-entry condition violated: a_n = " << a[m] << " but p_n = " << p_vec[m];
        throw Error(ErrorCode::precondition, os.str());
    }

    // Cyclic shift P~ on the first n-1 coordinates: (P~^k a)[i] = a[(i - k) mod m].
    PermutationDecomposition dec;
    for (std::size_t k = 1; k <= m; ++k) {
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < m; ++i) perm[i] = (i + m - (k % m)) % m;
        perm[m] = m;
        dec.permutations.push_back(std::move(perm));
        dec.weights.push_back(1.0 / static_cast<double>(m));
    }
    return dec;
}

} // namespace domcone
