#include "domcone/acdo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "domcone/parallel.hpp"
#include "domcone/random.hpp"
#include "sampled.hpp"

namespace domcone {

namespace detail {

PropertyReport run_sampled(std::string name, std::size_t samples,
                           const std::function<SampleOutcome(std::size_t)>& body) {
    std::vector<SampleOutcome> out(samples);
    parallel_for(samples, [&](std::size_t i) { out[i] = body(i); });
    PropertyReport rep;
    rep.name = std::move(name);
    rep.samples = samples;
    for (auto& o : out) {
        rep.worst = std::max(rep.worst, o.worst);
        for (auto& v : o.violations) rep.violations.push_back(std::move(v));
    }
    return rep;
}

} // namespace detail

using detail::run_sampled;
using detail::SampleOutcome;

EllipticSetOracle oracle_from_operator(const OperatorSpec& spec, double tol) {
    EllipticSetOracle o;
    o.n = spec.dim();
    o.description = spec.describe();
    auto shared = std::make_shared<const OperatorSpec>(spec);
    o.member = [shared, tol](const SymMatrix& x) { return sublevel_member(*shared, x, tol); };

    const SymMatrix zero = SymMatrix::zero(o.n);
    for (double t = 1.0; t <= 1e15; t *= 2.0) {
        if (!o.inside_witness && o.member(zero.plus_identity(-t))) o.inside_witness = zero.plus_identity(-t);
        if (!o.outside_witness && !o.member(zero.plus_identity(t))) o.outside_witness = zero.plus_identity(t);
        if (o.inside_witness && o.outside_witness) break;
    }
    return o;
}

bool witnesses_consistent(const EllipticSetOracle& oracle) {
    if (oracle.inside_witness && !oracle.member(*oracle.inside_witness)) return false;
    if (oracle.outside_witness && oracle.member(*oracle.outside_witness)) return false;
    return true;
}

AcdoResult acdo_eval(const EllipticSetOracle& oracle, const SymMatrix& x, const AcdoOptions& opts) {
    require_same_dim(oracle.n, x.dim(), "acdo_eval");
    auto member_at = [&](double t) { return oracle.member(x.plus_identity(t)); };

    double t_in = 0.0;
    double t_out = 0.0;
    if (member_at(0.0)) {
        for (double step = 1.0;; step *= 2.0) {
            if (step > opts.bracket_cap) {
                throw NonProperError(NonProperError::Side::no_outsider,
                                     "no non-member found on X + tI for t up to 1e15 (" + oracle.description + ")");
            }
            if (member_at(step)) {
                t_in = step;
            } else {
                t_out = step;
                break;
            }
        }
    } else {
        for (double step = 1.0;; step *= 2.0) {
            if (step > opts.bracket_cap) {
                throw NonProperError(NonProperError::Side::no_member,
                                     "no member found on X + tI for t down to -1e15 (" + oracle.description + ")");
            }
            if (member_at(-step)) {
                t_in = -step;
                break;
            }
            t_out = -step;
        }
    }

    int it = 0;
    while (t_out - t_in > opts.tol && it < opts.max_iterations) {
        const double mid = t_in + 0.5 * (t_out - t_in);
        if (mid <= t_in || mid >= t_out) break; // bracket at floating-point resolution
        if (member_at(mid)) t_in = mid;
        else t_out = mid;
        ++it;
    }

    // Membership along the line must be an interval (-inf, t*]. Probe one
    // bracket width further on either side.
    const double reach = std::max(1.0, t_out - t_in);
    if (!member_at(t_in - reach) || member_at(t_out + reach)) {
        std::ostringstream os;
        os.precision(17);
        os << "membership along X + tI is not an interval near t in [" << t_in << ", " << t_out
           << "]; the oracle is not elliptic (" << oracle.description << ")";
        throw Error(ErrorCode::non_monotone_set, os.str());
    }

    return AcdoResult{-(t_in + 0.5 * (t_out - t_in)), t_in, t_out, it};
}

double acdo_halfspace_closed_form(const SymMatrix& A, double m, const SymMatrix& x) {
    const double tr = A.trace();
    if (!(tr > 0.0)) throw Error(ErrorCode::invalid_argument, "half-space normal needs tr A > 0");
    return inner(A, x) / tr - m / tr;
}

namespace {

SymMatrix sample_point(RandomStream& rng, std::size_t n) {
    return sample_goe_normalized(rng, n, rng.uniform(0.25, 4.0));
}

} // namespace

PropertyReport check_nondegeneracy(const EllipticSetOracle& oracle, std::size_t samples, std::uint64_t seed,
                                   const AcdoOptions& opts) {
    static constexpr std::array<double, 4> kTaus{-10.0, -1.0, 0.1, 7.0};
    const double limit = 3.0 * opts.tol;
    return run_sampled("nondegeneracy", samples, [&](std::size_t i) {
        RandomStream rng(seed, i);
        const SymMatrix x = sample_point(rng, oracle.n);
        const double base = acdo(oracle, x, opts);
        SampleOutcome o;
        for (double tau : kTaus) {
            const double d = std::abs(acdo(oracle, x.plus_identity(tau), opts) - base - tau);
            o.worst = std::max(o.worst, d);
            if (d > limit) o.violations.push_back({i, "Fbar(X + tau I) - Fbar(X) != tau at tau = " + std::to_string(tau), d});
        }
        return o;
    });
}

PropertyReport check_lipschitz(const EllipticSetOracle& oracle, std::size_t samples, std::uint64_t seed,
                               const AcdoOptions& opts) {
    const double slack = 3.0 * opts.tol;
    return run_sampled("lipschitz", samples, [&](std::size_t i) {
        RandomStream rng(seed, i);
        const SymMatrix x = sample_point(rng, oracle.n);
        // Alternate between far pairs and nearby pairs.
        const SymMatrix e = sample_goe_normalized(rng, oracle.n, i % 2 == 0 ? rng.uniform(0.1, 4.0) : 1e-3);
        const SymMatrix y = x + e;
        const double lhs = std::abs(acdo(oracle, x, opts) - acdo(oracle, y, opts));
        const double rhs = inf_norm(x - y);
        SampleOutcome o;
        o.worst = std::max(0.0, lhs - rhs);
        if (lhs > rhs + slack) o.violations.push_back({i, "|Fbar(X) - Fbar(Y)| > ||X - Y||_inf", lhs - rhs});
        return o;
    });
}

std::vector<PropertyReport> check_structure(const EllipticSetOracle& oracle, StructureFlags flags,
                                            std::size_t samples, std::uint64_t seed, const AcdoOptions& opts) {
    const double slack = 3.0 * opts.tol;
    const std::size_t n = oracle.n;
    const std::string falsified = "violations falsify the asserted structural flag, not the acdo evaluation";
    std::vector<PropertyReport> reps;

    if (flags.convex || flags.concave_complement) {
        auto midpoint = [&](std::size_t i) {
            RandomStream rng(seed, i);
            const SymMatrix x = sample_point(rng, n);
            const SymMatrix y = sample_point(rng, n);
            const double mid = acdo(oracle, (x + y) * 0.5, opts);
            const double avg = 0.5 * (acdo(oracle, x, opts) + acdo(oracle, y, opts));
            return std::pair{mid, avg};
        };
        if (flags.convex) {
            auto rep = run_sampled("convexity", samples, [&](std::size_t i) {
                const auto [mid, avg] = midpoint(i);
                SampleOutcome o;
                o.worst = std::max(0.0, mid - avg);
                if (mid > avg + slack) o.violations.push_back({i, "midpoint convexity fails", mid - avg});
                return o;
            });
            rep.note = falsified;
            reps.push_back(std::move(rep));
        }
        if (flags.concave_complement) {
            auto rep = run_sampled("concavity", samples, [&](std::size_t i) {
                const auto [mid, avg] = midpoint(i);
                SampleOutcome o;
                o.worst = std::max(0.0, avg - mid);
                if (mid < avg - slack) o.violations.push_back({i, "midpoint concavity fails", avg - mid});
                return o;
            });
            rep.note = falsified;
            reps.push_back(std::move(rep));
        }
    }

    if (flags.cone) {
        auto rep = run_sampled("positive_homogeneity", samples, [&](std::size_t i) {
            RandomStream rng(seed, i);
            const SymMatrix x = sample_point(rng, n);
            const double base = acdo(oracle, x, opts);
            SampleOutcome o;
            for (double c : {0.5, 2.0}) {
                const double d = std::abs(acdo(oracle, x * c, opts) - c * base);
                o.worst = std::max(o.worst, d);
                if (d > slack) o.violations.push_back({i, "Fbar(cX) != c Fbar(X) at c = " + std::to_string(c), d});
            }
            return o;
        });
        rep.note = falsified;
        reps.push_back(std::move(rep));
    }

    if (flags.rot_invariant) {
        auto rep = run_sampled("rotational_invariance", samples, [&](std::size_t i) {
            RandomStream rng(seed, i);
            const SymMatrix x = sample_point(rng, n);
            const SymMatrix rx = congruence(x, sample_orthogonal(rng, n));
            const double d = std::abs(acdo(oracle, rx, opts) - acdo(oracle, x, opts));
            SampleOutcome o;
            o.worst = d;
            if (d > slack) o.violations.push_back({i, "Fbar(Q^T X Q) != Fbar(X)", d});
            return o;
        });
        rep.note = falsified;
        reps.push_back(std::move(rep));
    }
    return reps;
}

PropertyReport check_downward_closed(const EllipticSetOracle& oracle, std::size_t samples, std::uint64_t seed) {
    return run_sampled("downward_closed", samples, [&](std::size_t i) {
        RandomStream rng(seed, i);
        const SymMatrix x = sample_point(rng, oracle.n);
        const SymMatrix nsd = sample_nsd(rng, oracle.n) * rng.uniform(0.01, 4.0);
        SampleOutcome o;
        if (oracle.member(x) && !oracle.member(x + nsd)) {
            o.worst = 1.0;
            o.violations.push_back({i, "member(X) but not member(X + N) for N <= 0", 1.0});
        }
        return o;
    });
}

} // namespace domcone
