#include "domcone/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "domcone/aperture.hpp"
#include "domcone/operators.hpp"
#include "domcone/parallel.hpp"
#include "domcone/random.hpp"

namespace domcone {

EllipticSetOracle conjugate_oracle(const EllipticSetOracle& oracle, const InvertibleMap& b) {
    require_same_dim(oracle.n, b.dim(), "conjugate_oracle");
    EllipticSetOracle out;
    out.n = oracle.n;
    out.member = [inner = oracle.member, b](const SymMatrix& x) { return inner(inverse_congruence(x, b)); };
    if (oracle.inside_witness) out.inside_witness = congruence(*oracle.inside_witness, b);
    if (oracle.outside_witness) out.outside_witness = congruence(*oracle.outside_witness, b);
    out.description = "B^T (" + oracle.description + ") B";
    return out;
}

EllipticSetOracle shift_oracle(const EllipticSetOracle& oracle, const SymMatrix& x0) {
    require_same_dim(oracle.n, x0.dim(), "shift_oracle");
    EllipticSetOracle out;
    out.n = oracle.n;
    out.member = [inner = oracle.member, x0](const SymMatrix& x) { return inner(x - x0); };
    if (oracle.inside_witness) out.inside_witness = *oracle.inside_witness + x0;
    if (oracle.outside_witness) out.outside_witness = *oracle.outside_witness + x0;
    out.description = "(" + oracle.description + ") + X0";
    return out;
}

std::vector<ConeSample> boundary_sample(const EllipticSetOracle& oracle, double radius, std::size_t count,
                                        std::uint64_t seed, const AcdoOptions& opts) {
    constexpr int kMaxDraws = 1000;
    if (!(radius > 0.0)) throw Error(ErrorCode::invalid_argument, "boundary_sample needs a positive radius");

    std::vector<std::optional<ConeSample>> slots(count);
    parallel_for(count, [&](std::size_t i) {
        RandomStream rng(seed, i);
        for (int draw = 0; draw < kMaxDraws; ++draw) {
            const SymMatrix rd = sample_goe_normalized(rng, oracle.n, radius);
            const double v = acdo(oracle, rd, opts);
            SymMatrix raw = rd.plus_identity(-v);
            const double norm = inf_norm(raw);
            if (norm >= radius / 10.0) {
                slots[i] = ConeSample{radius, raw / norm, std::move(raw)};
                return;
            }
        }
        throw Error(ErrorCode::numerical_failure,
                    "boundary_sample: every draw projected to within R/10 of the origin");
    });

    std::vector<ConeSample> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

std::string to_string(InclusionVerdict v) {
    switch (v) {
    case InclusionVerdict::consistent: return "consistent";
    case InclusionVerdict::violated: return "violated";
    case InclusionVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

constexpr double kMinDecayExponent = 0.25;

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

void validate_radii(const std::vector<double>& radii) {
    if (radii.size() < 3) throw Error(ErrorCode::invalid_argument, "check_inclusion needs at least 3 radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0) || !std::isfinite(radii[i]))
            throw Error(ErrorCode::invalid_argument, "radii must be positive and finite");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw Error(ErrorCode::invalid_argument, "radii must be strictly increasing");
    }
    if (std::log10(radii.back() / radii.front()) < 3.0 - 1e-12)
        throw Error(ErrorCode::invalid_argument, "radii must span at least 3 decades");
}

std::string q_statement(std::size_t n, const Exponent& p, double q_upper) {
    std::ostringstream os;
    os.precision(17);
    os << "conditional on inclusion: every viscosity supersolution is W^{1,q}_loc for 0 < q < " << q_upper;
    if (!p.is_infinite() && p.value() == 2.0) {
        os << " (p = 2: asymptotic inclusion alone is not known to suffice; a half-space bound"
              " <X, A> <= m with A > 0 does)";
    } else if (p.is_infinite() || p.value() > static_cast<double>(n)) {
        os << " (p > n: the range is established for p <= n; inclusion in Theta_p also gives inclusion"
              " in Theta_n, hence q < " << static_cast<double>(n) << ")";
    }
    return os.str();
}

} // namespace

InclusionReport check_inclusion(const EllipticSetOracle& oracle, const InvertibleMap& b, const Exponent& p,
                                const std::vector<double>& radii, std::size_t count, std::uint64_t seed,
                                const AcdoOptions& opts) {
    validate_radii(radii);
    if (count == 0) throw Error(ErrorCode::invalid_argument, "check_inclusion needs count >= 1");

    const EllipticSetOracle conj = conjugate_oracle(oracle, b);
    InclusionReport rep;
    rep.n = oracle.n;
    rep.p = p;
    rep.radii = radii;
    rep.count = count;
    rep.zero_floor = 5.0 * opts.tol;

    for (double r : radii) {
        double worst = -std::numeric_limits<double>::infinity();
        for (const ConeSample& s : boundary_sample(conj, r, count, seed, opts)) {
            worst = std::max(worst, eval_dominative(s.direction, p));
        }
        rep.worst_fp.push_back(worst);
    }

    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        lx.push_back(std::log(radii[i]));
        ly.push_back(std::log(std::max(rep.worst_fp[i], rep.zero_floor)));
    }
    rep.trend_slope = least_squares_slope(lx, ly);
    rep.beta = -rep.trend_slope;

    const bool all_zero = std::all_of(rep.worst_fp.begin(), rep.worst_fp.end(),
                                      [&](double w) { return w <= rep.zero_floor; });
    if (all_zero || rep.beta >= kMinDecayExponent) {
        rep.verdict = InclusionVerdict::consistent;
    } else if (rep.worst_fp.back() > 10.0 * rep.zero_floor) {
        rep.verdict = InclusionVerdict::violated;
    } else {
        rep.verdict = InclusionVerdict::inconclusive;
    }

    rep.q_upper = sobolev_threshold(rep.n, p);
    rep.q_statement = q_statement(rep.n, p, rep.q_upper);
    return rep;
}

PropertyReport recession_ray_check(const EllipticSetOracle& oracle, const std::vector<ConeSample>& samples,
                                   double t_max, double slope_tol, const AcdoOptions& opts) {
    if (!oracle.inside_witness) throw Error(ErrorCode::non_proper_set, "recession_ray_check needs an inside witness");
    if (!(t_max >= 1.0)) throw Error(ErrorCode::invalid_argument, "recession_ray_check needs t_max >= 1");
    const SymMatrix& w = *oracle.inside_witness;
    PropertyReport rep;
    rep.name = "recession_rays";
    rep.samples = samples.size();
    rep.worst = -std::numeric_limits<double>::infinity();
    rep.note = "valid only for convex sets; violations falsify the convexity claim or the inclusion";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const SymMatrix& z = samples[i].direction;
        for (double t = 1.0; t <= t_max * (1.0 + 1e-12); t *= 10.0) {
            const SymMatrix y = w + z * t;
            if (oracle.member(y)) continue;
            const double d = acdo(oracle, y, opts);
            if (d > t * slope_tol) rep.violations.push_back({i, "W + tZ leaves Theta at t = " + std::to_string(t), d / t});
        }
        rep.worst = std::max(rep.worst, acdo(oracle, w + z * t_max, opts) / t_max);
    }
    return rep;
}

PairingEstimate sup_pairing_estimate(const EllipticSetOracle& oracle, const InvertibleMap& b,
                                     const Exponent& p_prime, std::size_t samples, std::uint64_t seed,
                                     double radius, const AcdoOptions& opts) {
    const EllipticSetOracle conj = conjugate_oracle(oracle, b);
    const ConvexBody body = dominative_body(conj.n, p_prime);
    PairingEstimate est;
    est.value = -std::numeric_limits<double>::infinity();

    auto probe = [&](const SymMatrix& x) {
        est.value = std::max(est.value, eval_support(x, body));
        ++est.probes;
    };

    if (conj.inside_witness) probe(*conj.inside_witness);
    if (samples == 0) return est;

    // Boundary points at the requested radius and a few smaller scales; each
    // also contributes an interior probe one unit inside along -I.
    std::vector<double> scales{radius};
    for (double r = radius / 100.0; r >= 1.0 && scales.size() < 4; r /= 100.0) scales.push_back(r);
    try {
        for (double r : scales) {
            for (const ConeSample& s : boundary_sample(conj, r, samples, seed, opts)) {
                probe(s.raw_point);
                probe(s.raw_point.plus_identity(-1.0));
            }
        }
    } catch (const NonProperError& e) {
        if (e.side() != NonProperError::Side::no_member) throw;
        // Empty set: the supremum is -inf.
        est.value = -std::numeric_limits<double>::infinity();
        est.probes = 0;
    }
    return est;
}

} // namespace domcone
