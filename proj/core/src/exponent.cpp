#include "domcone/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "domcone/error.hpp"

namespace domcone {

Exponent Exponent::finite(double p) {
    if (!std::isfinite(p) || p < 2.0) {
        std::ostringstream os;
        os << "exponent p = " << p << " must satisfy 2 <= p < inf (use Exponent::infinity())";
        throw Error(ErrorCode::invalid_argument, os.str());
    }
    return Exponent(p, false);
}

double Exponent::value() const {
    if (infinite_) throw Error(ErrorCode::invalid_argument, "p = infinity has no finite value");
    return p_;
}

double Exponent::value_or_inf() const noexcept {
    return infinite_ ? std::numeric_limits<double>::infinity() : p_;
}

std::string Exponent::to_string() const {
    if (infinite_) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << p_;
    return os.str();
}

double alpha_from_p(std::size_t n, const Exponent& p) {
    if (p.is_infinite()) return 1.0;
    const double pv = p.value();
    return (static_cast<double>(n) + pv - 2.0) / (pv - 1.0);
}

Exponent p_from_alpha(std::size_t n, double alpha) {
    const double nd = static_cast<double>(n);
    if (!(alpha >= 1.0 - 1e-12 && alpha <= nd + 1e-12)) {
        std::ostringstream os;
        os << "alpha = " << alpha << " outside [1, " << n << "]";
        throw Error(ErrorCode::invalid_argument, os.str());
    }
    if (alpha - 1.0 <= 1e-14) return Exponent::infinity();
    const double p = (nd + alpha - 2.0) / (alpha - 1.0);
    return Exponent::finite(std::max(p, 2.0));
}

double sobolev_threshold(std::size_t n, const Exponent& p) {
    if (p.is_infinite()) return std::numeric_limits<double>::infinity();
    const double nd = static_cast<double>(n);
    return nd * (p.value() - 1.0) / (nd - 1.0);
}

} // namespace domcone
