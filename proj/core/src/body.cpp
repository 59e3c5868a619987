#include "domcone/body.hpp"

#include <sstream>

namespace domcone {

ConvexBody::ConvexBody(std::vector<SymMatrix> generators, bool rot_closed)
    : n_(0), generators_(std::move(generators)), rot_closed_(rot_closed) {
    if (generators_.empty()) throw Error(ErrorCode::invalid_argument, "convex body needs at least one generator");
    n_ = generators_.front().dim();
    spectra_.reserve(generators_.size());
    for (std::size_t k = 0; k < generators_.size(); ++k) {
        const SymMatrix& g = generators_[k];
        require_same_dim(n_, g.dim(), "ConvexBody generator");
        Spectrum s = eigvals_sym(g);
        if (s.min() < -kGeneratorPsdTol) {
            std::ostringstream os;
            os << "generator " << k << " is not positive semidefinite (lambda_1 = " << s.min() << ")";
            throw Error(ErrorCode::invalid_argument, os.str());
        }
        if (g.trace() < kGeneratorMinTrace) {
            std::ostringstream os;
            os << "generator " << k << " has trace " << g.trace() << " < 1e-8 (body would be totally degenerate)";
            throw Error(ErrorCode::invalid_argument, os.str());
        }
        spectra_.push_back(std::move(s));
    }
}

ConvexBody ConvexBody::scaled(double c) const {
    if (!(c > 0.0)) throw Error(ErrorCode::invalid_argument, "body scaling must be positive");
    std::vector<SymMatrix> g;
    g.reserve(generators_.size());
    for (const auto& a : generators_) g.push_back(a * c);
    return ConvexBody(std::move(g), rot_closed_);
}

} // namespace domcone
