#include "domcone/symmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace domcone {

namespace {

void check_dim(std::size_t n) {
    if (n < kMinDim || n > kMaxDim) {
        std::ostringstream os;
        os << "matrix dimension " << n << " outside [" << kMinDim << ", " << kMaxDim << "]";
        throw Error(ErrorCode::dimension_mismatch, os.str());
    }
}

void check_size(std::size_t n, std::size_t len) {
    if (len != n * n) {
        std::ostringstream os;
        os << "expected " << n * n << " entries for n = " << n << ", got " << len;
        throw Error(ErrorCode::dimension_mismatch, os.str());
    }
}

} // namespace

void require_same_dim(std::size_t a, std::size_t b, const char* where) {
    if (a != b) {
        std::ostringstream os;
        os << where << ": dimension mismatch (" << a << " vs " << b << ")";
        throw Error(ErrorCode::dimension_mismatch, os.str());
    }
}

// ---------------------------------------------------------------------------
// SquareMatrix

SquareMatrix::SquareMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) { check_dim(n); }

SquareMatrix::SquareMatrix(std::size_t n, std::span<const double> row_major)
    : n_(n), a_(row_major.begin(), row_major.end()) {
    check_dim(n);
    check_size(n, row_major.size());
    for (double v : a_) {
        if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "matrix entries must be finite");
    }
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

SquareMatrix SquareMatrix::transposed() const {
    SquareMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

SquareMatrix SquareMatrix::operator*(const SquareMatrix& rhs) const {
    require_same_dim(n_, rhs.n_, "SquareMatrix product");
    SquareMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = 0; k < n_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < n_; ++j) out(i, j) += aik * rhs(k, j);
        }
    }
    return out;
}

std::vector<double> SquareMatrix::apply(std::span<const double> x) const {
    require_same_dim(n_, x.size(), "SquareMatrix apply");
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
}

namespace {

struct Lu {
    std::vector<double> a;
    std::vector<std::size_t> perm;
    int sign = 1;
    bool singular = false;
};

Lu lu_decompose(const SquareMatrix& m) {
    const std::size_t n = m.dim();
    Lu lu{std::vector<double>(m.data().begin(), m.data().end()), std::vector<std::size_t>(n)};
    std::iota(lu.perm.begin(), lu.perm.end(), std::size_t{0});
    auto at = [&](std::size_t i, std::size_t j) -> double& { return lu.a[i * n + j]; };
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(at(i, k)) > std::abs(at(piv, k))) piv = i;
        if (at(piv, k) == 0.0) {
            lu.singular = true;
            continue;
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
            std::swap(lu.perm[k], lu.perm[piv]);
            lu.sign = -lu.sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = at(i, k) / at(k, k);
            at(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= f * at(k, j);
        }
    }
    return lu;
}

} // namespace

double SquareMatrix::determinant() const {
    const Lu lu = lu_decompose(*this);
    if (lu.singular) return 0.0;
    double det = lu.sign;
    for (std::size_t i = 0; i < n_; ++i) det *= lu.a[i * n_ + i];
    return det;
}

SquareMatrix SquareMatrix::inverse() const {
    const Lu lu = lu_decompose(*this);
    if (lu.singular) throw Error(ErrorCode::singular_map, "matrix is singular");
    SquareMatrix inv(n_);
    auto at = [&](std::size_t i, std::size_t j) { return lu.a[i * n_ + j]; };
    std::vector<double> col(n_);
    for (std::size_t c = 0; c < n_; ++c) {
        for (std::size_t i = 0; i < n_; ++i) col[i] = lu.perm[i] == c ? 1.0 : 0.0;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < i; ++k) col[i] -= at(i, k) * col[k];
        for (std::size_t i = n_; i-- > 0;) {
            for (std::size_t k = i + 1; k < n_; ++k) col[i] -= at(i, k) * col[k];
            col[i] /= at(i, i);
        }
        for (std::size_t i = 0; i < n_; ++i) inv(i, c) = col[i];
    }
    return inv;
}

double SquareMatrix::norm1() const {
    double best = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

// ---------------------------------------------------------------------------
// SymMatrix

SymMatrix::SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) { check_dim(n); }

SymMatrix::SymMatrix(std::size_t n, std::span<const double> row_major)
    : n_(n), a_(row_major.begin(), row_major.end()) {
    check_dim(n);
    check_size(n, row_major.size());
    check_finite();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a_[i * n + j] + a_[j * n + i]);
            a_[i * n + j] = v;
            a_[j * n + i] = v;
        }
    }
}

SymMatrix::SymMatrix(const SquareMatrix& m) : SymMatrix(m.dim(), m.data()) {}

void SymMatrix::check_finite() const {
    for (double v : a_) {
        if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "matrix entries must be finite");
    }
}

SymMatrix SymMatrix::identity(std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1.0;
    return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
    SymMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.a_[i * d.size() + i] = d[i];
    m.check_finite();
    return m;
}

SymMatrix SymMatrix::diagonal(std::initializer_list<double> d) {
    return diagonal(std::span<const double>(d.begin(), d.size()));
}

SymMatrix SymMatrix::outer(std::span<const double> v) {
    const std::size_t n = v.size();
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.a_[i * n + j] = v[i] * v[j];
    m.check_finite();
    return m;
}

SymMatrix SymMatrix::from_function(std::size_t n, const std::function<double(std::size_t, std::size_t)>& f) {
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = f(i, j);
    return SymMatrix(n, a);
}

double SymMatrix::trace() const noexcept {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += a_[i * n_ + i];
    return t;
}

double SymMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

double SymMatrix::frobenius_norm() const noexcept {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

SymMatrix SymMatrix::plus_identity(double t) const {
    SymMatrix out = *this;
    for (std::size_t i = 0; i < n_; ++i) out.a_[i * n_ + i] += t;
    out.check_finite();
    return out;
}

SymMatrix SymMatrix::operator+(const SymMatrix& rhs) const {
    require_same_dim(n_, rhs.n_, "SymMatrix +");
    SymMatrix out = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] += rhs.a_[k];
    out.check_finite();
    return out;
}

SymMatrix SymMatrix::operator-(const SymMatrix& rhs) const {
    require_same_dim(n_, rhs.n_, "SymMatrix -");
    SymMatrix out = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] -= rhs.a_[k];
    out.check_finite();
    return out;
}

SymMatrix SymMatrix::operator-() const {
    SymMatrix out = *this;
    for (double& v : out.a_) v = -v;
    return out;
}

SymMatrix SymMatrix::operator*(double c) const {
    SymMatrix out = *this;
    for (double& v : out.a_) v *= c;
    out.check_finite();
    return out;
}

SquareMatrix SymMatrix::to_square() const { return SquareMatrix(n_, a_); }

double Spectrum::sum() const noexcept { return std::accumulate(values.begin(), values.end(), 0.0); }

// ---------------------------------------------------------------------------
// InvertibleMap

InvertibleMap::InvertibleMap(SquareMatrix b) : b_(std::move(b)), inv_(b_.dim()), cond_(0.0) {
    const double det = b_.determinant();
    if (!(std::abs(det) > 1e-10)) {
        std::ostringstream os;
        os << "congruence map is singular (|det B| = " << std::abs(det) << " <= 1e-10)";
        throw Error(ErrorCode::singular_map, os.str());
    }
    inv_ = b_.inverse();
    cond_ = b_.norm1() * inv_.norm1();
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver

namespace {

constexpr int kJacobiMaxSweeps = 100;

EigenDecomposition jacobi(const SymMatrix& x, bool want_vectors, double rel_tol) {
    if (!(rel_tol > 0.0)) throw Error(ErrorCode::invalid_argument, "eigen tolerance must be positive");
    const std::size_t n = x.dim();
    std::vector<double> a(x.data().begin(), x.data().end());
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    SquareMatrix v = SquareMatrix::identity(n);

    const double threshold = rel_tol * x.frobenius_norm();
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += at(i, j) * at(i, j);
        return std::sqrt(s);
    };

    int sweep = 0;
    while (off_norm() > threshold) {
        if (sweep == kJacobiMaxSweeps) {
            throw NumericalFailure("Jacobi eigensolver did not converge in 100 sweeps", x);
        }
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // A <- J^T A J with J the (p, q) plane rotation.
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const double vkp = v(k, p);
                        const double vkq = v(k, q);
                        v(k, p) = c * vkp - s * vkq;
                        v(k, q) = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return at(i, i) < at(j, j); });

    EigenDecomposition out{Spectrum{std::vector<double>(n)}, SquareMatrix(n), sweep};
    for (std::size_t k = 0; k < n; ++k) {
        out.spectrum.values[k] = at(order[k], order[k]);
        if (want_vectors)
            for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

} // namespace

Spectrum eigvals_sym(const SymMatrix& x) { return jacobi(x, false, kEigenRelTol).spectrum; }

EigenDecomposition eigh(const SymMatrix& x) { return jacobi(x, true, kEigenRelTol); }

EigenDecomposition eigh(const SymMatrix& x, double rel_tol) { return jacobi(x, true, rel_tol); }

// ---------------------------------------------------------------------------

double inner(const SymMatrix& a, const SymMatrix& x) {
    require_same_dim(a.dim(), x.dim(), "inner");
    double s = 0.0;
    const auto ad = a.data();
    const auto xd = x.data();
    for (std::size_t k = 0; k < ad.size(); ++k) s += ad[k] * xd[k];
    return s;
}

double inf_norm(const Spectrum& s) { return std::max(-s.min(), s.max()); }

double inf_norm(const SymMatrix& x) { return inf_norm(eigvals_sym(x)); }

double one_norm(const SymMatrix& x) {
    double s = 0.0;
    for (double v : eigvals_sym(x).values) s += std::abs(v);
    return s;
}

bool loewner_leq(const SymMatrix& x, const SymMatrix& y, double tol) {
    require_same_dim(x.dim(), y.dim(), "loewner_leq");
    return eigvals_sym(y - x).min() >= -tol;
}

bool is_psd(const SymMatrix& x, double tol) { return eigvals_sym(x).min() >= -tol; }

SymMatrix congruence(const SymMatrix& x, const SquareMatrix& q) {
    require_same_dim(x.dim(), q.dim(), "congruence");
    const std::size_t n = x.dim();
    // (Q^T X Q)_{ij} = sum_{k,l} Q_{ki} X_{kl} Q_{lj}
    SquareMatrix xq = x.to_square() * q;
    std::vector<double> out(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double qki = q(k, i);
            if (qki == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) out[i * n + j] += qki * xq(k, j);
        }
    return SymMatrix(n, out);
}

SymMatrix congruence(const SymMatrix& x, const InvertibleMap& b) { return congruence(x, b.matrix()); }

SymMatrix inverse_congruence(const SymMatrix& x, const InvertibleMap& b) { return congruence(x, b.inverse()); }

Inertia inertia(const SymMatrix& x, double tol) {
    Inertia in;
    for (double v : eigvals_sym(x).values) {
        if (v < -tol) ++in.negative;
        else if (v > tol) ++in.positive;
        else ++in.zero;
    }
    return in;
}

} // namespace domcone
