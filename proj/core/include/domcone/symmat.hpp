#pragma once

// Dense symmetric-matrix kernel for small dimensions (2 <= n <= 16).
//
// Everything here is a value type: matrices are immutable after
// construction and every operation returns a fresh object.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "domcone/error.hpp"

namespace domcone {

inline constexpr std::size_t kMinDim = 2;
inline constexpr std::size_t kMaxDim = 16;

/// Default fuzz for Loewner-order comparisons.
inline constexpr double kLoewnerTol = 1e-9;

/// Jacobi stopping threshold relative to ||X||_F.
inline constexpr double kEigenRelTol = 1e-13;

/// General dense n x n matrix, row-major. Used for congruence maps and
/// eigenvector bases; symmetric data lives in SymMatrix.
class SquareMatrix {
public:
    explicit SquareMatrix(std::size_t n);
    SquareMatrix(std::size_t n, std::span<const double> row_major);

    static SquareMatrix identity(std::size_t n);

    std::size_t dim() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    std::span<const double> data() const noexcept { return a_; }

    SquareMatrix transposed() const;
    SquareMatrix operator*(const SquareMatrix& rhs) const;
    std::vector<double> apply(std::span<const double> x) const;

    /// Determinant and inverse via partial-pivot LU.
    double determinant() const;
    SquareMatrix inverse() const;

    /// Induced 1-norm (max column sum).
    double norm1() const;

private:
    std::size_t n_;
    std::vector<double> a_;
};

/// Element of S(n). Constructors symmetrize their input.
class SymMatrix {
public:
    explicit SymMatrix(std::size_t n);
    SymMatrix(std::size_t n, std::span<const double> row_major);
    explicit SymMatrix(const SquareMatrix& m);

    static SymMatrix zero(std::size_t n) { return SymMatrix(n); }
    static SymMatrix identity(std::size_t n);
    static SymMatrix diagonal(std::span<const double> d);
    static SymMatrix diagonal(std::initializer_list<double> d);
    /// v v^T.
    static SymMatrix outer(std::span<const double> v);
    static SymMatrix from_function(std::size_t n, const std::function<double(std::size_t, std::size_t)>& f);

    std::size_t dim() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    std::span<const double> data() const noexcept { return a_; }

    double trace() const noexcept;
    double max_abs() const noexcept;
    double frobenius_norm() const noexcept;

    /// X + t I.
    SymMatrix plus_identity(double t) const;

    SymMatrix operator+(const SymMatrix& rhs) const;
    SymMatrix operator-(const SymMatrix& rhs) const;
    SymMatrix operator-() const;
    SymMatrix operator*(double c) const;
    friend SymMatrix operator*(double c, const SymMatrix& x) { return x * c; }
    SymMatrix operator/(double c) const { return *this * (1.0 / c); }

    bool operator==(const SymMatrix& rhs) const = default;

    SquareMatrix to_square() const;

private:
    void check_finite() const;

    std::size_t n_;
    std::vector<double> a_;
};

/// Ascending eigenvalues lambda_1 <= ... <= lambda_n.
struct Spectrum {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double min() const { return values.front(); }
    double max() const { return values.back(); }
    double sum() const noexcept;
};

struct EigenDecomposition {
    Spectrum spectrum;
    /// Column k is the unit eigenvector of spectrum[k].
    SquareMatrix vectors;
    int sweeps = 0;
};

/// Thrown when the Jacobi sweep cap is hit. Carries the offending input.
class NumericalFailure : public Error {
public:
    NumericalFailure(const std::string& what, SymMatrix input)
        : Error(ErrorCode::numerical_failure, what), input_(std::move(input)) {}
    const SymMatrix& input() const noexcept { return input_; }

private:
    SymMatrix input_;
};

/// Invertible congruence map B, with its inverse cached.
class InvertibleMap {
public:
    /// Rejects |det B| <= 1e-10 with ErrorCode::singular_map.
    explicit InvertibleMap(SquareMatrix b);

    static InvertibleMap identity(std::size_t n) { return InvertibleMap(SquareMatrix::identity(n)); }

    std::size_t dim() const noexcept { return b_.dim(); }
    const SquareMatrix& matrix() const noexcept { return b_; }
    const SquareMatrix& inverse() const noexcept { return inv_; }
    /// ||B||_1 ||B^-1||_1.
    double condition_estimate() const noexcept { return cond_; }
    InvertibleMap inverted() const { return InvertibleMap(inv_); }

private:
    SquareMatrix b_;
    SquareMatrix inv_;
    double cond_;
};

// Cyclic Jacobi: stop when the off-diagonal Frobenius norm drops below
// kEigenRelTol * ||X||_F; at most 100 sweeps.
Spectrum eigvals_sym(const SymMatrix& x);
EigenDecomposition eigh(const SymMatrix& x);
/// Same with a caller-chosen relative off-diagonal threshold.
EigenDecomposition eigh(const SymMatrix& x, double rel_tol);

/// Frobenius pairing <A, X> = tr(AX).
double inner(const SymMatrix& a, const SymMatrix& x);

/// max{-lambda_1, lambda_n}.
double inf_norm(const SymMatrix& x);
double inf_norm(const Spectrum& s);
/// sum |lambda_i|.
double one_norm(const SymMatrix& x);

/// X <= Y in the Loewner order, i.e. lambda_1(Y - X) >= -tol.
bool loewner_leq(const SymMatrix& x, const SymMatrix& y, double tol = kLoewnerTol);
bool is_psd(const SymMatrix& x, double tol = kLoewnerTol);

/// B^T X B.
SymMatrix congruence(const SymMatrix& x, const InvertibleMap& b);
/// B^-T X B^-1.
SymMatrix inverse_congruence(const SymMatrix& x, const InvertibleMap& b);
/// Q^T X Q for an arbitrary square Q (no invertibility requirement).
SymMatrix congruence(const SymMatrix& x, const SquareMatrix& q);

/// (#negative, #zero, #positive) eigenvalues with |lambda| <= tol counted as zero.
struct Inertia {
    std::size_t negative = 0;
    std::size_t zero = 0;
    std::size_t positive = 0;
    bool operator==(const Inertia&) const = default;
};
Inertia inertia(const SymMatrix& x, double tol);

void require_same_dim(std::size_t a, std::size_t b, const char* where);

} // namespace domcone
