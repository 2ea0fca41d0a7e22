#pragma once

#include <cstddef>
#include <vector>

#include "p2mu/polynomial.hpp"

namespace p2mu {

/// Dense complex matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    cplx operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    CMatrix adjoint() const;
    CMatrix operator*(const CMatrix& o) const;
    std::vector<cplx> apply(const std::vector<cplx>& x) const;

    double hermitian_defect() const; // max |A - A^*| entry

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

/// Pivoted Cholesky A = P L L* Pᵀ of a Hermitian positive semidefinite
/// matrix with diagonal pivoting and a rank tolerance; throws
/// numerical_error if a pivot drops below -tol (indefinite input).
class PivotedCholesky {
public:
    PivotedCholesky(const CMatrix& A, double rank_tol);

    std::size_t rank() const { return rank_; }
    double rank_tol() const { return tol_; }

    /// x = A⁺ b (pseudo-inverse on the numerical column space).
    std::vector<cplx> pinv_apply(const std::vector<cplx>& b) const;
    /// Re(c* A⁺ c) — the squared norm of the evaluation functional in the
    /// Gram application.
    double pinv_quad_form(const std::vector<cplx>& c) const;
    /// U* b with A = U U*: an isometry from the A-metric into C^rank
    /// (b* A b = ‖U* b‖² exactly when b is in the column space).
    std::vector<cplx> isometry_apply(const std::vector<cplx>& b) const { return ut_times(b); }

private:
    std::vector<cplx> ut_times(const std::vector<cplx>& b) const;   // U* b, U = P L
    std::vector<cplx> normal_solve(const std::vector<cplx>& t) const; // (U*U)^{-1} t

    std::size_t n_ = 0, rank_ = 0;
    double tol_ = 0.0;
    CMatrix L_;                     // n x rank, rows in permuted order
    std::vector<std::size_t> perm_; // permuted row i <- original index perm_[i]
    CMatrix gram_chol_;             // Cholesky factor of U*U (rank x rank, lower)
};

/// Cholesky solve of a Hermitian positive definite system (in place).
std::vector<cplx> hpd_solve(CMatrix A, std::vector<cplx> b);

/// Modified Gram-Schmidt with reorthogonalization; returns the orthonormal
/// columns (rank-revealing: columns with residual below tol·‖col‖ dropped).
CMatrix mgs_orthonormalize(const CMatrix& X, double tol = 1e-12);

/// One-sided Jacobi SVD. Singular values descending; V has the right
/// singular vectors as columns when requested.
struct JacobiSVD {
    std::vector<double> sigma;
    CMatrix V;
};
JacobiSVD jacobi_svd(CMatrix A, bool want_v);

} // namespace p2mu
