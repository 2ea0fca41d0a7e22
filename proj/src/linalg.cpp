#include "p2mu/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "p2mu/errors.hpp"

namespace p2mu {

CMatrix CMatrix::adjoint() const {
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    if (cols_ != o.rows_) throw precondition_error("CMatrix: dimension mismatch in product");
    CMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == cplx{0.0}) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

std::vector<cplx> CMatrix::apply(const std::vector<cplx>& x) const {
    if (x.size() != cols_) throw precondition_error("CMatrix: dimension mismatch in apply");
    std::vector<cplx> y(rows_, cplx{0.0});
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
}

double CMatrix::hermitian_defect() const {
    double d = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

PivotedCholesky::PivotedCholesky(const CMatrix& A, double rank_tol) {
    if (A.rows() != A.cols()) throw precondition_error("PivotedCholesky: square matrix required");
    n_ = A.rows();
    tol_ = rank_tol;
    CMatrix W = A; // working copy, permuted in place
    perm_.resize(n_);
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    std::vector<double> d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = W(i, i).real();

    CMatrix L(n_, n_);
    std::size_t k = 0;
    for (; k < n_; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n_; ++i)
            if (d[i] > d[p]) p = i;
        if (d[p] < -tol_ - 1e-300)
            throw numerical_error("PivotedCholesky: matrix indefinite beyond tolerance");
        if (d[p] <= tol_) break; // numerical rank reached
        if (p != k) {
            std::swap(perm_[p], perm_[k]);
            std::swap(d[p], d[k]);
            for (std::size_t j = 0; j < n_; ++j) std::swap(W(p, j), W(k, j));
            for (std::size_t i = 0; i < n_; ++i) std::swap(W(i, p), W(i, k));
            for (std::size_t j = 0; j < k; ++j) std::swap(L(p, j), L(k, j));
        }
        const double piv = std::sqrt(d[k]);
        L(k, k) = piv;
        for (std::size_t i = k + 1; i < n_; ++i) {
            cplx v = W(i, k);
            for (std::size_t j = 0; j < k; ++j) v -= L(i, j) * std::conj(L(k, j));
            v /= piv;
            L(i, k) = v;
            d[i] -= std::norm(v);
        }
    }
    rank_ = k;

    L_ = CMatrix(n_, rank_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < rank_ && j <= i; ++j) L_(i, j) = L(i, j);

    // Cholesky factor of U*U (r x r), U = P L; since rows of L_ are the
    // permuted rows of U, U*U = L_* L_.
    CMatrix G(rank_, rank_);
    for (std::size_t a = 0; a < rank_; ++a)
        for (std::size_t b = 0; b < rank_; ++b) {
            cplx s = 0.0;
            for (std::size_t i = std::max(a, b); i < n_; ++i)
                s += std::conj(L_(i, a)) * L_(i, b);
            G(a, b) = s;
        }
    gram_chol_ = CMatrix(rank_, rank_);
    for (std::size_t i = 0; i < rank_; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            cplx s = G(i, j);
            for (std::size_t m = 0; m < j; ++m) s -= gram_chol_(i, m) * std::conj(gram_chol_(j, m));
            if (i == j) {
                const double re = s.real();
                if (re <= 0.0) throw numerical_error("PivotedCholesky: normal matrix not PD");
                gram_chol_(i, i) = std::sqrt(re);
            } else {
                gram_chol_(i, j) = s / gram_chol_(j, j);
            }
        }
    }
}

std::vector<cplx> PivotedCholesky::ut_times(const std::vector<cplx>& b) const {
    std::vector<cplx> t(rank_, cplx{0.0});
    for (std::size_t i = 0; i < n_; ++i) {
        const cplx bi = b[perm_[i]];
        if (bi == cplx{0.0}) continue;
        for (std::size_t c = 0; c < rank_ && c <= i; ++c) t[c] += std::conj(L_(i, c)) * bi;
    }
    return t;
}

std::vector<cplx> PivotedCholesky::normal_solve(const std::vector<cplx>& t) const {
    // (U*U) x = t via the stored Cholesky factor
    std::vector<cplx> y(rank_);
    for (std::size_t i = 0; i < rank_; ++i) {
        cplx s = t[i];
        for (std::size_t j = 0; j < i; ++j) s -= gram_chol_(i, j) * y[j];
        y[i] = s / gram_chol_(i, i);
    }
    std::vector<cplx> x(rank_);
    for (std::size_t i = rank_; i-- > 0;) {
        cplx s = y[i];
        for (std::size_t j = i + 1; j < rank_; ++j) s -= std::conj(gram_chol_(j, i)) * x[j];
        x[i] = s / gram_chol_(i, i);
    }
    return x;
}

std::vector<cplx> PivotedCholesky::pinv_apply(const std::vector<cplx>& b) const {
    if (b.size() != n_) throw precondition_error("PivotedCholesky: vector size mismatch");
    const std::vector<cplx> t = ut_times(b);
    const std::vector<cplx> s = normal_solve(t);
    const std::vector<cplx> u = normal_solve(s);
    std::vector<cplx> x(n_, cplx{0.0});
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t c = 0; c < rank_ && c <= i; ++c) x[perm_[i]] += L_(i, c) * u[c];
    return x;
}

double PivotedCholesky::pinv_quad_form(const std::vector<cplx>& c) const {
    if (c.size() != n_) throw precondition_error("PivotedCholesky: vector size mismatch");
    const std::vector<cplx> t = ut_times(c);
    const std::vector<cplx> s = normal_solve(t);
    double q = 0.0;
    for (const cplx& v : s) q += std::norm(v);
    return q;
}

std::vector<cplx> hpd_solve(CMatrix A, std::vector<cplx> b) {
    const std::size_t n = A.rows();
    if (A.cols() != n || b.size() != n) throw precondition_error("hpd_solve: size mismatch");
    // in-place lower Cholesky
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            cplx s = A(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= A(i, k) * std::conj(A(j, k));
            if (i == j) {
                const double re = s.real();
                if (re <= 0.0) throw numerical_error("hpd_solve: matrix not positive definite");
                A(i, i) = std::sqrt(re);
            } else {
                A(i, j) = s / A(j, j);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        cplx s = b[i];
        for (std::size_t j = 0; j < i; ++j) s -= A(i, j) * b[j];
        b[i] = s / A(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        cplx s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= std::conj(A(j, i)) * b[j];
        b[i] = s / A(i, i);
    }
    return b;
}

CMatrix mgs_orthonormalize(const CMatrix& X, double tol) {
    const std::size_t m = X.rows(), n = X.cols();
    std::vector<std::vector<cplx>> q;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<cplx> v(m);
        double norm0 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = X(i, j);
            norm0 += std::norm(v[i]);
        }
        norm0 = std::sqrt(norm0);
        for (int pass = 0; pass < 2; ++pass) { // reorthogonalize once
            for (const auto& u : q) {
                cplx proj = 0.0;
                for (std::size_t i = 0; i < m; ++i) proj += std::conj(u[i]) * v[i];
                for (std::size_t i = 0; i < m; ++i) v[i] -= proj * u[i];
            }
        }
        double norm1 = 0.0;
        for (std::size_t i = 0; i < m; ++i) norm1 += std::norm(v[i]);
        norm1 = std::sqrt(norm1);
        if (norm1 <= tol * std::max(norm0, 1e-300)) continue; // dependent column
        for (std::size_t i = 0; i < m; ++i) v[i] /= norm1;
        q.push_back(std::move(v));
    }
    CMatrix Q(m, q.size());
    for (std::size_t j = 0; j < q.size(); ++j)
        for (std::size_t i = 0; i < m; ++i) Q(i, j) = q[j][i];
    return Q;
}

JacobiSVD jacobi_svd(CMatrix A, bool want_v) {
    const std::size_t m = A.rows(), n = A.cols();
    CMatrix V = want_v ? CMatrix::identity(n) : CMatrix();
    const double tol = 1e-14;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0;
                cplx gamma = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += std::norm(A(i, p));
                    beta += std::norm(A(i, q));
                    gamma += std::conj(A(i, p)) * A(i, q);
                }
                const double ag = std::abs(gamma);
                if (ag <= tol * std::sqrt(alpha * beta) || ag == 0.0) continue;
                converged = false;
                const double tau = (alpha - beta) / (2.0 * ag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = (c * t) * std::polar(1.0, -std::arg(gamma));
                for (std::size_t i = 0; i < m; ++i) {
                    const cplx ap = A(i, p), aq = A(i, q);
                    A(i, p) = c * ap + s * aq;
                    A(i, q) = -std::conj(s) * ap + c * aq;
                }
                if (want_v)
                    for (std::size_t i = 0; i < n; ++i) {
                        const cplx vp = V(i, p), vq = V(i, q);
                        V(i, p) = c * vp + s * vq;
                        V(i, q) = -std::conj(s) * vp + c * vq;
                    }
            }
        if (converged) break;
    }
    JacobiSVD out;
    out.sigma.resize(n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += std::norm(A(i, j));
        norms[j] = std::sqrt(s);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });
    CMatrix Vs = want_v ? CMatrix(n, n) : CMatrix();
    for (std::size_t j = 0; j < n; ++j) {
        out.sigma[j] = norms[order[j]];
        if (want_v)
            for (std::size_t i = 0; i < n; ++i) Vs(i, j) = V(i, order[j]);
    }
    out.V = std::move(Vs);
    return out;
}

} // namespace p2mu
