#include "p2mu/p2space.hpp"

#include <algorithm>
#include <cmath>

#include "p2mu/errors.hpp"

namespace p2mu {

namespace {

// Lens moments are assembled in one sweep over a fixed boundary rule with a
// cached power table; everything else goes through the closed-form moment().
CMatrix assemble_gram(const ComplexMeasure& mu, int n) {
    const std::size_t dim = static_cast<std::size_t>(n) + 1;
    CMatrix G(dim, dim);

    ComplexMeasure closed_part;
    closed_part.set_max_degree(mu.max_degree());
    for (const MeasureComponent& comp : mu.components()) {
        if (const auto* lc = std::get_if<LensHarmonicComponent>(&comp)) {
            const int freq = 2 * n + lc->density.total_degree() + 8;
            const auto rule = lc->region().fixed_rule(freq);
            std::vector<cplx> dens(rule->size());
            for (std::size_t i = 0; i < rule->size(); ++i)
                dens[i] = (*rule)[i].w * lc->density_value((*rule)[i].z);
            // power table z_i^j
            std::vector<cplx> pow(rule->size() * dim);
            for (std::size_t i = 0; i < rule->size(); ++i) {
                pow[i * dim] = 1.0;
                for (std::size_t j = 1; j < dim; ++j)
                    pow[i * dim + j] = pow[i * dim + j - 1] * (*rule)[i].z;
            }
            for (std::size_t i = 0; i < rule->size(); ++i) {
                const cplx* zi = &pow[i * dim];
                for (std::size_t j = 0; j < dim; ++j) {
                    const cplx base = dens[i] * std::conj(zi[j]);
                    for (std::size_t k = 0; k < dim; ++k) G(j, k) += base * zi[k];
                }
            }
        } else {
            closed_part.add_component(comp);
        }
    }
    if (!closed_part.empty())
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k)
                G(j, k) += moment(closed_part, static_cast<int>(k), static_cast<int>(j));
    return G;
}

GramBasis factorize(ComplexMeasure mu, int n, CMatrix G, double rank_tol_factor) {
    double trace = 0.0;
    for (std::size_t i = 0; i < G.rows(); ++i) trace += G(i, i).real();
    const double defect = G.hermitian_defect();
    if (defect > 1e-8 * std::max(trace, 1.0))
        throw numerical_error("gram: moment matrix is not self-adjoint");
    // symmetrize quadrature roundoff
    for (std::size_t i = 0; i < G.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            const cplx avg = 0.5 * (G(i, j) + std::conj(G(j, i)));
            G(i, j) = avg;
            G(j, i) = std::conj(avg);
        }
    GramBasis gb;
    gb.mu = std::move(mu);
    gb.n = n;
    gb.rank_tol_factor = rank_tol_factor;
    gb.rank_tol = rank_tol_factor * std::max(trace, 1e-300);
    gb.factor = std::make_shared<PivotedCholesky>(G, gb.rank_tol);
    gb.numerical_rank = gb.factor->rank();
    gb.G = std::move(G);
    return gb;
}

} // namespace

GramBasis gram(const ComplexMeasure& mu, int n, double rank_tol_factor) {
    if (n < 0) throw domain_error("gram: degree must be nonnegative");
    if (n > mu.max_degree()) throw capability_error("gram: degree above the configured maximum");
    return factorize(mu, n, assemble_gram(mu, n), rank_tol_factor);
}

GramBasis gram_leading_block(const GramBasis& gb, int m) {
    if (m < 0 || m > gb.n) throw precondition_error("gram_leading_block: bad degree");
    const std::size_t dim = static_cast<std::size_t>(m) + 1;
    CMatrix B(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) B(i, j) = gb.G(i, j);
    return factorize(gb.mu, m, std::move(B), gb.rank_tol_factor);
}

double point_eval_norm(const GramBasis& gb, cplx lam) {
    // functional vector c with c_k = conj(λ)^k: p(λ) = c* a
    std::vector<cplx> c(static_cast<std::size_t>(gb.n) + 1);
    c[0] = 1.0;
    for (std::size_t k = 1; k < c.size(); ++k) c[k] = c[k - 1] * std::conj(lam);
    return std::sqrt(std::max(0.0, gb.factor->pinv_quad_form(c)));
}

BpeResult bpe_classify(const ComplexMeasure& mu, cplx lam, const std::vector<int>& n_list,
                       double growth_tol) {
    if (n_list.size() < 3) throw precondition_error("bpe_classify: need at least three degrees");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw precondition_error("bpe_classify: n_list must be increasing");

    BpeResult out;
    const GramBasis big = gram(mu, n_list.back());
    for (int n : n_list) {
        const GramBasis sub = (n == big.n) ? big : gram_leading_block(big, n);
        out.n_values.push_back(n);
        out.k_values.push_back(point_eval_norm(sub, lam));
    }
    const std::size_t m = out.k_values.size();
    out.limit_sq = out.k_values.back() * out.k_values.back();

    // bounded: the last three values are Cauchy-flat
    const double scale = std::max(1.0, out.k_values.back());
    if (std::abs(out.k_values[m - 1] - out.k_values[m - 2]) <= growth_tol * scale &&
        std::abs(out.k_values[m - 2] - out.k_values[m - 3]) <= growth_tol * scale) {
        out.cls = BpeClass::bounded;
        return out;
    }
    // fitted power rate of k_n against n over the tail of the list
    const std::size_t tail = std::min<std::size_t>(m, 4);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = m - tail; i < m; ++i) {
        const double x = std::log(static_cast<double>(out.n_values[i]));
        const double y = std::log(std::max(out.k_values[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = tail * sxx - sx * sx;
    out.fitted_rate = denom > 0.0 ? (tail * sxy - sx * sy) / denom : 0.0;
    out.cls = out.fitted_rate > 0.05 ? BpeClass::divergent : BpeClass::undetermined;
    return out;
}

namespace {

// Coefficient columns of h·z^j for j = 0..count-1 into degree cap `dim-1`.
CMatrix shifted_columns(const PolyCoeffs& h, std::size_t dim, std::size_t count) {
    CMatrix C(dim, count);
    for (std::size_t j = 0; j < count; ++j)
        for (std::size_t i = 0; i < h.size(); ++i)
            if (i + j < dim) C(i + j, j) = h[i];
    return C;
}

// Orthonormalize the columns of C against G (= factor's matrix) returning
// coefficient vectors: restricted Gram C*GC gets a pivoted Cholesky and the
// leading triangle is back-solved.
CMatrix gram_orthonormal(const GramBasis& gb, const CMatrix& C, std::size_t* rank_out) {
    // isometric coordinates X = U*C, then Euclidean Gram-Schmidt with a
    // recorded transform: columns q_i = C·t_i with X t_i orthonormal
    const std::size_t cols = C.cols();
    std::vector<std::vector<cplx>> xs; // isometric coordinates of accepted columns
    std::vector<std::vector<cplx>> ts; // coefficient-space transforms
    for (std::size_t j = 0; j < cols; ++j) {
        std::vector<cplx> col(C.rows());
        for (std::size_t i = 0; i < C.rows(); ++i) col[i] = C(i, j);
        std::vector<cplx> x = gb.factor->isometry_apply(col);
        std::vector<cplx> t(cols, cplx{0.0});
        t[j] = 1.0;
        double norm0 = 0.0;
        for (const cplx& v : x) norm0 += std::norm(v);
        norm0 = std::sqrt(norm0);
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t q = 0; q < xs.size(); ++q) {
                cplx proj = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) proj += std::conj(xs[q][i]) * x[i];
                for (std::size_t i = 0; i < x.size(); ++i) x[i] -= proj * xs[q][i];
                for (std::size_t i = 0; i < cols; ++i) t[i] -= proj * ts[q][i];
            }
        double norm1 = 0.0;
        for (const cplx& v : x) norm1 += std::norm(v);
        norm1 = std::sqrt(norm1);
        if (norm1 <= 1e-10 * std::max(norm0, 1e-300)) continue; // numerically dependent
        for (cplx& v : x) v /= norm1;
        for (cplx& v : t) v /= norm1;
        xs.push_back(std::move(x));
        ts.push_back(std::move(t));
    }
    CMatrix Q(C.rows(), ts.size());
    for (std::size_t j = 0; j < ts.size(); ++j)
        for (std::size_t i = 0; i < C.rows(); ++i) {
            cplx acc = 0.0;
            for (std::size_t kk = 0; kk < cols; ++kk) acc += C(i, kk) * ts[j][kk];
            Q(i, j) = acc;
        }
    if (rank_out) *rank_out = ts.size();
    return Q;
}

} // namespace

SubspaceTruncation subspace_basis(const GramBasis& gb, cplx a) {
    const std::size_t dim = static_cast<std::size_t>(gb.n) + 1;
    // columns (z-a)z^j, j = 0..n-1
    PolyCoeffs h{-a, cplx{1.0}};
    CMatrix C = shifted_columns(h, dim, static_cast<std::size_t>(gb.n));
    SubspaceTruncation out;
    out.a = a;
    out.n = gb.n;
    out.a_degenerate = std::abs(a) >= 1.0;
    out.basis_coeffs = gram_orthonormal(gb, C, &out.dim);
    return out;
}

WanderingResult wandering_dim(const GramBasis& gb, cplx a, double svtol) {
    WanderingResult out;
    out.a_degenerate = std::abs(a) >= 1.0;
    if (gb.n < 1) {
        out.dim = 0;
        return out;
    }
    const std::size_t dim = static_cast<std::size_t>(gb.n) + 1;
    const PolyCoeffs h{-a, cplx{1.0}};
    const PolyCoeffs zh{cplx{0.0}, -a, cplx{1.0}}; // z(z-a)
    CMatrix CM = shifted_columns(h, dim, static_cast<std::size_t>(gb.n));
    CMatrix CZ = shifted_columns(zh, dim, static_cast<std::size_t>(gb.n) - 1);
    const CMatrix QM = gram_orthonormal(gb, CM, nullptr);
    const CMatrix QZ = gram_orthonormal(gb, CZ, nullptr);

    // isometric pictures: columns euclidean-orthonormal
    auto iso = [&](const CMatrix& Q) {
        CMatrix X(gb.factor->rank(), Q.cols());
        for (std::size_t j = 0; j < Q.cols(); ++j) {
            std::vector<cplx> col(Q.rows());
            for (std::size_t i = 0; i < Q.rows(); ++i) col[i] = Q(i, j);
            const std::vector<cplx> x = gb.factor->isometry_apply(col);
            for (std::size_t i = 0; i < x.size(); ++i) X(i, j) = x[i];
        }
        return X;
    };
    const CMatrix X = iso(QM), Y = iso(QZ);
    // B = X - Y (Y* X): complement of zM_{n-1} inside the M_n frame
    const CMatrix YtX = Y.adjoint() * X;
    CMatrix B = X;
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < Y.cols(); ++k) acc += Y(i, k) * YtX(k, j);
            B(i, j) -= acc;
        }
    JacobiSVD svd = jacobi_svd(std::move(B), true);
    out.singular_values = svd.sigma;
    out.dim = 0;
    for (double s : svd.sigma)
        if (s > svtol) ++out.dim;
    if (out.dim >= 1 && svd.V.cols() > 0) {
        out.wandering.assign(dim, cplx{0.0});
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < QM.cols(); ++j)
                out.wandering[i] += QM(i, j) * svd.V(j, 0);
        // renormalize in the L²(μ) metric
        double nrm = 0.0;
        {
            std::vector<cplx> col(out.wandering.begin(), out.wandering.end());
            for (const cplx& v : gb.factor->isometry_apply(col)) nrm += std::norm(v);
        }
        nrm = std::sqrt(nrm);
        if (nrm > 0.0)
            for (cplx& v : out.wandering) v /= nrm;
    }
    return out;
}

double distance_to_cyclic(const GramBasis& gb, const PolyCoeffs& f, const PolyCoeffs& h,
                          int span_degree) {
    if (span_degree < 0) span_degree = gb.n;
    if (span_degree > gb.n) throw precondition_error("distance_to_cyclic: span degree above Gram degree");
    const int dh = poly_degree(h);
    if (dh < 0) throw precondition_error("distance_to_cyclic: zero span generator");
    if (poly_degree(f) > gb.n)
        throw capability_error("distance_to_cyclic: f degree above Gram degree");
    const std::size_t dim = static_cast<std::size_t>(gb.n) + 1;
    const std::size_t count =
        span_degree >= dh ? static_cast<std::size_t>(span_degree - dh) + 1 : 0;

    std::vector<cplx> fv(dim, cplx{0.0});
    for (std::size_t i = 0; i < f.size() && i < dim; ++i) fv[i] = f[i];
    const std::vector<cplx> xf = gb.factor->isometry_apply(fv);
    double dist2 = 0.0;
    for (const cplx& v : xf) dist2 += std::norm(v);
    if (count > 0) {
        PolyCoeffs hc(h.begin(), h.begin() + dh + 1);
        const CMatrix S = shifted_columns(hc, dim, count);
        std::size_t rank = 0;
        const CMatrix Q = gram_orthonormal(gb, S, &rank);
        for (std::size_t j = 0; j < Q.cols(); ++j) {
            std::vector<cplx> col(dim);
            for (std::size_t i = 0; i < dim; ++i) col[i] = Q(i, j);
            const std::vector<cplx> xq = gb.factor->isometry_apply(col);
            cplx proj = 0.0;
            for (std::size_t i = 0; i < xq.size(); ++i) proj += std::conj(xq[i]) * xf[i];
            dist2 -= std::norm(proj);
        }
    }
    return std::sqrt(std::max(0.0, dist2));
}

} // namespace p2mu
