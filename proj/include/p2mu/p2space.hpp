#pragma once

#include <memory>
#include <vector>

#include "p2mu/linalg.hpp"
#include "p2mu/measure.hpp"

namespace p2mu {

/// Moment matrix of μ in the monomial basis up to degree n:
/// G[j][k] = moment(μ, k, j) = <z^k, z^j>_{L²(μ)}, with a rank-revealing
/// pivoted self-adjoint factorization.
struct GramBasis {
    ComplexMeasure mu;
    int n = 0;
    CMatrix G;
    std::shared_ptr<const PivotedCholesky> factor;
    double rank_tol = 0.0;        // absolute tolerance used
    double rank_tol_factor = 1e-12; // relative to trace(G)
    std::size_t numerical_rank = 0;
};

/// Assemble and factorize the Gram matrix. rank_tol = rank_tol_factor ×
/// trace(G). Throws numerical_error if G is indefinite beyond tolerance,
/// capability_error if n exceeds the measure's degree cap.
GramBasis gram(const ComplexMeasure& mu, int n, double rank_tol_factor = 1e-12);

/// Re-factorized leading (m+1)×(m+1) block (no re-integration).
GramBasis gram_leading_block(const GramBasis& gb, int m);

/// k_n(λ) = sup{|p(λ)| / ‖p‖_{L²(μ)} : deg p ≤ n, ‖p‖ > 0} over the
/// numerical column space, via the rank-revealing pseudo-inverse.
double point_eval_norm(const GramBasis& gb, cplx lam);

enum class BpeClass { bounded, divergent, undetermined };

struct BpeResult {
    BpeClass cls = BpeClass::undetermined;
    std::vector<int> n_values;
    std::vector<double> k_values;
    double limit_sq = 0.0;     // k² of the last entry (the limit when bounded)
    double fitted_rate = 0.0;  // slope of log k against log n
};

/// Classify λ from the growth of k_n(λ) along n_list: Cauchy-flat tail →
/// bounded; positive fitted power rate → divergent; else undetermined.
BpeResult bpe_classify(const ComplexMeasure& mu, cplx lam, const std::vector<int>& n_list,
                       double growth_tol);

/// L²(μ)-orthonormalized basis of M_n = {deg p ≤ n : p(a) = 0},
/// spanned by (z-a)z^j, 0 ≤ j ≤ n-1.
struct SubspaceTruncation {
    cplx a;
    int n = 0;
    CMatrix basis_coeffs; // (n+1) × dim, columns are coefficient vectors
    std::size_t dim = 0;
    bool a_degenerate = false; // |a| ≥ 1: permitted, but flagged loudly
};

SubspaceTruncation subspace_basis(const GramBasis& gb, cplx a);

struct WanderingResult {
    int dim = 0;
    std::vector<double> singular_values;
    PolyCoeffs wandering; // unit vector spanning M_n ⊖ zM_{n-1} when dim ≥ 1
    bool a_degenerate = false; // |a| ≥ 1: permitted, but flagged loudly
};

/// dim(M_n ⊖ zM_{n-1}) as the count of singular values above svtol of the
/// complement projection of the M_n frame.
WanderingResult wandering_dim(const GramBasis& gb, cplx a, double svtol);

/// L²(μ) distance from f to span{h·z^j : deg(h·z^j) ≤ span_degree}
/// (span_degree = -1 means the full Gram degree). Solved by projection onto
/// an orthonormalized span frame; rank deficiency handled by truncation.
double distance_to_cyclic(const GramBasis& gb, const PolyCoeffs& f, const PolyCoeffs& h,
                          int span_degree = -1);

} // namespace p2mu
