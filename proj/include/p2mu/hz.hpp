#pragma once

#include <vector>

#include "p2mu/measure.hpp"
#include "p2mu/p2space.hpp"

namespace p2mu {

/// Parameters of the boundary-plus-area counterexample measure
/// μ = σ + A_α with σ = |g|^{-2} dω on the lens boundary.
struct HZParams {
    cplx a = 0.9;   // zero location of g, |a| < 1, a ≠ 0
    int alpha = 5;  // Bergman weight exponent; g uses exponent α+2
    double c = 0.3; // lens parameter
};

/// g(z) = 1 - ((1-|a|²)/(1-āz))^(α+2); throws domain_error at the pole 1/ā.
cplx g_alpha_eval(const HZParams& p, cplx z);

/// All zeros of g inside the open disk, a first (from the closed-form root
/// set z_k = (1 - (1-|a|²)e^{2πik/(α+2)})/ā). Throws domain_error for a = 0.
std::vector<cplx> g_alpha_zeros(const HZParams& p);

/// True iff g has an interior zero besides a:
/// 1 - |a|² < 2cos(2π/(α+2)) - 1.
bool interior_zero_exists(const HZParams& p);

/// Taylor coefficients of g through the given degree:
/// g = (1 - s^L) - s^L Σ_{k≥1} binom(k+L-1, L-1) ā^k z^k, L = α+2.
PolyCoeffs g_alpha_taylor(const HZParams& p, int degree);

/// Certified bound on sup_{|z|≤1} |g - (Taylor truncation at `degree`)|.
double g_alpha_tail_bound(const HZParams& p, int degree);

/// σ = |g|^{-2} dω_{Ω_c}. Throws precondition_error if a zero of g comes
/// within 1e-6 of the closed lens.
ComplexMeasure build_sigma(const HZParams& p);

/// μ = σ + A_α.
ComplexMeasure build_mu(const HZParams& p);

/// Distance from z to the closed lens (0 inside).
double lens_closure_distance(const LensRegion& lens, cplx z);

struct OrthogonalityReport {
    std::vector<double> family_i;   // |∫ z^j g conj(g) dσ|, j = 1..n
    std::vector<double> family_ii;  // |∫ z^j conj(g) dσ|, j = 1..n
    std::vector<double> family_iii; // |<z(z-a)z^j, g>_{L²(μ)}|, j = 0..n
    double max_i = 0.0, max_ii = 0.0, max_iii = 0.0;
};

/// The orthogonality families certifying g ∈ M and g ⊥ zM: boundary
/// mean-value families against σ and the mixed inner products against μ
/// (series-collapsed Bergman part plus σ quadrature).
OrthogonalityReport verify_orthogonality(const HZParams& p, int n, double tol);

struct NotGeneratedReport {
    cplx z1; // the interior zero besides a
    std::vector<int> d_n_list;
    std::vector<double> d1;       // dist(g-truncation, span{(z-a)z^j : j < n})
    std::vector<double> d2;       // dist(z-a, span{g_N z^j : j ≤ n})
    std::vector<double> d2_bound; // |z1-a| / k_{n+1}(z1)
    std::vector<int> wandering_n_list;
    std::vector<int> wandering_dims;
    std::vector<double> wandering_cosine; // against the M_n-projection of g
    bool d1_monotone = false;
    bool d1_decreased = false; // d1(last) < 0.9 d1(first)
    bool d2_bound_holds = false;
    bool wandering_all_one = false;
};

/// Evidence that M = {f : f(a) = 0} is cyclic for z-a but not generated by
/// its wandering vector: d1 decreasing, d2 bounded away from zero by the
/// evaluation functional at the second interior zero, wandering index one.
NotGeneratedReport verify_not_generated(const HZParams& p, const std::vector<int>& d_n_list,
                                        const std::vector<int>& wandering_n_list,
                                        int gram_degree = 64, double svtol = 1e-8);

} // namespace p2mu
