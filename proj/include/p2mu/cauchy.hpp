#pragma once

#include <utility>
#include <vector>

#include "p2mu/geometry.hpp"
#include "p2mu/measure.hpp"

namespace p2mu {

struct CauchyValue {
    cplx value;
    enum class Method { closed_form, quadrature } method = Method::closed_form;
    double est_error = 0.0;
};

/// ε-truncated transform ∫_{|w-z|>ε} (w-z)^{-1} dν(w). Atoms enter iff they
/// lie outside the ε-ball; curve components drop the metrically symmetric
/// window |w-z| ≤ ε; area components remove the recentered polar ball.
CauchyValue cauchy_eps(const ComplexMeasure& nu, cplx z, double eps);

/// Principal-value transform lim_{ε→0} C_ε(ν)(z). Closed forms: atoms,
/// circle densities (residue sums; one-sided average on the circle itself),
/// Bergman weights (radial Beta integrals). Lens components integrate by
/// desingularized boundary quadrature. Throws pv_undefined_error at atoms.
CauchyValue cauchy_pv(const ComplexMeasure& nu, cplx z);

/// Quadrature-only evaluation path for the continuous components
/// (cross-check of the closed forms); atoms still enter exactly.
CauchyValue cauchy_pv_quadrature(const ComplexMeasure& nu, cplx z, double tol = 1e-10);

/// max over the ε grid of |C_ε(ν)(z)| — a grid lower bound for the maximal
/// transform C_*(ν)(z). Grid must be nonempty, positive, decreasing.
double cauchy_max(const ComplexMeasure& nu, cplx z, const std::vector<double>& eps_grid);

/// Per-δ shell statistics of a jump scan.
struct ShellRecord {
    double delta = 0.0;
    cplx inner_fit, outer_fit; // means of unflagged shell samples
    cplx pv_at_zeta, predicted_inner, predicted_outer;
    double agree_fraction = 1.0;
    std::vector<cplx> flagged_points;
    double flagged_cover_proxy = 0.0; // capacity proxy of the flagged set
};

struct JumpScanReport {
    cplx zeta;
    double r = 0.5;
    double tol = 1e-6;
    cplx h_at_zeta;   // circle-density value at ζ
    cplx pv_at_zeta;  // C(ν)(ζ)
    cplx predicted_inner, predicted_outer; // pv ± h(ζ)conj(ζ)/2
    cplx inner_limit, outer_limit;         // extrapolated fits over the δ list
    cplx jump;                             // inner_limit - outer_limit
    std::vector<ShellRecord> shells;
};

/// Sample C(ν) on fixed normalized grids in S_r(ζ,δ) and T_r(ζ,δ), flag
/// per-shell outliers (empirical E_δ(ζ)), fit the one-sided limits by
/// extrapolation over the δ list and compare with the jump formula
/// pv ± ½ h(ζ) conj(ζ). Needs at least three deltas.
JumpScanReport plemelj_scan(const ComplexMeasure& nu, cplx zeta, double r,
                            const std::vector<double>& delta_list, double tol);

/// Robust limit of sampled values f(λ) as λ → ζ inside S: flagged points
/// are excluded, shell means anchor a low-order fit in (λ-ζ) whose constant
/// term is the limit. Throws insufficient_data_error when a populated shell
/// loses all its points to flags (or fewer than three shells remain).
cplx nontangential_limit_estimate(const std::vector<std::pair<cplx, cplx>>& samples,
                                  const StolzRegion& S, const std::vector<cplx>& flagged);

struct HardyCheckReport {
    double identity_residual = 0.0; // max over the disk grid |f·C(gm) - C(fgm)|
    cplx pv_gm_at_zeta, pv_fgm_at_zeta;
    double pv_gm_residual = 0.0;  // |C(gm)(ζ) - ½g(ζ)conj(ζ)|
    double pv_fgm_residual = 0.0; // |C(fgm)(ζ) - ½f(ζ)g(ζ)conj(ζ)|
    cplx nt_limit;
    double nt_residual = 0.0; // |lim_{S_r} f·C(gm) - f(ζ)g(ζ)conj(ζ)|
};

/// Multiplication identity f(λ)C(gm)(λ) = C(fgm)(λ) and the boundary-value
/// identities for an annihilating circle density g (c_k = 0 for k ≤ 0).
HardyCheckReport hardy_multiplication_check(const PolyCoeffs& f, const LaurentPoly& g, cplx zeta,
                                            double r);

struct PoissonDecompositionReport {
    struct Row {
        double r = 0.0;
        cplx transform_value; // (zσ)^ at rζ, closed form
        cplx poisson_term;    // ∫ (1-r²)/|1-r ζ̄ w|² σ(w) dm(w), quadrature
        cplx remainder_term;  // interior-mass term; identically 0 for μ = m
        double identity_residual = 0.0;
        double boundary_gap = 0.0; // |poisson_term - σ(ζ)|
    };
    std::vector<Row> rows;
    cplx boundary_value; // σ(ζ)·h(ζ) with h ≡ 1
};

/// Radial decomposition of (zσ)^ into a Poisson main term plus an
/// interior remainder for σ a circle density with zσ ⊥ polynomials.
PoissonDecompositionReport poisson_decomposition_check(const LaurentPoly& sigma_density,
                                                       cplx zeta,
                                                       const std::vector<double>& r_list);

/// Disk mean (πR²)^{-1} ∫_{B(0,R)} |p| dm₂ by nested adaptive quadrature.
double disk_abs_mean(const PolyCoeffs& p, double R, double tol = 1e-9);

} // namespace p2mu
