#pragma once

#include <optional>
#include <vector>

#include "p2mu/measure.hpp"
#include "p2mu/polynomial.hpp"

namespace p2mu {

/// Nontangential approach region S_r(ζ): interior of the convex hull of
/// {|z| ≤ r} ∪ {ζ}, optionally capped to B(ζ, δ).
struct StolzRegion {
    cplx zeta;
    double r;
    std::optional<double> delta; // cap S_r(ζ, δ) = S_r(ζ) ∩ B(ζ, δ)
};

/// Reflection of S_r(ζ) through the tangent line ℓ_ζ; same data, membership
/// applies the reflection first.
struct ReflectedStolz {
    cplx zeta;
    double r;
    std::optional<double> delta;
};

struct Disk {
    cplx center;
    double radius;
};

/// Reflection through the line tangent to the unit circle at ζ:
/// λ ↦ 2ζ - ζ² conj(λ). Involution, fixes ℓ_ζ pointwise.
cplx reflect_tangent(cplx zeta, cplx lam);

bool stolz_contains(const StolzRegion& S, cplx lam);
bool stolz_contains(const ReflectedStolz& T, cplx lam);

/// n points of S_ρ(ζ) marching to ζ with strictly increasing modulus,
/// alternating between the radial ray and near-extreme oblique rays; the
/// last point lies within 1e-6 of ζ. Requires 0 < rho < S.r.
std::vector<cplx> approach_path(const StolzRegion& S, double rho, int n);

/// Greedy disjoint subfamily whose 3-dilations cover every input disk
/// (selection by decreasing radius, ties by input order).
std::vector<Disk> vitali_3r_select(const std::vector<Disk>& disks);

enum class CapacityShape { disk, segment };

/// Analytic capacity of the named primitive: γ(disk of radius r) = r,
/// γ(segment of length L) = L/4. Oracle values, not computed from the
/// definition.
double capacity_primitive(CapacityShape shape, double parameter);

/// Crude capacity upper-bound proxy for a sampled set: cover the points by
/// disks of radius `scale`, select greedily, and return the total radius of
/// the 3-dilated selected disks.
double exceptional_cover_estimate(const std::vector<cplx>& points, double scale);

/// Ball-growth statistics of |ν| at λ₀: M = max over a logarithmic radius
/// grid of |ν|(B(λ₀,r))/r, N = 30M/a + 2 and eps_delta = |ν|(B(λ₀,Nδ))/δ
/// (the measure-dependent factor; absolute constants omitted). M is +inf —
/// reported via hypothesis_fails, not an error — when an atom sits at λ₀.
struct GrowthDiagnostic {
    double M = 0.0;
    double N = 0.0;
    double eps_delta = 0.0;
    bool hypothesis_fails = false;        // M infinite (atom at λ₀)
    std::vector<double> grid_r;           // the radius grid used
    std::vector<double> grid_ratio;       // |ν|(B(λ₀,r))/r on the grid
};

GrowthDiagnostic growth_diagnostic(const ComplexMeasure& nu, cplx lam0, double a, double delta);

/// Probability measure ω_{Ω_c} on the lens boundary (harmonic measure of
/// Ω_c at 0), as a measure-core component; densities evaluated through the
/// conformal chain, samples tabulated.
ComplexMeasure lens_harmonic_measure(double c);

} // namespace p2mu
