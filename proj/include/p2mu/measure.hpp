#pragma once

#include <map>
#include <memory>
#include <variant>
#include <vector>

#include "p2mu/lens.hpp"
#include "p2mu/polynomial.hpp"

namespace p2mu {

/// Point mass weight·δ_point.
struct AtomComponent {
    cplx point;
    cplx weight;
};

/// Density h(ζ) = Σ c_k ζ^k against normalized arclength m on |ζ| = 1.
struct CircleFourierComponent {
    LaurentPoly density;
};

/// density(z, z̄) · (1+α)(1-|z|²)^α dA on the open disk, A normalized area.
struct BergmanComponent {
    int alpha = 0;
    BivariatePoly density = BivariatePoly::constant(1.0);
};

/// density(z, z̄) · [1/|g(z)|² if inv_abs_g_sq] · dω_{Ω_c} on the lens
/// boundary, ω the harmonic measure of Ω_c at 0.
struct LensHarmonicComponent {
    double c = 0.3;
    BivariatePoly density = BivariatePoly::constant(1.0);
    bool inv_abs_g_sq = false;
    cplx inv_a;        // parameters of g when inv_abs_g_sq is set
    int inv_alpha = 5;
    std::shared_ptr<const LensRegion> lens;
    // Tabulated density samples (param, value); carried through
    // serialization, informational.
    std::vector<std::pair<double, double>> arc_samples;
    std::vector<std::pair<double, double>> chord_samples;

    /// Full scalar density at a boundary point.
    cplx density_value(cplx z) const;
    const LensRegion& region() const;
};

using MeasureComponent =
    std::variant<AtomComponent, CircleFourierComponent, BergmanComponent, LensHarmonicComponent>;

/// Finite complex Borel measure assembled from analytically tractable
/// components. Immutable by convention after construction: all operations
/// return new values, so concurrent evaluation over parameter grids is safe.
class ComplexMeasure {
public:
    ComplexMeasure() = default;
    explicit ComplexMeasure(std::vector<MeasureComponent> comps, int max_degree = 64)
        : components_(std::move(comps)), max_degree_(max_degree) {}

    const std::vector<MeasureComponent>& components() const { return components_; }
    int max_degree() const { return max_degree_; }
    void set_max_degree(int d) { max_degree_ = d; }
    bool empty() const { return components_.empty(); }

    void add_component(MeasureComponent c) { components_.push_back(std::move(c)); }

    ComplexMeasure operator+(const ComplexMeasure& o) const;
    ComplexMeasure scaled(cplx factor) const;

private:
    std::vector<MeasureComponent> components_;
    int max_degree_ = 64;
};

// -------- constructors ------------------------------------------------------

/// Normalized Lebesgue measure m on the unit circle.
ComplexMeasure circle_lebesgue();
/// h dm with h(ζ) = Σ coeffs[k] ζ^k.
ComplexMeasure circle_fourier(const std::map<int, cplx>& coeffs);
/// Weighted Bergman measure A_α = (1+α)(1-|z|²)^α dA, total mass 1.
ComplexMeasure bergman_weight(int alpha);
/// weight·δ_point.
ComplexMeasure point_mass(cplx point, cplx weight = 1.0);

// -------- operations --------------------------------------------------------

/// ∫ z^j conj(z)^k dμ. Closed forms for atoms, circle densities (Fourier
/// orthogonality) and Bergman weights (Beta integrals); boundary quadrature
/// for lens components. Throws capability_error above the degree cap.
cplx moment(const ComplexMeasure& mu, int j, int k);

/// Total mass μ(C) = moment(μ, 0, 0).
cplx total_mass(const ComplexMeasure& mu);

/// g(z, z̄)·dμ — multiplies every component density.
ComplexMeasure multiply_density(const ComplexMeasure& mu, const BivariatePoly& g);

enum class SupportRegion { circle, open_disk, lens_boundary };

/// Keep only the components supported in the named region.
ComplexMeasure restrict_to(const ComplexMeasure& mu, SupportRegion region);

/// Upper bound for |μ|(C); exact when all densities are nonnegative
/// constants.
double variation_bound(const ComplexMeasure& mu);

/// |μ|(B(center, radius)) with the open ball, to quadrature accuracy.
double ball_variation(const ComplexMeasure& mu, cplx center, double radius);

} // namespace p2mu
