#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "p2mu/polynomial.hpp"

namespace p2mu {

/// One node of a fixed boundary quadrature rule for harmonic measure on the
/// lens boundary: integral f dω ≈ sum w_i f(z_i), w_i > 0.
struct LensNode {
    cplx z;       // boundary point
    double w;     // harmonic-measure weight (density x panel Gauss weight)
    double param; // θ on the arc piece, y on the chord piece
    bool on_arc;
};

/// The lens Ω_c = D ∩ {Re z < c}, 0 < c < 1, with harmonic measure at 0.
///
/// The two corners e^{±iθ_c} (θ_c = arccos c) are sent to 0 and ∞ by the
/// Möbius map M(z) = (z - w₁)/(z - w₂); M(Ω) is the sector θ_c < arg < π of
/// opening β = π - θ_c. Rotating by e^{-iθ_c} and applying u ↦ u^{π/β} gives
/// the upper half-plane with Φ(0) = e^{iθ_c π/β}. Harmonic measure is then
/// the pullback of the half-plane Poisson kernel at Φ(0); the arc maps onto
/// (0, ∞) and the chord onto (-∞, 0).
class LensRegion {
public:
    explicit LensRegion(double c);

    double c() const { return c_; }
    double theta_c() const { return theta_c_; }      // arccos c
    double half_chord() const { return s_; }         // sqrt(1 - c²)
    cplx corner_top() const { return corner_top_; }  // c + i s
    cplx corner_bot() const { return corner_bot_; }  // c - i s

    bool contains(cplx z) const { return std::abs(z) < 1.0 && z.real() < c_; }
    /// Distance from an interior point to ∂Ω.
    double boundary_distance(cplx z) const;

    /// Harmonic measure of the circular-arc part T ∩ ∂Ω, in closed form:
    /// (π - 2θ_c)/(π - θ_c).
    double arc_mass() const { return (M_PI - 2.0 * theta_c_) / (M_PI - theta_c_); }

    /// dω/dθ on the arc z = e^{iθ}, θ in (θ_c, 2π - θ_c).
    double density_arc(double theta) const;
    /// dω/dy on the chord z = c + iy, y in (-s, s).
    double density_chord(double y) const;

    double arc_theta_lo() const { return theta_c_; }
    double arc_theta_hi() const { return 2.0 * M_PI - theta_c_; }

    /// ∫ f dω by adaptive quadrature over both boundary pieces.
    cplx integrate(const std::function<cplx(cplx)>& f, double abs_tol = 1e-12,
                   double rel_tol = 1e-11) const;
    /// Arc / chord restricted versions (used for masses of boundary subsets).
    cplx integrate_arc(const std::function<cplx(cplx)>& f, double theta_lo, double theta_hi,
                       double abs_tol = 1e-12, double rel_tol = 1e-11) const;
    cplx integrate_chord(const std::function<cplx(cplx)>& f, double y_lo, double y_hi,
                         double abs_tol = 1e-12, double rel_tol = 1e-11) const;

    /// Fixed composite Gauss rule, corner-graded, resolving boundary
    /// integrands with angular frequency up to max_freq. Cached per level.
    std::shared_ptr<const std::vector<LensNode>> fixed_rule(int max_freq) const;

private:
    double signed_image(cplx z, bool on_arc) const; // t = Φ(z) on R

    double c_;
    double theta_c_;
    double s_;
    cplx corner_top_, corner_bot_;
    double beta_;  // interior corner angle π - θ_c
    double kappa_; // π / β
    double x0_, y0_; // Φ(0) = x0 + i y0
    mutable std::shared_ptr<const std::vector<LensNode>> rule_cache_;
    mutable int rule_cache_level_ = -1;
};

/// Subintervals of [t_lo, t_hi] where |e^{it} - center| < radius.
std::vector<std::pair<double, double>> circle_ball_params(double t_lo, double t_hi, cplx center,
                                                          double radius);

/// Subinterval of [y_lo, y_hi] where |(x0 + i y) - center| < radius.
std::vector<std::pair<double, double>> segment_ball_params(double x0, double y_lo, double y_hi,
                                                           cplx center, double radius);

} // namespace p2mu
