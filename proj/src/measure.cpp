#include "p2mu/measure.hpp"

#include <cmath>

#include "p2mu/errors.hpp"
#include "p2mu/hz_g.hpp"
#include "p2mu/quadrature.hpp"

namespace p2mu {

namespace {

/// ∫ z^n conj(z)^n-free radial Bergman moment:
/// (1+α) B(n+1, α+1) = (α+1)! · n!/(n+α+1)! as the stable product
/// Π_{i=1..α+1} i/(n+i).
double bergman_radial_moment(int n, int alpha) {
    double v = 1.0;
    for (int i = 1; i <= alpha + 1; ++i) v *= static_cast<double>(i) / (n + i);
    return v;
}

/// ∫ |z|^p (1+α)(1-|z|²)^α dA = (1+α) B(p/2 + 1, α+1), p ≥ 0 real.
double bergman_abs_moment(double p, int alpha) {
    return (alpha + 1.0) * std::beta(0.5 * p + 1.0, alpha + 1.0);
}

int lens_quad_freq(const LensHarmonicComponent& lc, int j, int k) {
    return j + k + lc.density.total_degree() + (lc.inv_abs_g_sq ? 4 * (lc.inv_alpha + 2) : 0);
}

} // namespace

cplx LensHarmonicComponent::density_value(cplx z) const {
    cplx v = density.eval(z);
    if (inv_abs_g_sq) {
        const cplx g = hz_g(inv_a, inv_alpha, z);
        v /= std::norm(g);
    }
    return v;
}

const LensRegion& LensHarmonicComponent::region() const {
    if (!lens) throw precondition_error("LensHarmonicComponent: missing lens region");
    return *lens;
}

ComplexMeasure ComplexMeasure::operator+(const ComplexMeasure& o) const {
    std::vector<MeasureComponent> comps = components_;
    comps.insert(comps.end(), o.components_.begin(), o.components_.end());
    return ComplexMeasure(std::move(comps), std::min(max_degree_, o.max_degree_));
}

ComplexMeasure ComplexMeasure::scaled(cplx factor) const {
    ComplexMeasure out = *this;
    for (MeasureComponent& comp : out.components_) {
        std::visit(
            [&](auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, AtomComponent>)
                    c.weight *= factor;
                else if constexpr (std::is_same_v<T, CircleFourierComponent>) {
                    LaurentPoly scaled;
                    for (const auto& [k, v] : c.density.coeffs()) scaled.set(k, v * factor);
                    c.density = scaled;
                } else
                    c.density = c.density * factor;
            },
            comp);
    }
    return out;
}

ComplexMeasure circle_lebesgue() {
    return circle_fourier({{0, cplx{1.0}}});
}

ComplexMeasure circle_fourier(const std::map<int, cplx>& coeffs) {
    CircleFourierComponent c;
    c.density = LaurentPoly(coeffs);
    return ComplexMeasure({MeasureComponent{c}});
}

ComplexMeasure bergman_weight(int alpha) {
    if (alpha < 0) throw domain_error("bergman_weight: alpha must be nonnegative");
    BergmanComponent c;
    c.alpha = alpha;
    return ComplexMeasure({MeasureComponent{c}});
}

ComplexMeasure point_mass(cplx point, cplx weight) {
    return ComplexMeasure({MeasureComponent{AtomComponent{point, weight}}});
}

cplx moment(const ComplexMeasure& mu, int j, int k) {
    if (j < 0 || k < 0) throw domain_error("moment: exponents must be nonnegative");
    if (j > mu.max_degree() || k > mu.max_degree())
        throw capability_error("moment: degree above the configured maximum");
    cplx acc = 0.0;
    for (const MeasureComponent& comp : mu.components()) {
        acc += std::visit(
            [&](const auto& c) -> cplx {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, AtomComponent>) {
                    return c.weight * BivariatePoly::ipow(c.point, j) *
                           BivariatePoly::ipow(std::conj(c.point), k);
                } else if constexpr (std::is_same_v<T, CircleFourierComponent>) {
                    // ∫ ζ^{j-k} Σ c_l ζ^l dm = c_{k-j}
                    return c.density.coeff(k - j);
                } else if constexpr (std::is_same_v<T, BergmanComponent>) {
                    cplx s = 0.0;
                    for (const auto& [mk, q] : c.density.terms())
                        if (j + mk.first == k + mk.second)
                            s += q * bergman_radial_moment(j + mk.first, c.alpha);
                    return s;
                } else {
                    const int freq = lens_quad_freq(c, j, k);
                    return c.region().integrate(
                        [&](cplx z) {
                            return BivariatePoly::ipow(z, j) *
                                   BivariatePoly::ipow(std::conj(z), k) * c.density_value(z);
                        },
                        1e-13, 1e-10 / (1.0 + 0.02 * freq));
                }
            },
            comp);
    }
    return acc;
}

cplx total_mass(const ComplexMeasure& mu) {
    return moment(mu, 0, 0);
}

ComplexMeasure multiply_density(const ComplexMeasure& mu, const BivariatePoly& g) {
    ComplexMeasure out = mu;
    std::vector<MeasureComponent> comps;
    for (const MeasureComponent& comp : mu.components()) {
        comps.push_back(std::visit(
            [&](const auto& c) -> MeasureComponent {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, AtomComponent>) {
                    return AtomComponent{c.point, c.weight * g.eval(c.point)};
                } else if constexpr (std::is_same_v<T, CircleFourierComponent>) {
                    CircleFourierComponent r = c;
                    r.density = c.density * LaurentPoly::from_bivariate(g);
                    for (const auto& [kk, v] : r.density.coeffs())
                        if (std::abs(kk) > mu.max_degree())
                            throw capability_error(
                                "multiply_density: circle density degree above maximum");
                    return r;
                } else if constexpr (std::is_same_v<T, BergmanComponent>) {
                    BergmanComponent r = c;
                    r.density = c.density * g;
                    if (r.density.total_degree() > mu.max_degree())
                        throw capability_error("multiply_density: density degree above maximum");
                    return r;
                } else {
                    LensHarmonicComponent r = c;
                    r.density = c.density * g;
                    r.arc_samples.clear();
                    r.chord_samples.clear();
                    if (r.density.total_degree() > mu.max_degree())
                        throw capability_error("multiply_density: density degree above maximum");
                    return r;
                }
            },
            comp));
    }
    return ComplexMeasure(std::move(comps), mu.max_degree());
}

ComplexMeasure restrict_to(const ComplexMeasure& mu, SupportRegion region) {
    std::vector<MeasureComponent> comps;
    for (const MeasureComponent& comp : mu.components()) {
        const bool keep = std::visit(
            [&](const auto& c) -> bool {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, AtomComponent>) {
                    const double r = std::abs(c.point);
                    switch (region) {
                        case SupportRegion::circle: return std::abs(r - 1.0) <= 1e-12;
                        case SupportRegion::open_disk: return r < 1.0 - 1e-12;
                        case SupportRegion::lens_boundary: {
                            // on the boundary of a lens carried by this measure
                            for (const MeasureComponent& other : mu.components())
                                if (const auto* lc = std::get_if<LensHarmonicComponent>(&other)) {
                                    const double cc = lc->c;
                                    const bool on_chord =
                                        std::abs(c.point.real() - cc) <= 1e-12 &&
                                        std::abs(c.point.imag()) <=
                                            std::sqrt(1.0 - cc * cc) + 1e-12;
                                    const bool on_arc = std::abs(r - 1.0) <= 1e-12 &&
                                                        c.point.real() <= cc + 1e-12;
                                    if (on_chord || on_arc) return true;
                                }
                            return false;
                        }
                    }
                    return false;
                } else if constexpr (std::is_same_v<T, CircleFourierComponent>) {
                    return region == SupportRegion::circle;
                } else if constexpr (std::is_same_v<T, BergmanComponent>) {
                    return region == SupportRegion::open_disk;
                } else {
                    return region == SupportRegion::lens_boundary;
                }
            },
            comp);
        if (keep) comps.push_back(comp);
    }
    return ComplexMeasure(std::move(comps), mu.max_degree());
}

double variation_bound(const ComplexMeasure& mu) {
    double acc = 0.0;
    for (const MeasureComponent& comp : mu.components()) {
        acc += std::visit(
            [&](const auto& c) -> double {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, AtomComponent>) {
                    return std::abs(c.weight);
                } else if constexpr (std::is_same_v<T, CircleFourierComponent>) {
                    return c.density.coeff_abs_sum();
                } else if constexpr (std::is_same_v<T, BergmanComponent>) {
                    double s = 0.0;
                    for (const auto& [mk, q] : c.density.terms())
                        s += std::abs(q) * bergman_abs_moment(mk.first + mk.second, c.alpha);
                    return s;
                } else {
                    return c.region()
                        .integrate([&](cplx z) { return cplx{std::abs(c.density_value(z)), 0.0}; },
                                   1e-12, 1e-10)
                        .real();
                }
            },
            comp);
    }
    return acc;
}

double ball_variation(const ComplexMeasure& mu, cplx center, double radius) {
    if (!(radius > 0.0)) throw domain_error("ball_variation: radius must be positive");
    double acc = 0.0;
    for (const MeasureComponent& comp : mu.components()) {
        acc += std::visit(
            [&](const auto& c) -> double {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, AtomComponent>) {
                    return std::abs(c.point - center) < radius ? std::abs(c.weight) : 0.0;
                } else if constexpr (std::is_same_v<T, CircleFourierComponent>) {
                    double s = 0.0;
                    for (const auto& [a, b] : circle_ball_params(0.0, 2.0 * M_PI, center, radius))
                        s += adaptive_integrate_real(
                            [&](double th) {
                                return std::abs(c.density.eval(std::polar(1.0, th))) /
                                       (2.0 * M_PI);
                            },
                            a, b, 1e-13, 1e-10);
                    return s;
                } else if constexpr (std::is_same_v<T, BergmanComponent>) {
                    // polar slices around the ball center: each circle
                    // |z - λ| = ρ meets the unit disk in closed-form arcs,
                    // |λ + ρe^{iφ}| < 1 ⟺ cos(φ - arg λ) < (1-|λ|²-ρ²)/(2ρ|λ|)
                    auto ring = [&](double rho) {
                        std::vector<std::pair<double, double>> spans;
                        const double mod = std::abs(center);
                        if (mod < 1e-15) {
                            if (rho < 1.0) spans.emplace_back(-M_PI, M_PI);
                        } else {
                            const double cosv = (1.0 - mod * mod - rho * rho) / (2.0 * rho * mod);
                            if (cosv >= 1.0)
                                spans.emplace_back(-M_PI, M_PI);
                            else if (cosv > -1.0) {
                                const double half = std::acos(cosv), psi = std::arg(center);
                                // complement of the window (ψ-half, ψ+half), wrapped
                                spans.emplace_back(psi + half, psi + 2.0 * M_PI - half);
                            }
                        }
                        double inner = 0.0;
                        for (const auto& [a, b] : spans)
                            inner += adaptive_integrate_real(
                                [&](double phi) {
                                    const cplx z = center + std::polar(rho, phi);
                                    const double m2 = std::norm(z);
                                    if (m2 >= 1.0) return 0.0;
                                    return std::abs(c.density.eval(z)) * (c.alpha + 1.0) *
                                           std::pow(1.0 - m2, c.alpha);
                                },
                                a, b, 1e-12, 1e-9);
                        return rho * inner / M_PI;
                    };
                    const double rmax = std::min(radius, std::abs(center) + 1.0);
                    if (rmax <= 0.0) return 0.0;
                    return adaptive_integrate_real(ring, 0.0, rmax, 1e-12, 1e-9);
                } else {
                    const LensRegion& lens = c.region();
                    double s = 0.0;
                    for (const auto& [a, b] : circle_ball_params(
                             lens.arc_theta_lo(), lens.arc_theta_hi(), center, radius))
                        s += adaptive_integrate_real(
                            [&](double th) {
                                return std::abs(c.density_value(std::polar(1.0, th))) *
                                       lens.density_arc(th);
                            },
                            a, b, 1e-13, 1e-10);
                    for (const auto& [a, b] : segment_ball_params(
                             lens.c(), -lens.half_chord(), lens.half_chord(), center, radius))
                        s += adaptive_integrate_real(
                            [&](double y) {
                                return std::abs(c.density_value(cplx{lens.c(), y})) *
                                       lens.density_chord(y);
                            },
                            a, b, 1e-13, 1e-10);
                    return s;
                }
            },
            comp);
    }
    return acc;
}

} // namespace p2mu
