#include "p2mu/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>

#include "p2mu/errors.hpp"

namespace p2mu {

cplx reflect_tangent(cplx zeta, cplx lam) {
    if (std::abs(std::abs(zeta) - 1.0) > 1e-12)
        throw domain_error("reflect_tangent: zeta must be unimodular");
    return 2.0 * zeta - zeta * zeta * std::conj(lam);
}

namespace {

void check_stolz(cplx zeta, double r) {
    if (std::abs(std::abs(zeta) - 1.0) > 1e-12)
        throw domain_error("stolz: zeta must be unimodular");
    if (!(r > 0.0 && r < 1.0)) throw domain_error("stolz: r must lie in (0,1)");
}

// Interior of the hull of {|z| ≤ r} ∪ {ζ}: the open disk, plus the open
// region cut by the two tangent lines through ζ (touching at T± = rζe^{∓iβ},
// β = arccos r) on the ζ-side of the chord T₊T₋. All three constraints
// reduce to exact half-plane inequalities:
//   Re(λ conj(T±)) < r²  and  Re(λ conj(ζ)) > r².
bool hull_contains(cplx zeta, double r, cplx lam) {
    if (std::abs(lam) < r) return true;
    const double beta = std::acos(r);
    const cplx tp = r * zeta * std::polar(1.0, -beta);
    const cplx tm = r * zeta * std::polar(1.0, beta);
    const double r2 = r * r;
    return (lam * std::conj(tp)).real() < r2 && (lam * std::conj(tm)).real() < r2 &&
           (lam * std::conj(zeta)).real() > r2;
}

} // namespace

bool stolz_contains(const StolzRegion& S, cplx lam) {
    check_stolz(S.zeta, S.r);
    if (S.delta && !(std::abs(lam - S.zeta) < *S.delta)) return false;
    return hull_contains(S.zeta, S.r, lam);
}

bool stolz_contains(const ReflectedStolz& T, cplx lam) {
    check_stolz(T.zeta, T.r);
    if (T.delta && !(std::abs(lam - T.zeta) < *T.delta)) return false;
    return hull_contains(T.zeta, T.r, reflect_tangent(T.zeta, lam));
}

std::vector<cplx> approach_path(const StolzRegion& S, double rho, int n) {
    check_stolz(S.zeta, S.r);
    if (!(rho > 0.0 && rho < S.r)) throw domain_error("approach_path: need 0 < rho < S.r");
    if (n < 1) throw domain_error("approach_path: need n >= 1");

    // Points ζ(1 - t e^{iφ}) with |φ| < arcsin ρ lie in S_ρ(ζ) for all
    // small t (the tangent cone at ζ is exact out to the tangency points).
    const double phi_max = 0.92 * std::asin(rho);
    const double phis[5] = {0.0, phi_max, -phi_max, 0.5 * phi_max, -0.5 * phi_max};
    const double s_hi = 1.0 - 5e-7; // final modulus: within 1e-6 of ζ
    const double s_lo = std::max(rho + 0.2 * (1.0 - rho), std::sin(phi_max) + 0.05);
    std::vector<cplx> pts;
    pts.reserve(n);
    for (int k = 0; k < n; ++k) {
        // strictly increasing moduli; last point radial
        const double frac = (n == 1) ? 1.0 : static_cast<double>(k) / (n - 1);
        const double s = 1.0 - (1.0 - s_lo) * std::pow((1.0 - s_hi) / (1.0 - s_lo), frac);
        const double phi = (k == n - 1) ? 0.0 : phis[k % 5];
        // solve |1 - t e^{iφ}| = s for the root next to ζ
        const double t = std::cos(phi) - std::sqrt(s * s - std::sin(phi) * std::sin(phi));
        pts.push_back(S.zeta * (1.0 - t * std::polar(1.0, phi)));
    }
    return pts;
}

std::vector<Disk> vitali_3r_select(const std::vector<Disk>& disks) {
    if (disks.empty()) throw precondition_error("vitali_3r_select: empty disk list");
    for (const Disk& d : disks)
        if (!(d.radius > 0.0)) throw domain_error("vitali_3r_select: nonpositive radius");

    std::vector<std::size_t> order(disks.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return disks[a].radius > disks[b].radius; // ties keep input order
    });

    std::vector<Disk> selected;
    for (std::size_t idx : order) {
        const Disk& d = disks[idx];
        bool intersects = false;
        for (const Disk& s : selected)
            if (std::abs(d.center - s.center) < d.radius + s.radius) {
                intersects = true;
                break;
            }
        if (!intersects) selected.push_back(d);
    }
    return selected;
}

double capacity_primitive(CapacityShape shape, double parameter) {
    if (!(parameter > 0.0)) throw domain_error("capacity_primitive: parameter must be positive");
    switch (shape) {
        case CapacityShape::disk: return parameter;       // Ahlfors function r/z
        case CapacityShape::segment: return parameter / 4.0; // Joukowski map
    }
    throw domain_error("capacity_primitive: unknown shape");
}

double exceptional_cover_estimate(const std::vector<cplx>& points, double scale) {
    if (!(scale > 0.0)) throw domain_error("exceptional_cover_estimate: scale must be positive");
    if (points.empty()) return 0.0;
    std::vector<Disk> seeds;
    seeds.reserve(points.size());
    for (cplx p : points) seeds.push_back({p, scale});
    const std::vector<Disk> sel = vitali_3r_select(seeds);
    double total = 0.0;
    for (const Disk& d : sel) total += 3.0 * d.radius;
    return total;
}

GrowthDiagnostic growth_diagnostic(const ComplexMeasure& nu, cplx lam0, double a, double delta) {
    if (!(a > 0.0)) throw domain_error("growth_diagnostic: a must be positive");
    if (!(delta > 0.0 && delta < 0.25))
        throw domain_error("growth_diagnostic: delta must lie in (0, 1/4)");

    GrowthDiagnostic out;
    for (const MeasureComponent& comp : nu.components())
        if (const auto* at = std::get_if<AtomComponent>(&comp))
            if (std::abs(at->point - lam0) < 1e-14 && std::abs(at->weight) > 0.0)
                out.hypothesis_fails = true; // |ν|(B)/r → ∞

    // logarithmic grid from well past the support down to fine scales
    double r_hi = 4.0;
    for (const MeasureComponent& comp : nu.components())
        if (const auto* at = std::get_if<AtomComponent>(&comp))
            r_hi = std::max(r_hi, 2.0 * (std::abs(at->point - lam0) + 1.0));
    const int steps = 44;
    double M = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double r = r_hi * std::pow(0.5, i);
        const double ratio = ball_variation(nu, lam0, r) / r;
        out.grid_r.push_back(r);
        out.grid_ratio.push_back(ratio);
        M = std::max(M, ratio);
    }
    out.M = out.hypothesis_fails ? std::numeric_limits<double>::infinity() : M;
    out.N = 30.0 * out.M / a + 2.0;
    const double nd = out.hypothesis_fails ? 1.0 : std::min(out.N * delta, r_hi);
    out.eps_delta = ball_variation(nu, lam0, nd) / delta;
    return out;
}

ComplexMeasure lens_harmonic_measure(double c) {
    if (!(c > 0.0 && c < 1.0)) throw domain_error("lens_harmonic_measure: c must lie in (0,1)");
    LensHarmonicComponent comp;
    comp.c = c;
    comp.lens = std::make_shared<LensRegion>(c);
    // tabulated density samples against the arclength parametrization
    const LensRegion& lens = *comp.lens;
    const int n_tab = 64;
    for (int i = 1; i < n_tab; ++i) {
        const double th =
            lens.arc_theta_lo() + (lens.arc_theta_hi() - lens.arc_theta_lo()) * i / n_tab;
        comp.arc_samples.emplace_back(th, lens.density_arc(th));
    }
    for (int i = 1; i < n_tab; ++i) {
        const double y = -lens.half_chord() + 2.0 * lens.half_chord() * i / n_tab;
        comp.chord_samples.emplace_back(y, lens.density_chord(y));
    }
    return ComplexMeasure({MeasureComponent{comp}});
}

} // namespace p2mu
