#include "p2mu/lens.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "p2mu/errors.hpp"
#include "p2mu/quadrature.hpp"

namespace p2mu {

LensRegion::LensRegion(double c) : c_(c) {
    if (!(c > 0.0 && c < 1.0)) throw domain_error("LensRegion: c must lie in (0,1)");
    theta_c_ = std::acos(c);
    s_ = std::sqrt(1.0 - c * c);
    corner_top_ = cplx{c, s_};
    corner_bot_ = cplx{c, -s_};
    beta_ = M_PI - theta_c_;
    kappa_ = M_PI / beta_;
    const double a0 = theta_c_ * kappa_; // arg Φ(0), in (0, π)
    x0_ = std::cos(a0);
    y0_ = std::sin(a0);
}

double LensRegion::boundary_distance(cplx z) const {
    return std::min(1.0 - std::abs(z), c_ - z.real());
}

double LensRegion::signed_image(cplx z, bool on_arc) const {
    const double lu = std::log(std::abs(z - corner_top_)) - std::log(std::abs(z - corner_bot_));
    const double t = std::exp(kappa_ * lu);
    return on_arc ? t : -t;
}

// Poisson(t)·|dt/dparam| with t = Φ(z) and unit-speed parametrizations.
// |dΦ/dz| = κ|u'|^{κ-1}·|w₁-w₂|/|z-w₂|²; worked in logs to survive the
// blow-up of |u'| at the corner that maps to ∞.
double LensRegion::density_arc(double theta) const {
    const cplx z = std::polar(1.0, theta);
    const double d1 = std::abs(z - corner_top_);
    const double d2 = std::abs(z - corner_bot_);
    if (d1 < 1e-290 || d2 < 1e-290) return 0.0;
    const double lu = std::log(d1) - std::log(d2);
    const double labs_dphi =
        std::log(kappa_) + (kappa_ - 1.0) * lu + std::log(2.0 * s_) - 2.0 * std::log(d2);
    const double lt = kappa_ * lu;
    if (lt > 120.0) return std::exp(std::log(y0_ / M_PI) - 2.0 * lt + labs_dphi);
    const double t = std::exp(lt); // arc maps to t > 0
    const double poisson = (y0_ / M_PI) / ((t - x0_) * (t - x0_) + y0_ * y0_);
    return poisson * std::exp(labs_dphi);
}

double LensRegion::density_chord(double y) const {
    const cplx z = cplx{c_, y};
    const double d1 = std::abs(z - corner_top_);
    const double d2 = std::abs(z - corner_bot_);
    if (d1 < 1e-290 || d2 < 1e-290) return 0.0;
    const double lu = std::log(d1) - std::log(d2);
    const double labs_dphi =
        std::log(kappa_) + (kappa_ - 1.0) * lu + std::log(2.0 * s_) - 2.0 * std::log(d2);
    const double lt = kappa_ * lu;
    if (lt > 120.0) return std::exp(std::log(y0_ / M_PI) - 2.0 * lt + labs_dphi);
    const double t = -std::exp(lt); // chord maps to t < 0
    const double poisson = (y0_ / M_PI) / ((t - x0_) * (t - x0_) + y0_ * y0_);
    return poisson * std::exp(labs_dphi);
}

cplx LensRegion::integrate_arc(const std::function<cplx(cplx)>& f, double lo, double hi,
                               double abs_tol, double rel_tol) const {
    if (!(lo < hi)) return 0.0;
    return adaptive_integrate(
        [&](double th) { return f(std::polar(1.0, th)) * density_arc(th); }, lo, hi, abs_tol,
        rel_tol);
}

cplx LensRegion::integrate_chord(const std::function<cplx(cplx)>& f, double lo, double hi,
                                 double abs_tol, double rel_tol) const {
    if (!(lo < hi)) return 0.0;
    return adaptive_integrate([&](double y) { return f(cplx{c_, y}) * density_chord(y); }, lo, hi,
                              abs_tol, rel_tol);
}

cplx LensRegion::integrate(const std::function<cplx(cplx)>& f, double abs_tol,
                           double rel_tol) const {
    return integrate_arc(f, arc_theta_lo(), arc_theta_hi(), 0.5 * abs_tol, rel_tol) +
           integrate_chord(f, -s_, s_, 0.5 * abs_tol, rel_tol);
}

namespace {

// Panel edges on [a, b]: `mid` uniform panels in the middle and `levels`
// geometrically shrinking panels against each endpoint (quarter of the span
// per corner block). Handles the corner density z^{κ-1} and keeps per-panel
// oscillation bounded.
std::vector<double> graded_edges(double a, double b, int mid, int levels) {
    const double w = b - a;
    const double q = 0.25 * w;
    std::vector<double> e;
    e.push_back(a);
    for (int k = levels; k >= 1; --k) e.push_back(a + q * std::ldexp(1.0, -k));
    const double lo = a + q, hi = b - q;
    for (int i = 1; i < mid; ++i) e.push_back(lo + (hi - lo) * i / mid);
    e.push_back(hi);
    for (int k = 1; k <= levels; ++k) e.push_back(b - q * std::ldexp(1.0, -k));
    e.push_back(b);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
}

} // namespace

std::shared_ptr<const std::vector<LensNode>> LensRegion::fixed_rule(int max_freq) const {
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    const int level = std::max(1, (max_freq + 15) / 16); // quantize for cache reuse
    if (rule_cache_ && rule_cache_level_ >= level) return rule_cache_;

    const int freq = level * 16;
    auto nodes = std::make_shared<std::vector<LensNode>>();
    const QuadRule& gl = gauss_legendre(16);

    auto add_piece = [&](double a, double b, int mid, bool on_arc) {
        const std::vector<double> edges = graded_edges(a, b, mid, 28);
        for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
            const double m = 0.5 * (edges[p] + edges[p + 1]);
            const double h = 0.5 * (edges[p + 1] - edges[p]);
            for (std::size_t i = 0; i < gl.x.size(); ++i) {
                const double t = m + h * gl.x[i];
                LensNode n;
                n.param = t;
                n.on_arc = on_arc;
                n.z = on_arc ? std::polar(1.0, t) : cplx{c_, t};
                n.w = h * gl.w[i] * (on_arc ? density_arc(t) : density_chord(t));
                nodes->push_back(n);
            }
        }
    };

    // per-panel phase kept near or below ~4 radians
    const double arc_len = arc_theta_hi() - arc_theta_lo();
    const int mid_arc = std::max(24, static_cast<int>(std::ceil(arc_len * freq / 4.0)));
    // on the chord the phase rate of z^k peaks at k/c near y = 0
    const int mid_chord =
        std::max(24, static_cast<int>(std::ceil(2.0 * s_ * (freq / c_) / 4.0)));
    add_piece(arc_theta_lo(), arc_theta_hi(), mid_arc, true);
    add_piece(-s_, s_, mid_chord, false);

    rule_cache_ = nodes;
    rule_cache_level_ = level;
    return nodes;
}

std::vector<std::pair<double, double>> circle_ball_params(double t_lo, double t_hi, cplx center,
                                                          double radius) {
    // |e^{it} - λ| < r  ⟺  cos(t - ψ) > (1 + ρ² - r²)/(2ρ), λ = ρ e^{iψ}
    std::vector<std::pair<double, double>> out;
    const double rho = std::abs(center);
    if (rho == 0.0) {
        if (radius > 1.0) out.emplace_back(t_lo, t_hi);
        return out;
    }
    const double cosv = (1.0 + rho * rho - radius * radius) / (2.0 * rho);
    if (cosv >= 1.0) return out; // ball misses the circle
    const double psi = std::arg(center);
    if (cosv <= -1.0) {
        out.emplace_back(t_lo, t_hi); // whole circle inside the ball
        return out;
    }
    const double half = std::acos(cosv);
    // the excluded-from/included-in window is (ψ - half, ψ + half) mod 2π
    for (int wrap = -2; wrap <= 2; ++wrap) {
        const double lo = psi - half + 2.0 * M_PI * wrap;
        const double hi = psi + half + 2.0 * M_PI * wrap;
        const double a = std::max(lo, t_lo), b = std::min(hi, t_hi);
        if (a < b) out.emplace_back(a, b);
    }
    return out;
}

std::vector<std::pair<double, double>> segment_ball_params(double x0, double y_lo, double y_hi,
                                                           cplx center, double radius) {
    std::vector<std::pair<double, double>> out;
    const double dx = x0 - center.real();
    const double disc = radius * radius - dx * dx;
    if (disc <= 0.0) return out;
    const double q = std::sqrt(disc);
    const double a = std::max(center.imag() - q, y_lo);
    const double b = std::min(center.imag() + q, y_hi);
    if (a < b) out.emplace_back(a, b);
    return out;
}

} // namespace p2mu
