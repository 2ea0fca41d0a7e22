#include "p2mu/cauchy.hpp"

#include <algorithm>
#include <cmath>

#include "p2mu/errors.hpp"
#include "p2mu/linalg.hpp"
#include "p2mu/quadrature.hpp"

namespace p2mu {

namespace {

constexpr double kCircleBand = 1e-13; // |.|z|-1| band treated as "on the circle"

using Interval = std::pair<double, double>;

std::vector<Interval> complement_intervals(double lo, double hi, std::vector<Interval> cut) {
    std::sort(cut.begin(), cut.end());
    std::vector<Interval> out;
    double cur = lo;
    for (const auto& [a, b] : cut) {
        if (b <= cur) continue;
        if (a > cur) out.emplace_back(cur, std::min(a, hi));
        cur = std::max(cur, b);
        if (cur >= hi) break;
    }
    if (cur < hi) out.emplace_back(cur, hi);
    return out;
}

// the section [ρ_lo, ρ_hi] of the ray z + ρ e^{iφ} inside the unit disk
bool ray_disk_section(cplx z, double phi, double& rho_lo, double& rho_hi) {
    const double b = (std::conj(z) * std::polar(1.0, phi)).real();
    const double disc = b * b - (std::norm(z) - 1.0);
    if (disc <= 0.0) return false;
    const double q = std::sqrt(disc);
    rho_lo = std::max(-b - q, 0.0);
    rho_hi = -b + q;
    return rho_hi > rho_lo;
}

// ∫_{x0}^{x1} t^k (1-t)^α dt, exact Gauss-Legendre on the polynomial
double bergman_J(int k, int alpha, double x0, double x1) {
    if (!(x1 > x0)) return 0.0;
    const int n = (k + alpha) / 2 + 2;
    return gauss_integrate(
        [&](double t) { return std::pow(t, k) * std::pow(1.0 - t, alpha); }, x0, x1, n);
}

// -------- closed forms -------------------------------------------------------

cplx atom_pv(const AtomComponent& c, cplx z) {
    if (std::abs(c.point - z) <= 1e-14 * (1.0 + std::abs(c.point)))
        throw pv_undefined_error("cauchy_pv: evaluation at an atom of the measure");
    return c.weight / (c.point - z);
}

// Σ_{k≥1} c_k z^{k-1} inside, -Σ_{k≤0} c_k z^{k-1} outside, their average on
// the circle (finite Fourier densities are smooth, so the one-sided average
// is the principal value everywhere on T).
cplx circle_pv_closed(const LaurentPoly& h, cplx z) {
    const double az = std::abs(z);
    cplx inner = 0.0, outer = 0.0;
    if (az < 1.0 + kCircleBand)
        for (const auto& [k, c] : h.coeffs())
            if (k >= 1) inner += c * BivariatePoly::ipow(z, k - 1);
    if (az > 1.0 - kCircleBand)
        for (const auto& [k, c] : h.coeffs())
            if (k <= 0) outer -= c * BivariatePoly::ipow(1.0 / z, 1 - k);
    if (std::abs(az - 1.0) <= kCircleBand) return 0.5 * (inner + outer);
    return az < 1.0 ? inner : outer;
}

// radial Beta-integral form: each density term z^m conj(z)^k contributes on
// exactly one side of |z| (angular selection picks a single Fourier mode)
cplx bergman_pv_closed(const BergmanComponent& c, cplx z) {
    cplx acc = 0.0;
    const double az2 = std::norm(z);
    for (const auto& [mk, q] : c.density.terms()) {
        const int m = mk.first, k = mk.second;
        if (m > k) {
            if (az2 < 1.0)
                acc += q * BivariatePoly::ipow(z, m - k - 1) * (c.alpha + 1.0) *
                       bergman_J(k, c.alpha, az2, 1.0);
        } else {
            // contribution is O(|z|^{m+k+1}); below 1e-30 in |z|² it is zero
            // to double precision and the negative power would overflow
            const double hi = std::min(az2, 1.0);
            if (hi > 1e-30)
                acc -= q * BivariatePoly::ipow(1.0 / z, k + 1 - m) * (c.alpha + 1.0) *
                       bergman_J(k, c.alpha, 0.0, hi);
        }
    }
    return acc;
}

// -------- curve quadrature ---------------------------------------------------

struct CurvePoint {
    cplx w, dw; // position and d(position)/d(param)
};

// PV of ∫ D(t)/(w(t)-z) dt over [lo,hi] with w(t_z) = z in the interior:
// subtract D(t_z)/(w'(t_z)(t-t_z)) and add its explicit principal value.
cplx pv_desingularized(const std::function<CurvePoint(double)>& curve,
                       const std::function<cplx(double)>& density, double lo, double hi,
                       double tz, cplx z, double tol) {
    const CurvePoint at = curve(tz);
    const cplx d0 = density(tz);
    const cplx slope = d0 / at.dw;
    auto f = [&](double t) {
        const CurvePoint p = curve(t);
        const cplx direct = density(t) / (p.w - z);
        if (std::abs(t - tz) < 1e-13) {
            // removable point: derivative limit is immaterial at tol scales
            return cplx{0.0};
        }
        return direct - slope / (t - tz);
    };
    cplx acc = adaptive_integrate(f, lo, tz, 0.25 * tol, 1e-12) +
               adaptive_integrate(f, tz, hi, 0.25 * tol, 1e-12);
    if (tz > lo && tz < hi) acc += slope * std::log((hi - tz) / (tz - lo));
    return acc;
}

cplx circle_pv_quadrature(const LaurentPoly& h, cplx z, double tol) {
    const double az = std::abs(z);
    if (std::abs(az - 1.0) <= 1e-12) {
        const double tz = std::arg(z);
        auto curve = [](double t) -> CurvePoint {
            const cplx w = std::polar(1.0, t);
            return {w, cplx{0.0, 1.0} * w};
        };
        auto dens = [&](double t) { return h.eval(std::polar(1.0, t)) / (2.0 * M_PI); };
        return pv_desingularized(curve, dens, tz - M_PI, tz + M_PI, tz, std::polar(1.0, tz),
                                 tol);
    }
    return adaptive_integrate(
        [&](double t) {
            const cplx w = std::polar(1.0, t);
            return h.eval(w) / (w - z) / (2.0 * M_PI);
        },
        0.0, 2.0 * M_PI, 0.5 * tol, 1e-12);
}

cplx lens_pv_quadrature(const LensHarmonicComponent& lc, cplx z, double tol) {
    const LensRegion& lens = lc.region();
    const double s = lens.half_chord();
    const bool on_arc = std::abs(std::abs(z) - 1.0) <= 1e-12 && z.real() < lens.c() &&
                        std::abs(std::arg(z)) >= lens.theta_c();
    const bool on_chord =
        std::abs(z.real() - lens.c()) <= 1e-12 && std::abs(z.imag()) < s;

    auto arc_curve = [](double t) -> CurvePoint {
        const cplx w = std::polar(1.0, t);
        return {w, cplx{0.0, 1.0} * w};
    };
    auto arc_dens = [&](double t) {
        return lc.density_value(std::polar(1.0, t)) * lens.density_arc(t);
    };
    auto chord_curve = [&](double y) -> CurvePoint {
        return {cplx{lens.c(), y}, cplx{0.0, 1.0}};
    };
    auto chord_dens = [&](double y) {
        return lc.density_value(cplx{lens.c(), y}) * lens.density_chord(y);
    };

    cplx acc = 0.0;
    if (on_arc) {
        double tz = std::arg(z);
        if (tz < 0.0) tz += 2.0 * M_PI;
        acc += pv_desingularized(arc_curve, arc_dens, lens.arc_theta_lo(), lens.arc_theta_hi(),
                                 tz, std::polar(1.0, tz), tol);
    } else {
        acc += adaptive_integrate(
            [&](double t) { return arc_dens(t) / (std::polar(1.0, t) - z); },
            lens.arc_theta_lo(), lens.arc_theta_hi(), 0.5 * tol, 1e-12);
    }
    if (on_chord) {
        acc += pv_desingularized(chord_curve, chord_dens, -s, s, z.imag(),
                                 cplx{lens.c(), z.imag()}, tol);
    } else {
        acc += adaptive_integrate(
            [&](double y) { return chord_dens(y) / (cplx{lens.c(), y} - z); }, -s, s,
            0.5 * tol, 1e-12);
    }
    return acc;
}

// polar recentering at z: 1/(w-z) = e^{-iφ}/ρ, the radial integrand becomes
// a polynomial integrated exactly; rays clipped to the disk (and to the
// ε-ball when removing one)
cplx bergman_polar(const BergmanComponent& c, cplx z, double rho_cap, double tol) {
    const int deg = std::max(0, c.density.total_degree()) + 2 * c.alpha + 2;
    const int n_inner = deg / 2 + 2;
    auto outer = [&](double phi) -> cplx {
        double lo = 0.0, hi = 0.0;
        if (!ray_disk_section(z, phi, lo, hi)) return cplx{0.0};
        if (rho_cap > 0.0) hi = std::min(hi, rho_cap);
        if (!(hi > lo)) return cplx{0.0};
        const cplx dir = std::polar(1.0, phi);
        const cplx inner = gauss_integrate(
            [&](double rho) {
                const cplx w = z + rho * dir;
                return c.density.eval(w) * (c.alpha + 1.0) *
                       std::pow(std::max(0.0, 1.0 - std::norm(w)), c.alpha);
            },
            lo, hi, n_inner);
        return inner * std::conj(dir);
    };
    return adaptive_integrate(outer, 0.0, 2.0 * M_PI, 0.5 * tol, 1e-12) / M_PI;
}

cplx component_pv(const MeasureComponent& comp, cplx z, double tol, bool force_quadrature,
                  bool& used_quadrature) {
    return std::visit(
        [&](const auto& c) -> cplx {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, AtomComponent>) {
                return atom_pv(c, z);
            } else if constexpr (std::is_same_v<T, CircleFourierComponent>) {
                if (force_quadrature) {
                    used_quadrature = true;
                    return circle_pv_quadrature(c.density, z, tol);
                }
                return circle_pv_closed(c.density, z);
            } else if constexpr (std::is_same_v<T, BergmanComponent>) {
                if (force_quadrature) {
                    used_quadrature = true;
                    return bergman_polar(c, z, 0.0, tol);
                }
                return bergman_pv_closed(c, z);
            } else {
                used_quadrature = true;
                return lens_pv_quadrature(c, z, tol);
            }
        },
        comp);
}

} // namespace

CauchyValue cauchy_pv(const ComplexMeasure& nu, cplx z) {
    CauchyValue out;
    out.value = 0.0;
    bool quad = false;
    for (const MeasureComponent& comp : nu.components())
        out.value += component_pv(comp, z, 1e-11, false, quad);
    out.method = quad ? CauchyValue::Method::quadrature : CauchyValue::Method::closed_form;
    out.est_error = quad ? 1e-10 * (1.0 + std::abs(out.value)) : 1e-14;
    return out;
}

CauchyValue cauchy_pv_quadrature(const ComplexMeasure& nu, cplx z, double tol) {
    CauchyValue out;
    out.value = 0.0;
    bool quad = false;
    for (const MeasureComponent& comp : nu.components())
        out.value += component_pv(comp, z, tol, true, quad);
    out.method = quad ? CauchyValue::Method::quadrature : CauchyValue::Method::closed_form;
    out.est_error = quad ? tol * (1.0 + std::abs(out.value)) : 1e-14;
    return out;
}

CauchyValue cauchy_eps(const ComplexMeasure& nu, cplx z, double eps) {
    if (!(eps > 0.0)) throw domain_error("cauchy_eps: eps must be positive");
    CauchyValue out;
    out.value = 0.0;
    bool quad = false;
    for (const MeasureComponent& comp : nu.components()) {
        out.value += std::visit(
            [&](const auto& c) -> cplx {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, AtomComponent>) {
                    return std::abs(c.point - z) > eps ? c.weight / (c.point - z) : cplx{0.0};
                } else if constexpr (std::is_same_v<T, CircleFourierComponent>) {
                    quad = true;
                    cplx acc = 0.0;
                    for (const auto& [a, b] : complement_intervals(
                             0.0, 2.0 * M_PI, circle_ball_params(0.0, 2.0 * M_PI, z, eps)))
                        acc += adaptive_integrate(
                            [&](double t) {
                                const cplx w = std::polar(1.0, t);
                                return c.density.eval(w) / (w - z) / (2.0 * M_PI);
                            },
                            a, b, 1e-12, 1e-12);
                    return acc;
                } else if constexpr (std::is_same_v<T, BergmanComponent>) {
                    quad = true;
                    // full transform minus the ε-ball part (polar recentering)
                    return bergman_pv_closed(c, z) - bergman_polar(c, z, eps, 1e-11);
                } else {
                    quad = true;
                    const LensRegion& lens = c.region();
                    cplx acc = 0.0;
                    for (const auto& [a, b] : complement_intervals(
                             lens.arc_theta_lo(), lens.arc_theta_hi(),
                             circle_ball_params(lens.arc_theta_lo(), lens.arc_theta_hi(), z,
                                                eps)))
                        acc += adaptive_integrate(
                            [&](double t) {
                                const cplx w = std::polar(1.0, t);
                                return c.density_value(w) * lens.density_arc(t) / (w - z);
                            },
                            a, b, 1e-12, 1e-12);
                    const double s = lens.half_chord();
                    for (const auto& [a, b] : complement_intervals(
                             -s, s, segment_ball_params(lens.c(), -s, s, z, eps)))
                        acc += adaptive_integrate(
                            [&](double y) {
                                const cplx w{lens.c(), y};
                                return c.density_value(w) * lens.density_chord(y) / (w - z);
                            },
                            a, b, 1e-12, 1e-12);
                    return acc;
                }
            },
            comp);
    }
    out.method = quad ? CauchyValue::Method::quadrature : CauchyValue::Method::closed_form;
    out.est_error = quad ? 1e-10 * (1.0 + std::abs(out.value)) : 1e-14;
    return out;
}

double cauchy_max(const ComplexMeasure& nu, cplx z, const std::vector<double>& eps_grid) {
    if (eps_grid.empty()) throw precondition_error("cauchy_max: empty eps grid");
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        if (!(eps_grid[i] > 0.0)) throw precondition_error("cauchy_max: eps must be positive");
        if (i > 0 && !(eps_grid[i] < eps_grid[i - 1]))
            throw precondition_error("cauchy_max: eps grid must be decreasing");
    }
    double best = 0.0;
    for (double eps : eps_grid) best = std::max(best, std::abs(cauchy_eps(nu, z, eps).value));
    return best;
}

// -------- jump scan ----------------------------------------------------------

namespace {

struct SamplePattern {
    std::vector<cplx> offsets; // normalized: λ = ζ(1 - δ·offset)
};

SamplePattern make_pattern(double r) {
    const double cone = 0.92 * std::asin(r);
    SamplePattern p;
    for (double rho : {0.5, 0.7, 0.9})
        for (double f : {0.0, 0.35, -0.35, 0.7, -0.7})
            p.offsets.push_back(rho * std::polar(1.0, f * cone));
    return p;
}

cplx h_at(const ComplexMeasure& nu, cplx zeta) {
    cplx h = 0.0;
    for (const MeasureComponent& comp : nu.components())
        if (const auto* c = std::get_if<CircleFourierComponent>(&comp))
            h += c->density.eval(zeta);
    return h;
}

struct ShellSide {
    cplx fit;
    double kept = 0.0, total = 0.0;
    std::vector<cplx> flagged;
};

ShellSide evaluate_shell(const ComplexMeasure& nu, const std::vector<cplx>& pts, double tol) {
    ShellSide out;
    std::vector<cplx> vals(pts.size());
    std::vector<bool> ok(pts.size(), true);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        try {
            vals[i] = cauchy_pv(nu, pts[i]).value;
        } catch (const pv_undefined_error&) {
            ok[i] = false;
        }
    }
    // robust center: componentwise median of defined values
    std::vector<double> re, im;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (ok[i]) {
            re.push_back(vals[i].real());
            im.push_back(vals[i].imag());
        }
    if (re.empty()) {
        for (cplx p : pts) out.flagged.push_back(p);
        out.total = static_cast<double>(pts.size());
        throw insufficient_data_error("plemelj_scan: all shell samples undefined");
    }
    auto median = [](std::vector<double> v) {
        std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
        double hi = v[v.size() / 2];
        if (v.size() % 2 == 0) {
            std::nth_element(v.begin(), v.begin() + v.size() / 2 - 1, v.end());
            return 0.5 * (hi + v[v.size() / 2 - 1]);
        }
        return hi;
    };
    const cplx med{median(re), median(im)};
    std::vector<double> devs;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (ok[i]) devs.push_back(std::abs(vals[i] - med));
    const double mad = median(devs);
    const double cutoff = std::max(tol, 8.0 * mad);

    cplx mean = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out.total += 1.0;
        if (!ok[i] || std::abs(vals[i] - med) > cutoff) {
            out.flagged.push_back(pts[i]);
            continue;
        }
        mean += vals[i];
        out.kept += 1.0;
    }
    if (out.kept == 0.0) throw insufficient_data_error("plemelj_scan: shell fully flagged");
    out.fit = mean / out.kept;
    return out;
}

} // namespace

JumpScanReport plemelj_scan(const ComplexMeasure& nu, cplx zeta, double r,
                            const std::vector<double>& delta_list, double tol) {
    if (std::abs(std::abs(zeta) - 1.0) > 1e-12)
        throw domain_error("plemelj_scan: zeta must be unimodular");
    if (!(r > 0.0 && r < 1.0)) throw domain_error("plemelj_scan: r must lie in (0,1)");
    if (delta_list.size() < 3)
        throw precondition_error("plemelj_scan: at least three deltas required");
    if (!(tol > 0.0)) throw domain_error("plemelj_scan: tol must be positive");

    JumpScanReport rep;
    rep.zeta = zeta;
    rep.r = r;
    rep.tol = tol;
    rep.h_at_zeta = h_at(nu, zeta);
    rep.pv_at_zeta = cauchy_pv(nu, zeta).value;
    const cplx half_jump = 0.5 * rep.h_at_zeta * std::conj(zeta);
    rep.predicted_inner = rep.pv_at_zeta + half_jump;
    rep.predicted_outer = rep.pv_at_zeta - half_jump;

    const SamplePattern pattern = make_pattern(r);
    std::vector<double> deltas;
    std::vector<cplx> inner_fits, outer_fits;
    for (double delta : delta_list) {
        if (!(delta > 0.0 && delta < 1.0))
            throw domain_error("plemelj_scan: deltas must lie in (0,1)");
        std::vector<cplx> inner_pts, outer_pts;
        for (cplx off : pattern.offsets) {
            const cplx lam = zeta * (1.0 - delta * off);
            inner_pts.push_back(lam);
            outer_pts.push_back(reflect_tangent(zeta, lam));
        }
        const ShellSide inner = evaluate_shell(nu, inner_pts, tol);
        const ShellSide outer = evaluate_shell(nu, outer_pts, tol);

        ShellRecord rec;
        rec.delta = delta;
        rec.inner_fit = inner.fit;
        rec.outer_fit = outer.fit;
        rec.pv_at_zeta = rep.pv_at_zeta;
        rec.predicted_inner = rep.predicted_inner;
        rec.predicted_outer = rep.predicted_outer;
        rec.agree_fraction = (inner.kept + outer.kept) / (inner.total + outer.total);
        rec.flagged_points = inner.flagged;
        rec.flagged_points.insert(rec.flagged_points.end(), outer.flagged.begin(),
                                  outer.flagged.end());
        rec.flagged_cover_proxy = rec.flagged_points.empty()
                                      ? 0.0
                                      : exceptional_cover_estimate(rec.flagged_points,
                                                                   delta / 16.0);
        rep.shells.push_back(std::move(rec));
        deltas.push_back(delta);
        inner_fits.push_back(inner.fit);
        outer_fits.push_back(outer.fit);
    }
    rep.inner_limit = neville_extrapolate(deltas, inner_fits);
    rep.outer_limit = neville_extrapolate(deltas, outer_fits);
    rep.jump = rep.inner_limit - rep.outer_limit;
    return rep;
}

cplx nontangential_limit_estimate(const std::vector<std::pair<cplx, cplx>>& samples,
                                  const StolzRegion& S, const std::vector<cplx>& flagged) {
    if (samples.empty()) throw insufficient_data_error("nontangential_limit_estimate: no samples");
    auto is_flagged = [&](cplx p) {
        for (cplx f : flagged)
            if (std::abs(p - f) <= 1e-12) return true;
        return false;
    };
    double dmax = 0.0;
    for (const auto& [lam, val] : samples) dmax = std::max(dmax, std::abs(lam - S.zeta));
    if (dmax == 0.0) throw insufficient_data_error("nontangential_limit_estimate: degenerate");

    // geometric shells; every populated shell must keep at least one point
    auto shell_of = [&](double d) {
        int j = 0;
        double edge = dmax;
        while (d <= 0.5 * edge && j < 60) {
            edge *= 0.5;
            ++j;
        }
        return j;
    };
    std::vector<int> shell_total(64, 0), shell_kept(64, 0);
    std::vector<std::pair<cplx, cplx>> kept;
    for (const auto& [lam, val] : samples) {
        const int sh = shell_of(std::abs(lam - S.zeta));
        shell_total[sh]++;
        if (!is_flagged(lam)) {
            shell_kept[sh]++;
            kept.emplace_back(lam, val);
        }
    }
    int populated = 0;
    for (int j = 0; j < 64; ++j) {
        if (shell_total[j] > 0 && shell_kept[j] == 0)
            throw insufficient_data_error(
                "nontangential_limit_estimate: a shell lost all points to flags");
        if (shell_kept[j] > 0) ++populated;
    }
    if (populated < 3)
        throw insufficient_data_error("nontangential_limit_estimate: need three shells");

    // least-squares fit value ≈ Σ b_p u^p, u = (λ-ζ)/dmax; shell weighting so
    // that dense shells do not dominate the constant term
    const int P = std::min<int>(3, populated - 1);
    CMatrix A(P + 1, P + 1);
    std::vector<cplx> rhs(P + 1, cplx{0.0});
    for (const auto& [lam, val] : kept) {
        const cplx u = (lam - S.zeta) / dmax;
        const double w = 1.0 / shell_kept[shell_of(std::abs(lam - S.zeta))];
        cplx up[8];
        up[0] = 1.0;
        for (int p = 1; p <= P; ++p) up[p] = up[p - 1] * u;
        for (int p = 0; p <= P; ++p) {
            for (int q = 0; q <= P; ++q) A(p, q) += w * std::conj(up[p]) * up[q];
            rhs[p] += w * std::conj(up[p]) * val;
        }
    }
    return hpd_solve(std::move(A), std::move(rhs))[0];
}

HardyCheckReport hardy_multiplication_check(const PolyCoeffs& f, const LaurentPoly& g,
                                            cplx zeta, double r) {
    for (const auto& [k, c] : g.coeffs())
        if (k <= 0 && std::abs(c) != 0.0)
            throw precondition_error(
                "hardy_multiplication_check: g must annihilate polynomials (c_k = 0, k <= 0)");
    if (std::abs(std::abs(zeta) - 1.0) > 1e-12)
        throw domain_error("hardy_multiplication_check: zeta must be unimodular");

    const ComplexMeasure gm = circle_fourier(g.coeffs());
    const ComplexMeasure fgm = multiply_density(gm, BivariatePoly::from_coeffs(f));

    HardyCheckReport rep;
    // (i) multiplication identity on a deterministic disk grid
    const int n_grid = 100;
    for (int j = 0; j < n_grid; ++j) {
        const double rad = 0.95 * std::sqrt((j + 0.5) / n_grid);
        const cplx lam = std::polar(rad, 2.39996322972865332 * j);
        const cplx lhs = poly_eval(f, lam) * cauchy_pv(gm, lam).value;
        const cplx rhs = cauchy_pv(fgm, lam).value;
        rep.identity_residual = std::max(rep.identity_residual, std::abs(lhs - rhs));
    }
    // (ii) boundary principal values
    rep.pv_gm_at_zeta = cauchy_pv(gm, zeta).value;
    rep.pv_fgm_at_zeta = cauchy_pv(fgm, zeta).value;
    const cplx zb = std::conj(zeta);
    const cplx g_z = g.eval(zeta), f_z = poly_eval(f, zeta);
    rep.pv_gm_residual = std::abs(rep.pv_gm_at_zeta - 0.5 * g_z * zb);
    rep.pv_fgm_residual = std::abs(rep.pv_fgm_at_zeta - 0.5 * f_z * g_z * zb);
    // (iii) nontangential limit of f·C(gm) along S_r(ζ): the jump formula
    // lands on C(fgm)(ζ) + ½f(ζ)g(ζ)ζ̄ = f(ζ)g(ζ)ζ̄
    const StolzRegion S{zeta, r, std::nullopt};
    std::vector<std::pair<cplx, cplx>> samples;
    for (cplx lam : approach_path(S, 0.5 * r, 48))
        samples.emplace_back(lam, poly_eval(f, lam) * cauchy_pv(gm, lam).value);
    rep.nt_limit = nontangential_limit_estimate(samples, S, {});
    rep.nt_residual = std::abs(rep.nt_limit - f_z * g_z * zb);
    return rep;
}

PoissonDecompositionReport poisson_decomposition_check(const LaurentPoly& sigma_density,
                                                       cplx zeta,
                                                       const std::vector<double>& r_list) {
    for (const auto& [k, c] : sigma_density.coeffs())
        if (k <= 0 && std::abs(c) != 0.0)
            throw precondition_error(
                "poisson_decomposition_check: need zσ ⊥ polynomials (c_k = 0, k <= 0)");
    if (std::abs(std::abs(zeta) - 1.0) > 1e-12)
        throw domain_error("poisson_decomposition_check: zeta must be unimodular");

    // measure (z·σ) dm via a density multiply; its transform at rζ is the
    // closed-form route
    const ComplexMeasure zsm =
        multiply_density(circle_fourier(sigma_density.coeffs()), BivariatePoly::monomial(1, 0));

    PoissonDecompositionReport rep;
    rep.boundary_value = sigma_density.eval(zeta); // σ(ζ)h(ζ), h ≡ 1 for m
    for (double r : r_list) {
        if (!(r > 0.0 && r < 1.0))
            throw domain_error("poisson_decomposition_check: r must lie in (0,1)");
        PoissonDecompositionReport::Row row;
        row.r = r;
        row.transform_value = cauchy_pv(zsm, r * zeta).value;
        const cplx rz_bar = std::conj(r * zeta);
        row.poisson_term = adaptive_integrate(
            [&](double t) {
                const cplx w = std::polar(1.0, t);
                const double ker = (1.0 - r * r) / std::norm(1.0 - rz_bar * w);
                return ker * sigma_density.eval(w) / (2.0 * M_PI);
            },
            0.0, 2.0 * M_PI, 1e-13, 1e-12);
        row.remainder_term = 0.0; // μ = m has no interior mass
        row.identity_residual =
            std::abs(row.transform_value - (row.poisson_term + row.remainder_term));
        row.boundary_gap = std::abs(row.poisson_term - rep.boundary_value);
        rep.rows.push_back(row);
    }
    return rep;
}

double disk_abs_mean(const PolyCoeffs& p, double R, double tol) {
    if (!(R > 0.0)) throw domain_error("disk_abs_mean: R must be positive");
    const double integral = adaptive_integrate_real(
        [&](double rho) {
            return rho * adaptive_integrate_real(
                             [&](double th) { return std::abs(poly_eval(p, std::polar(rho, th))); },
                             0.0, 2.0 * M_PI, 0.05 * tol, 0.1 * tol);
        },
        0.0, R, 0.1 * tol, 0.5 * tol);
    return integral / (M_PI * R * R);
}

} // namespace p2mu
