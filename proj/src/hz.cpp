#include "p2mu/hz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "p2mu/errors.hpp"
#include "p2mu/geometry.hpp"
#include "p2mu/hz_g.hpp"
#include "p2mu/quadrature.hpp"

namespace p2mu {

namespace {

void check_params(const HZParams& p) {
    if (!(std::abs(p.a) < 1.0)) throw domain_error("hz: |a| < 1 required");
    if (p.alpha < 0) throw domain_error("hz: alpha must be nonnegative");
    if (!(p.c > 0.0 && p.c < 1.0)) throw domain_error("hz: c must lie in (0,1)");
}

} // namespace

cplx g_alpha_eval(const HZParams& p, cplx z) {
    check_params(p);
    return hz_g(p.a, p.alpha, z);
}

std::vector<cplx> g_alpha_zeros(const HZParams& p) {
    check_params(p);
    if (std::abs(p.a) == 0.0)
        throw domain_error("g_alpha_zeros: construction requires a != 0");
    const int L = p.alpha + 2;
    const double s = 1.0 - std::norm(p.a);
    std::vector<cplx> zeros;
    for (int k = 0; k < L; ++k) {
        const cplx z = (1.0 - s * std::polar(1.0, 2.0 * M_PI * k / L)) / std::conj(p.a);
        if (std::abs(z) < 1.0) zeros.push_back(z);
    }
    return zeros; // k = 0 gives z = a, always interior
}

bool interior_zero_exists(const HZParams& p) {
    check_params(p);
    const int L = p.alpha + 2;
    return 1.0 - std::norm(p.a) < 2.0 * std::cos(2.0 * M_PI / L) - 1.0;
}

PolyCoeffs g_alpha_taylor(const HZParams& p, int degree) {
    check_params(p);
    if (degree < 0) throw domain_error("g_alpha_taylor: degree must be nonnegative");
    const int L = p.alpha + 2;
    const double sL = std::pow(1.0 - std::norm(p.a), L);
    PolyCoeffs out(static_cast<std::size_t>(degree) + 1);
    out[0] = 1.0 - sL;
    double binom = 1.0; // binom(k+L-1, L-1), running
    cplx abar_pow = 1.0;
    for (int k = 1; k <= degree; ++k) {
        binom *= static_cast<double>(k + L - 1) / k;
        abar_pow *= std::conj(p.a);
        out[static_cast<std::size_t>(k)] = -sL * binom * abar_pow;
    }
    return out;
}

double g_alpha_tail_bound(const HZParams& p, int degree) {
    check_params(p);
    const int L = p.alpha + 2;
    const double sL = std::pow(1.0 - std::norm(p.a), L);
    const double r = std::abs(p.a);
    if (r == 0.0) return 0.0;
    // term t_k = binom(k+L-1, L-1) r^k; sum exactly until the ratio
    // r(k+L)/(k+1) clears 0.999, then a geometric majorant
    double binom = 1.0;
    double rp = 1.0;
    for (int k = 1; k <= degree; ++k) {
        binom *= static_cast<double>(k + L - 1) / k;
        rp *= r;
    }
    double total = 0.0;
    int k = degree;
    double term = binom * rp;
    for (int guard = 0; guard < 4000000; ++guard) {
        ++k;
        term *= r * static_cast<double>(k + L - 1) / k;
        const double ratio = r * static_cast<double>(k + L) / (k + 1);
        if (ratio < 0.999) {
            total += term / (1.0 - ratio);
            return sL * total;
        }
        total += term;
    }
    return std::numeric_limits<double>::infinity();
}

double lens_closure_distance(const LensRegion& lens, cplx z) {
    if (std::abs(z) <= 1.0 && z.real() <= lens.c()) return 0.0;
    double best = std::min(std::abs(z - lens.corner_top()), std::abs(z - lens.corner_bot()));
    // projection onto the circular arc
    if (std::abs(z) > 0.0) {
        const cplx w = z / std::abs(z);
        if (w.real() <= lens.c()) best = std::min(best, std::abs(z - w));
    }
    // projection onto the chord
    const double y = std::clamp(z.imag(), -lens.half_chord(), lens.half_chord());
    const cplx w2{lens.c(), y};
    if (std::abs(w2) <= 1.0) best = std::min(best, std::abs(z - w2));
    return best;
}

ComplexMeasure build_sigma(const HZParams& p) {
    check_params(p);
    if (std::abs(p.a) == 0.0) throw domain_error("build_sigma: construction requires a != 0");
    auto lens = std::make_shared<LensRegion>(p.c);
    const int L = p.alpha + 2;
    const double s = 1.0 - std::norm(p.a);
    for (int k = 0; k < L; ++k) {
        const cplx zk = (1.0 - s * std::polar(1.0, 2.0 * M_PI * k / L)) / std::conj(p.a);
        if (lens_closure_distance(*lens, zk) < 1e-6)
            throw precondition_error("build_sigma: a zero of g touches the closed lens");
    }
    LensHarmonicComponent comp;
    comp.c = p.c;
    comp.lens = lens;
    comp.inv_abs_g_sq = true;
    comp.inv_a = p.a;
    comp.inv_alpha = p.alpha;
    const int n_tab = 64;
    for (int i = 1; i < n_tab; ++i) {
        const double th =
            lens->arc_theta_lo() + (lens->arc_theta_hi() - lens->arc_theta_lo()) * i / n_tab;
        comp.arc_samples.emplace_back(
            th, lens->density_arc(th) / std::norm(hz_g(p.a, p.alpha, std::polar(1.0, th))));
    }
    for (int i = 1; i < n_tab; ++i) {
        const double y = -lens->half_chord() + 2.0 * lens->half_chord() * i / n_tab;
        comp.chord_samples.emplace_back(
            y, lens->density_chord(y) / std::norm(hz_g(p.a, p.alpha, cplx{p.c, y})));
    }
    return ComplexMeasure({MeasureComponent{comp}});
}

ComplexMeasure build_mu(const HZParams& p) {
    return build_sigma(p) + bergman_weight(p.alpha);
}

namespace {

// <p, g>_{A_α} = Σ_m p_m conj(γ_m) M_m with γ the Taylor coefficients of g
// and M_m the diagonal Bergman moments: the series collapses exactly
// against a polynomial.
cplx bergman_inner_with_g(const HZParams& p, const PolyCoeffs& poly) {
    const int deg = poly_degree(poly);
    if (deg < 0) return 0.0;
    const PolyCoeffs gamma = g_alpha_taylor(p, deg);
    cplx acc = 0.0;
    for (int m = 0; m <= deg; ++m) {
        double Mm = 1.0;
        for (int i = 1; i <= p.alpha + 1; ++i) Mm *= static_cast<double>(i) / (m + i);
        acc += poly[static_cast<std::size_t>(m)] * std::conj(gamma[static_cast<std::size_t>(m)]) *
               Mm;
    }
    return acc;
}

// ∫ f(z) dσ over the lens boundary (σ = |g|^{-2} ω), adaptive.
cplx sigma_integral(const HZParams& p, const LensRegion& lens,
                    const std::function<cplx(cplx)>& f, double tol) {
    auto weighted = [&](cplx z) { return f(z) / std::norm(hz_g(p.a, p.alpha, z)); };
    return lens.integrate(weighted, tol, 1e-11);
}

} // namespace

OrthogonalityReport verify_orthogonality(const HZParams& p, int n, double tol) {
    check_params(p);
    if (n < 1) throw domain_error("verify_orthogonality: n >= 1 required");
    const ComplexMeasure sigma = build_sigma(p);
    const auto& lc = std::get<LensHarmonicComponent>(sigma.components().front());
    const LensRegion& lens = lc.region();
    const double qtol = std::min(1e-12, tol / 50.0);

    OrthogonalityReport rep;
    for (int j = 1; j <= n; ++j) {
        // (i): ∫ z^j g conj(g) dσ = ∫ z^j dω, the harmonic mean value of z^j
        const cplx vi = sigma_integral(
            p, lens,
            [&](cplx z) {
                const cplx g = hz_g(p.a, p.alpha, z);
                return BivariatePoly::ipow(z, j) * g * std::conj(g);
            },
            qtol);
        rep.family_i.push_back(std::abs(vi));
        // (ii): ∫ z^j conj(g) dσ = ∫ z^j / g dω, mean value of an analytic
        // zero-free ratio
        const cplx vii = sigma_integral(
            p, lens,
            [&](cplx z) {
                return BivariatePoly::ipow(z, j) * std::conj(hz_g(p.a, p.alpha, z));
            },
            qtol);
        rep.family_ii.push_back(std::abs(vii));
    }
    for (int j = 0; j <= n; ++j) {
        if (j + 2 > sigma.max_degree())
            throw capability_error("verify_orthogonality: degree-insufficient for family (iii)");
        // p_j = z^{j+1}(z-a)
        PolyCoeffs pj(static_cast<std::size_t>(j) + 3, cplx{0.0});
        pj[static_cast<std::size_t>(j) + 2] = 1.0;
        pj[static_cast<std::size_t>(j) + 1] = -p.a;
        const cplx bergman_part = bergman_inner_with_g(p, pj);
        const cplx sigma_part = sigma_integral(
            p, lens,
            [&](cplx z) { return poly_eval(pj, z) * std::conj(hz_g(p.a, p.alpha, z)); }, qtol);
        rep.family_iii.push_back(std::abs(bergman_part + sigma_part));
    }
    for (double v : rep.family_i) rep.max_i = std::max(rep.max_i, v);
    for (double v : rep.family_ii) rep.max_ii = std::max(rep.max_ii, v);
    for (double v : rep.family_iii) rep.max_iii = std::max(rep.max_iii, v);
    return rep;
}

NotGeneratedReport verify_not_generated(const HZParams& p, const std::vector<int>& d_n_list,
                                        const std::vector<int>& wandering_n_list,
                                        int gram_degree, double svtol) {
    check_params(p);
    if (!interior_zero_exists(p))
        throw precondition_error("verify_not_generated: no interior zero besides a");
    if (d_n_list.empty() || wandering_n_list.empty())
        throw precondition_error("verify_not_generated: empty degree lists");

    NotGeneratedReport rep;
    const std::vector<cplx> zeros = g_alpha_zeros(p);
    rep.z1 = zeros.at(1);
    rep.d_n_list = d_n_list;
    rep.wandering_n_list = wandering_n_list;

    ComplexMeasure mu = build_mu(p);
    mu.set_max_degree(std::max(mu.max_degree(), gram_degree));
    const GramBasis gb = gram(mu, gram_degree);

    const int max_n = *std::max_element(d_n_list.begin(), d_n_list.end());
    const int ng = gram_degree - max_n; // g-truncation degree for the d2 spans
    if (ng < 4) throw precondition_error("verify_not_generated: gram degree too small");
    // d1 truncates g at the largest span degree: the fixed target keeps the
    // sequence structurally monotone while the span can reach every mode
    const PolyCoeffs g_full = g_alpha_taylor(p, max_n);
    const PolyCoeffs g_trunc = g_alpha_taylor(p, ng);
    const PolyCoeffs h{-p.a, cplx{1.0}};

    for (int n : d_n_list) {
        rep.d1.push_back(distance_to_cyclic(gb, g_full, h, n));
        rep.d2.push_back(distance_to_cyclic(gb, h, g_trunc, n + ng));
        const GramBasis sub = gram_leading_block(gb, std::min(n + 1, gram_degree));
        rep.d2_bound.push_back(std::abs(rep.z1 - p.a) / point_eval_norm(sub, rep.z1));
    }
    rep.d1_monotone = true;
    for (std::size_t i = 1; i < rep.d1.size(); ++i)
        if (rep.d1[i] > rep.d1[i - 1] + 1e-10) rep.d1_monotone = false;
    rep.d1_decreased = rep.d1.back() < 0.9 * rep.d1.front();
    rep.d2_bound_holds = true;
    for (std::size_t i = 0; i < rep.d2.size(); ++i)
        if (!(rep.d2[i] >= rep.d2_bound[i])) rep.d2_bound_holds = false;

    // wandering dimension and the cosine against the M_n projection of g
    const ComplexMeasure sigma_m = build_sigma(p);
    const auto& lc = std::get<LensHarmonicComponent>(sigma_m.components().front());
    const LensRegion& lens = lc.region();
    // β_m = <z^m, g>_μ, exact Bergman part plus σ quadrature
    std::vector<cplx> beta(static_cast<std::size_t>(gram_degree) + 1);
    {
        const PolyCoeffs gamma = g_alpha_taylor(p, gram_degree);
        for (int m = 0; m <= gram_degree; ++m) {
            double Mm = 1.0;
            for (int i = 1; i <= p.alpha + 1; ++i) Mm *= static_cast<double>(i) / (m + i);
            const cplx bpart = std::conj(gamma[static_cast<std::size_t>(m)]) * Mm;
            const cplx spart = sigma_integral(
                p, lens,
                [&](cplx z) {
                    return BivariatePoly::ipow(z, m) * std::conj(hz_g(p.a, p.alpha, z));
                },
                1e-12);
            beta[static_cast<std::size_t>(m)] = bpart + spart;
        }
    }
    rep.wandering_all_one = true;
    for (int n : wandering_n_list) {
        const GramBasis sub = gram_leading_block(gb, n);
        const WanderingResult w = wandering_dim(sub, p.a, svtol);
        rep.wandering_dims.push_back(w.dim);
        if (w.dim != 1) rep.wandering_all_one = false;
        // projection of g onto M_n through the orthonormal frame
        const SubspaceTruncation M = subspace_basis(sub, p.a);
        double proj_norm2 = 0.0;
        for (std::size_t j = 0; j < M.basis_coeffs.cols(); ++j) {
            cplx inner = 0.0; // <q_j, g>
            for (std::size_t i = 0; i < M.basis_coeffs.rows(); ++i)
                inner += M.basis_coeffs(i, j) * beta[i];
            proj_norm2 += std::norm(inner);
        }
        cplx wg = 0.0; // <w, g>
        for (std::size_t i = 0; i < w.wandering.size(); ++i) wg += w.wandering[i] * beta[i];
        const double cosine =
            proj_norm2 > 0.0 ? std::abs(wg) / std::sqrt(proj_norm2) : 0.0;
        rep.wandering_cosine.push_back(cosine);
    }
    return rep;
}

} // namespace p2mu
