#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "p2mu/cauchy.hpp"
#include "p2mu/errors.hpp"
#include "p2mu/experiments.hpp"
#include "p2mu/geometry.hpp"
#include "p2mu/measure.hpp"
#include "p2mu/quadrature.hpp"

using namespace p2mu;

namespace {

double cdist(cplx a, cplx b) { return std::abs(a - b); }

// 1 + Re zeta as a Fourier density: c_{-1} = c_1 = 1/2, c_0 = 1
ComplexMeasure one_plus_re() {
    return circle_fourier({{-1, 0.5}, {0, 1.0}, {1, 0.5}});
}

} // namespace

TEST_CASE("epsilon-truncated transform: atoms in and out") {
    const ComplexMeasure d2 = point_mass(2.0);
    CHECK(cdist(cauchy_eps(d2, 0.0, 1.0).value, 0.5) == 0.0);
    CHECK(cdist(cauchy_eps(d2, 0.0, 3.0).value, 0.0) == 0.0);
    // full-circle symmetry of m at the center survives the truncation
    CHECK(cdist(cauchy_eps(circle_lebesgue(), 0.0, 0.5).value, 0.0) < 1e-12);
}

TEST_CASE("principal value closed forms for m") {
    const ComplexMeasure m = circle_lebesgue();
    CHECK(cdist(cauchy_pv(m, cplx{0.3, -0.2}).value, 0.0) == 0.0);
    CHECK(cdist(cauchy_pv(m, cplx{1.5, 0.7}).value, -1.0 / cplx{1.5, 0.7}) < 1e-16);
    const cplx zeta = std::polar(1.0, 0.9);
    CHECK(cdist(cauchy_pv(m, zeta).value, -0.5 * std::conj(zeta)) < 1e-15);
    CHECK(cauchy_pv(m, 0.5).method == CauchyValue::Method::closed_form);
    CHECK(cauchy_pv(m, 0.5).est_error <= 1e-13);
}

TEST_CASE("principal value: first Fourier mode and undefined atoms") {
    const ComplexMeasure zm = circle_fourier({{1, 1.0}});
    CHECK(cdist(cauchy_pv(zm, cplx{0.2, 0.6}).value, 1.0) == 0.0);
    CHECK_THROWS_AS((void)cauchy_pv(point_mass(2.0), 2.0), pv_undefined_error);
}

TEST_CASE("quadrature route agrees with circle closed forms") {
    const ComplexMeasure nu = circle_fourier({{-2, cplx{0.3, -0.1}}, {0, 1.0}, {3, 0.4}});
    SplitMix64 rng(5);
    for (int i = 0; i < 20; ++i) {
        const double rad = (i % 2) ? rng.uniform(0.0, 0.9) : rng.uniform(1.1, 3.0);
        const cplx z = std::polar(rad, rng.uniform(0.0, 2.0 * M_PI));
        CHECK(cdist(cauchy_pv(nu, z).value, cauchy_pv_quadrature(nu, z).value) < 1e-8);
    }
    // on-circle principal value via desingularized quadrature
    const cplx zeta = std::polar(1.0, 2.2);
    CHECK(cdist(cauchy_pv(nu, zeta).value, cauchy_pv_quadrature(nu, zeta).value) < 1e-8);
}

TEST_CASE("quadrature route agrees with Bergman closed forms") {
    ComplexMeasure a3 = bergman_weight(3);
    a3 = multiply_density(a3, BivariatePoly::monomial(1, 0) + BivariatePoly::constant(0.5));
    for (const cplx z : {cplx{0.0, 0.0}, cplx{0.4, 0.3}, cplx{-0.8, 0.1}, cplx{1.3, -0.5}}) {
        CHECK(cdist(cauchy_pv(a3, z).value, cauchy_pv_quadrature(a3, z, 1e-10).value) < 1e-8);
    }
}

TEST_CASE("epsilon truncation agrees with closed forms off the support") {
    // the exclusion ball misses the circle: no truncation at all
    const ComplexMeasure nu = circle_fourier({{-1, cplx{0.2, 0.1}}, {0, 1.0}, {2, 0.5}});
    for (const cplx z : {cplx{0.1, 0.05}, cplx{-0.3, 0.2}})
        CHECK(cdist(cauchy_eps(nu, z, 0.25).value, cauchy_pv(nu, z).value) < 1e-12);
}

TEST_CASE("epsilon truncation converges to the principal value") {
    const ComplexMeasure nu =
        one_plus_re() + point_mass(cplx{0.3, 0.4}, cplx{0.5, 0.0}) + bergman_weight(2);
    for (const cplx z : {cplx{0.6, 0.1}, cplx{-0.2, 0.8}}) {
        const cplx pv = cauchy_pv(nu, z).value;
        double prev = 1e100;
        for (double eps : {0.3, 0.1, 0.03, 0.01}) {
            const double gap = cdist(cauchy_eps(nu, z, eps).value, pv);
            CHECK(gap < prev + 1e-9);
            prev = gap;
        }
        CHECK(prev < 2e-2);
    }
}

TEST_CASE("transforms are linear in the measure") {
    const ComplexMeasure nu1 = one_plus_re(), nu2 = point_mass(cplx{0.2, -0.7}, 2.0);
    const cplx alpha{1.5, -2.0};
    const ComplexMeasure combo = nu1.scaled(alpha) + nu2;
    for (const cplx z : {cplx{0.5, 0.2}, cplx{-1.4, 0.3}}) {
        CHECK(cdist(cauchy_pv(combo, z).value,
                    alpha * cauchy_pv(nu1, z).value + cauchy_pv(nu2, z).value) < 1e-12);
        CHECK(cdist(cauchy_eps(combo, z, 0.2).value,
                    alpha * cauchy_eps(nu1, z, 0.2).value + cauchy_eps(nu2, z, 0.2).value) <
              1e-11);
    }
}

TEST_CASE("maximal transform") {
    const std::vector<double> grid{1.0, 0.3, 0.1, 0.03, 0.01};
    // single atom: approaches 1/|w - z|
    const ComplexMeasure dw = point_mass(cplx{0.5, 0.5});
    const cplx z{-0.1, 0.2};
    CHECK(cauchy_max(dw, z, grid) ==
          doctest::Approx(1.0 / std::abs(cplx{0.5, 0.5} - z)).epsilon(1e-12));
    // symmetry of m at the center at every eps
    CHECK(cauchy_max(circle_lebesgue(), 0.0, grid) < 1e-11);
    // Tolsa level-set shape with constant one: gamma({C_* >= a}) = |nu|/a
    const ComplexMeasure d0 = point_mass(0.0);
    for (double a : {1.0, 2.0, 10.0}) {
        const double radius = 1.0 / a;
        CHECK(cauchy_max(d0, cplx{radius, 0.0}, grid) >= a * (1.0 - 1e-12));
        CHECK(cauchy_max(d0, cplx{radius * (1.0 + 1e-9), 0.0}, grid) < a);
        CHECK(capacity_primitive(CapacityShape::disk, radius) ==
              variation_bound(d0) / a);
    }
    CHECK_THROWS_AS((void)cauchy_max(d0, 0.5, std::vector<double>{0.1, 0.2}),
                    precondition_error);
}

TEST_CASE("plemelj scan: Lebesgue measure at zeta = 1") {
    const JumpScanReport rep =
        plemelj_scan(circle_lebesgue(), 1.0, 0.5, {1e-2, 1e-3, 1e-4}, 1e-6);
    CHECK(cdist(rep.inner_limit, 0.0) < 1e-8);
    CHECK(cdist(rep.outer_limit, -1.0) < 1e-8);
    CHECK(cdist(rep.pv_at_zeta, -0.5) < 1e-14);
    for (const ShellRecord& s : rep.shells) CHECK(s.agree_fraction == 1.0);
    CHECK(cdist(rep.predicted_inner - rep.predicted_outer,
                rep.h_at_zeta * std::conj(rep.zeta)) < 1e-12);
}

TEST_CASE("plemelj scan: h = 1 + Re zeta") {
    const JumpScanReport rep = plemelj_scan(one_plus_re(), 1.0, 0.5, {1e-2, 1e-3, 1e-4}, 1e-6);
    CHECK(cdist(rep.inner_limit, 0.5) < 1e-6);
    CHECK(cdist(rep.outer_limit, -1.5) < 1e-6);
    CHECK(cdist(rep.pv_at_zeta, -0.5) < 1e-14);
    CHECK(cdist(rep.jump, 2.0) < 1e-6);
    // one-sided average identity
    CHECK(cdist(rep.pv_at_zeta, 0.5 * (rep.inner_limit + rep.outer_limit)) < 1e-5);
}

TEST_CASE("plemelj scan: measure supported away from zeta has no jump") {
    const JumpScanReport rep =
        plemelj_scan(point_mass(0.5), 1.0, 0.5, {1e-2, 1e-3, 1e-4}, 1e-6);
    // extrapolation through three decade-spaced shells: O(d1 d2 d3 |f'''|)
    CHECK(cdist(rep.inner_limit, -2.0) < 1e-7);
    CHECK(cdist(rep.outer_limit, -2.0) < 1e-7);
    CHECK(cdist(rep.jump, 0.0) < 1e-7);
    CHECK(cdist(rep.h_at_zeta, 0.0) == 0.0);
}

TEST_CASE("plemelj scan: adding a far component moves the jump by nothing") {
    const std::vector<double> deltas{1e-2, 1e-3, 1e-4};
    const JumpScanReport base = plemelj_scan(one_plus_re(), 1.0, 0.5, deltas, 1e-6);
    const JumpScanReport moved = plemelj_scan(
        one_plus_re() + point_mass(cplx{-0.9, 0.1}, cplx{0.7, 0.3}), 1.0, 0.5, deltas, 1e-6);
    CHECK(cdist(moved.jump, base.jump) < 1e-8);
    CHECK(cdist(moved.inner_limit - moved.pv_at_zeta, base.inner_limit - base.pv_at_zeta) <
          1e-8);
}

TEST_CASE("plemelj scan: an atom inside the sampling shells gets flagged, then leaves") {
    // atom 1e-4 away from the radial delta = 1e-2 sample: it dominates that
    // one sample but looks smooth from every other point and finer shell
    const ComplexMeasure nu = one_plus_re() + point_mass(cplx{0.9951, 0.0}, 1e-5);
    const JumpScanReport rep = plemelj_scan(nu, 1.0, 0.5, {1e-2, 1e-3, 1e-4}, 1e-6);
    CHECK(rep.shells[0].flagged_points.size() > 0);
    CHECK(rep.shells[2].flagged_points.empty());
    const double t0 = rep.shells[0].flagged_cover_proxy / rep.shells[0].delta;
    const double t2 = rep.shells[2].flagged_cover_proxy / rep.shells[2].delta;
    CHECK(t2 <= t0);
    // the extrapolated jump still matches the density prediction
    CHECK(cdist(rep.jump, rep.h_at_zeta * std::conj(rep.zeta)) < 1e-4);
}

TEST_CASE("plemelj scan across the lens arc recovers the harmonic-measure density") {
    // harmonic measure restricted to T is absolutely continuous with
    // density 2π·(dω/dθ) against normalized arclength; the fitted jump at an
    // interior arc point must reproduce it even though no circle-Fourier
    // component is present
    const ComplexMeasure omega = lens_harmonic_measure(0.3);
    const auto& lc = std::get<LensHarmonicComponent>(omega.components().front());
    const cplx zeta = std::polar(1.0, M_PI); // deep inside the arc
    const JumpScanReport rep = plemelj_scan(omega, zeta, 0.5, {1e-2, 1e-3, 1e-4}, 1e-4);
    const double density = 2.0 * M_PI * lc.region().density_arc(M_PI);
    CHECK(cdist(rep.jump, density * std::conj(zeta)) < 1e-5);
    // the principal value on the curve is the average of the one-sided fits
    CHECK(cdist(rep.pv_at_zeta, 0.5 * (rep.inner_limit + rep.outer_limit)) < 1e-5);
    // h from circle components is zero here, so the scan's predictions are
    // off by design; the measurement itself carries the density
    CHECK(cdist(rep.h_at_zeta, 0.0) == 0.0);
}

TEST_CASE("nontangential limit of the transform matches the scan prediction") {
    const ComplexMeasure nu = circle_fourier({{-1, 0.5}, {0, 1.0}, {1, 0.5}});
    const cplx zeta = std::polar(1.0, 1.3);
    const StolzRegion S{zeta, 0.5, std::nullopt};
    std::vector<std::pair<cplx, cplx>> samples;
    for (cplx lam : approach_path(S, 0.25, 48))
        samples.emplace_back(lam, cauchy_pv(nu, lam).value);
    const cplx limit = nontangential_limit_estimate(samples, S, {});
    const cplx predicted = cauchy_pv(nu, zeta).value +
                           0.5 * cplx{1.0 + zeta.real()} * std::conj(zeta);
    CHECK(cdist(limit, predicted) < 1e-8);
}

TEST_CASE("plemelj jump identity sweep over random circle densities") {
    SplitMix64 rng(61);
    const std::vector<double> deltas{1e-2, 1e-3, 1e-4};
    const double tol = 1e-6;
    for (int trial = 0; trial < 6; ++trial) {
        std::map<int, cplx> coeffs;
        for (int k = -3; k <= 3; ++k)
            coeffs[k] = cplx{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const ComplexMeasure nu = circle_fourier(coeffs);
        const cplx zeta = std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
        const JumpScanReport rep = plemelj_scan(nu, zeta, 0.5, deltas, tol);
        // fitted jump equals h(zeta) conj(zeta), fits match predictions
        CHECK(cdist(rep.jump, rep.h_at_zeta * std::conj(zeta)) < 10.0 * tol);
        CHECK(cdist(rep.inner_limit, rep.predicted_inner) < 10.0 * tol);
        CHECK(cdist(rep.outer_limit, rep.predicted_outer) < 10.0 * tol);
        // one-sided average identity
        CHECK(cdist(rep.pv_at_zeta, 0.5 * (rep.inner_limit + rep.outer_limit)) < 10.0 * tol);
        for (const ShellRecord& s : rep.shells) CHECK(s.agree_fraction == 1.0);
    }
}

TEST_CASE("plemelj scan preconditions") {
    CHECK_THROWS_AS((void)plemelj_scan(circle_lebesgue(), 1.0, 0.5, {1e-2, 1e-3}, 1e-6),
                    precondition_error);
    CHECK_THROWS_AS((void)plemelj_scan(point_mass(1.0), 1.0, 0.5, {1e-2, 1e-3, 1e-4}, 1e-6),
                    pv_undefined_error);
    CHECK_THROWS_AS((void)plemelj_scan(circle_lebesgue(), 1.0, 0.5, {1.5, 1e-3, 1e-4}, 1e-6),
                    domain_error);
    CHECK_THROWS_AS((void)plemelj_scan(circle_lebesgue(), cplx{0.5, 0.0}, 0.5,
                                       {1e-2, 1e-3, 1e-4}, 1e-6),
                    domain_error);
}

TEST_CASE("nontangential limit estimate") {
    const StolzRegion S{1.0, 0.6, std::nullopt};
    // constants are recovered exactly
    std::vector<std::pair<cplx, cplx>> samples;
    for (cplx lam : approach_path(S, 0.3, 50)) samples.emplace_back(lam, cplx{2.0, -1.0});
    CHECK(cdist(nontangential_limit_estimate(samples, S, {}), cplx{2.0, -1.0}) < 1e-12);

    // f(lambda) = lambda extends continuously to 1
    samples.clear();
    for (cplx lam : approach_path(S, 0.3, 60)) samples.emplace_back(lam, lam);
    CHECK(cdist(nontangential_limit_estimate(samples, S, {}), 1.0) < 1e-8);

    // C(zeta m) = 1 inside; robust to flagging 5% of the points
    const ComplexMeasure zm = circle_fourier({{1, 1.0}});
    samples.clear();
    std::vector<cplx> flagged;
    int idx = 0;
    for (cplx lam : approach_path(S, 0.3, 60)) {
        samples.emplace_back(lam, cauchy_pv(zm, lam).value);
        if (++idx % 20 == 10) flagged.push_back(lam);
    }
    CHECK(cdist(nontangential_limit_estimate(samples, S, flagged), 1.0) < 1e-8);

    // a fully flagged shell is an error
    std::vector<cplx> all;
    for (const auto& [lam, v] : samples) all.push_back(lam);
    CHECK_THROWS_AS((void)nontangential_limit_estimate(samples, S, all),
                    insufficient_data_error);
}

TEST_CASE("hardy multiplication identity") {
    const PolyCoeffs f{cplx{0.0}, cplx{1.0}}; // f = z
    LaurentPoly g;
    g.set(1, 1.0); // g = zeta
    const HardyCheckReport rep = hardy_multiplication_check(f, g, 1.0, 0.5);
    CHECK(rep.identity_residual < 1e-10);
    CHECK(cdist(rep.pv_gm_at_zeta, 0.5) < 1e-14);
    CHECK(rep.pv_gm_residual < 1e-10);
    CHECK(rep.pv_fgm_residual < 1e-10);
    CHECK(rep.nt_residual < 1e-8);
    CHECK(cdist(rep.nt_limit, 1.0) < 1e-8); // f(1)g(1)conj(1)

    // identity case f = 1
    const HardyCheckReport id = hardy_multiplication_check({cplx{1.0}}, g, 1.0, 0.5);
    CHECK(id.identity_residual < 1e-12);

    LaurentPoly bad;
    bad.set(0, 1.0);
    CHECK_THROWS_AS((void)hardy_multiplication_check(f, bad, 1.0, 0.5), precondition_error);
}

TEST_CASE("poisson decomposition of (z sigma)^") {
    LaurentPoly s;
    s.set(1, 1.0); // sigma = zeta, z sigma = zeta^2 annihilates polynomials
    const std::vector<double> rs{0.9, 0.99, 0.999};
    const PoissonDecompositionReport rep = poisson_decomposition_check(s, 1.0, rs);
    REQUIRE(rep.rows.size() == 3);
    for (const auto& row : rep.rows) {
        CHECK(row.identity_residual < 1e-10);
        CHECK(cdist(row.remainder_term, 0.0) == 0.0); // no interior mass for m
    }
    CHECK(cdist(rep.boundary_value, 1.0) == 0.0); // sigma(1) h(1) = 1
    // Poisson term converges to sigma(zeta)h(zeta)
    CHECK(rep.rows[2].boundary_gap < rep.rows[0].boundary_gap);
    CHECK(rep.rows[2].boundary_gap < 2e-3);

    LaurentPoly bad;
    bad.set(0, 0.5);
    CHECK_THROWS_AS((void)poisson_decomposition_check(bad, 1.0, rs), precondition_error);
}

TEST_CASE("poisson decomposition: the reflected-pole kernel identity") {
    // with z sigma annihilating polynomials, inserting the reflected pole
    // 1/(r zeta bar)^{-1} changes nothing:
    //   (z sigma)^(r zeta) = ∫ [1/(w - r zeta) + r conj(zeta)/(1 - r conj(zeta) w)] w sigma dm
    LaurentPoly s;
    s.set(1, cplx{0.7, -0.2});
    s.set(2, cplx{-0.3, 0.4});
    const ComplexMeasure zsm =
        multiply_density(circle_fourier(s.coeffs()), BivariatePoly::monomial(1, 0));
    for (double r : {0.8, 0.95}) {
        const cplx pt = r * std::polar(1.0, 0.6);
        const cplx lhs = cauchy_pv(zsm, pt).value;
        const cplx rhs = adaptive_integrate(
            [&](double t) {
                const cplx w = std::polar(1.0, t);
                const cplx kern = 1.0 / (w - pt) + std::conj(pt) / (1.0 - std::conj(pt) * w);
                return kern * w * s.eval(w) / (2.0 * M_PI);
            },
            0.0, 2.0 * M_PI, 1e-13, 1e-12);
        CHECK(cdist(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("subharmonic area-mean bound with constant four") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        PolyCoeffs p;
        const int deg = 1 + static_cast<int>(rng.next() % 10);
        for (int i = 0; i <= deg; ++i) p.push_back(cplx{rng.uniform(-1, 1), rng.uniform(-1, 1)});
        const double mean = disk_abs_mean(p, 1.0, 1e-9);
        for (int s = 0; s < 12; ++s) {
            const cplx lam = std::polar(0.5 * rng.uniform(), rng.uniform(0.0, 2.0 * M_PI));
            CHECK(std::abs(poly_eval(p, lam)) <= 4.0 * mean + 1e-8);
        }
    }
}
