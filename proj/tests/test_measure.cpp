#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "p2mu/errors.hpp"
#include "p2mu/experiments.hpp"
#include "p2mu/geometry.hpp"
#include "p2mu/measure.hpp"
#include "p2mu/measure_io.hpp"
#include "p2mu/quadrature.hpp"

using namespace p2mu;

namespace {

double cdist(cplx a, cplx b) { return std::abs(a - b); }

// 720 j! / (j+6)! for the alpha = 5 diagonal
double a5_diag(int j) {
    double v = 720.0;
    for (int i = j + 1; i <= j + 6; ++i) v /= i;
    return v;
}

} // namespace

TEST_CASE("quadrature building blocks") {
    // Gauss-Legendre is exact on polynomials of degree 2n-1
    const double exact = 2.0 / 8.0 - (-1.0) / 8.0 * (-1.0); // ∫_{-1}^{1} t^7 dt = 0
    CHECK(std::abs(gauss_integrate([](double t) { return std::pow(t, 7.0); }, -1.0, 1.0, 4)) <
          1e-15);
    CHECK(std::abs(gauss_integrate([](double t) { return t * t; }, 0.0, 1.0, 3) - 1.0 / 3.0) <
          1e-15);
    (void)exact;

    const cplx osc = adaptive_integrate(
        [](double t) { return std::polar(1.0, 40.0 * t); }, 0.0, 2.0 * M_PI, 1e-13, 1e-13);
    CHECK(std::abs(osc) < 1e-11);

    // Neville extrapolation reproduces polynomial limits
    std::vector<double> xs{1e-2, 1e-3, 1e-4};
    std::vector<cplx> ys;
    for (double x : xs) ys.push_back(cplx{3.0 + 2.0 * x + x * x, -x});
    CHECK(cdist(neville_extrapolate(xs, ys), cplx{3.0, 0.0}) < 1e-12);
}

TEST_CASE("moments: circle Fourier orthogonality") {
    const ComplexMeasure m = circle_lebesgue();
    CHECK(cdist(moment(m, 2, 2), 1.0) < 1e-15);
    CHECK(cdist(moment(m, 2, 3), 0.0) < 1e-15);
    CHECK(cdist(total_mass(m), 1.0) < 1e-12);
}

TEST_CASE("moments: Bergman weight Beta integrals") {
    const ComplexMeasure a5 = bergman_weight(5);
    for (int j = 0; j <= 8; ++j) {
        const cplx v = moment(a5, j, j);
        CHECK(std::abs(v.real() - a5_diag(j)) < 1e-12 * a5_diag(j) + 1e-16);
        CHECK(std::abs(v.imag()) < 1e-16);
    }
    CHECK(cdist(moment(a5, 1, 1), 1.0 / 7.0) < 1e-15);
    CHECK(cdist(moment(a5, 2, 5), 0.0) == 0.0);
    CHECK(cdist(total_mass(a5), 1.0) < 1e-12);
}

TEST_CASE("moments: point mass") {
    const ComplexMeasure d2 = point_mass(2.0);
    for (int j = 0; j <= 3; ++j)
        for (int k = 0; k <= 3; ++k)
            CHECK(cdist(moment(d2, j, k), std::pow(2.0, j + k)) < 1e-12 * std::pow(2.0, j + k));
}

TEST_CASE("moment invariants: conjugate symmetry and linearity") {
    const ComplexMeasure mu = circle_fourier({{-1, 0.5}, {0, 1.0}, {1, 0.5}}) +
                              bergman_weight(3) + point_mass(0.5, 2.0);
    for (int j = 0; j <= 4; ++j)
        for (int k = 0; k <= 4; ++k)
            CHECK(cdist(moment(mu, j, k), std::conj(moment(mu, k, j))) < 1e-12);

    const ComplexMeasure mu1 = circle_lebesgue(), mu2 = bergman_weight(2);
    const cplx alpha{2.0, -1.0};
    const ComplexMeasure combo = mu1.scaled(alpha) + mu2;
    for (int j = 0; j <= 3; ++j)
        for (int k = 0; k <= 3; ++k)
            CHECK(cdist(moment(combo, j, k), alpha * moment(mu1, j, k) + moment(mu2, j, k)) <
                  1e-12);
}

TEST_CASE("multiply_density closed-form cases") {
    // m times z is the first Fourier mode
    const ComplexMeasure zm = multiply_density(circle_lebesgue(), BivariatePoly::monomial(1, 0));
    const auto& cf = std::get<CircleFourierComponent>(zm.components().front());
    CHECK(cdist(cf.density.coeff(1), 1.0) == 0.0);
    CHECK(cf.density.coeffs().size() == 1);

    // A5 times (z - a): total mass -a
    const cplx a{0.37, 0.21};
    BivariatePoly za = BivariatePoly::monomial(1, 0) + BivariatePoly::constant(-a);
    CHECK(cdist(moment(multiply_density(bergman_weight(5), za), 0, 0), -a) < 1e-14);

    // atom at 2 times z^2: weight 4
    const ComplexMeasure d = multiply_density(point_mass(2.0), BivariatePoly::monomial(2, 0));
    const auto& at = std::get<AtomComponent>(d.components().front());
    CHECK(cdist(at.point, 2.0) == 0.0);
    CHECK(cdist(at.weight, 4.0) < 1e-14);
}

TEST_CASE("multiply_density then moment equals expanded moments") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 12; ++trial) {
        BivariatePoly g;
        for (int t = 0; t < 4; ++t)
            g.set(static_cast<int>(rng.next() % 3), static_cast<int>(rng.next() % 2),
                  cplx{rng.uniform(-1, 1), rng.uniform(-1, 1)});
        if (g.is_zero()) continue;
        const ComplexMeasure mu = circle_fourier({{-2, cplx{0.3, 0.1}}, {0, 1.0}, {1, 0.25}}) +
                                  bergman_weight(2) + point_mass(cplx{0.4, -0.3}, cplx{1.0, 2.0});
        const ComplexMeasure gm = multiply_density(mu, g);
        for (int j = 0; j <= 3; ++j)
            for (int k = 0; k <= 3; ++k) {
                cplx expanded = 0.0;
                for (const auto& [mk, c] : g.terms())
                    expanded += c * moment(mu, j + mk.first, k + mk.second);
                CHECK(cdist(moment(gm, j, k), expanded) < 1e-10);
            }
    }
}

TEST_CASE("restrict_to keeps the supported components") {
    const ComplexMeasure sigma = lens_harmonic_measure(0.3);
    const ComplexMeasure mu = sigma + bergman_weight(5);
    const ComplexMeasure disk_part = restrict_to(mu, SupportRegion::open_disk);
    REQUIRE(disk_part.components().size() == 1);
    CHECK(std::holds_alternative<BergmanComponent>(disk_part.components().front()));

    const ComplexMeasure mc = circle_lebesgue() + point_mass(0.5);
    const ComplexMeasure circ = restrict_to(mc, SupportRegion::circle);
    REQUIRE(circ.components().size() == 1);
    CHECK(std::holds_alternative<CircleFourierComponent>(circ.components().front()));

    CHECK(restrict_to(circle_lebesgue(), SupportRegion::lens_boundary).empty());

    // atoms sitting on a carried lens boundary restrict with it
    const ComplexMeasure with_atoms = lens_harmonic_measure(0.3) +
                                      point_mass(cplx{0.3, 0.2}) + point_mass(cplx{-1.0, 0.0}) +
                                      point_mass(cplx{0.9, 0.0});
    const ComplexMeasure lb = restrict_to(with_atoms, SupportRegion::lens_boundary);
    CHECK(lb.components().size() == 3); // lens + chord atom + arc atom
}

TEST_CASE("variation bound of a lens component with a density factor") {
    const ComplexMeasure zw =
        multiply_density(lens_harmonic_measure(0.3), BivariatePoly::monomial(1, 0));
    const double bound = variation_bound(zw);
    // cross-check against the fixed boundary rule
    const auto& lc = std::get<LensHarmonicComponent>(zw.components().front());
    double direct = 0.0;
    for (const LensNode& nd : *lc.region().fixed_rule(16)) direct += nd.w * std::abs(nd.z);
    CHECK(std::abs(bound - direct) < 1e-9);
    CHECK(bound < 1.0);                              // |z| < 1 against a probability measure
    CHECK(bound >= std::abs(total_mass(zw)) - 1e-12); // dominates the mass
}

TEST_CASE("variation bounds") {
    CHECK(variation_bound(circle_lebesgue()) == 1.0);
    CHECK(std::abs(variation_bound(bergman_weight(5)) - 1.0) < 1e-12);
    CHECK(std::abs(variation_bound(point_mass(2.0, cplx{0.0, 3.0})) - 3.0) < 1e-15);
}

TEST_CASE("degree caps raise capability errors") {
    const ComplexMeasure m = circle_lebesgue();
    CHECK_THROWS_AS((void)moment(m, 65, 0), capability_error);
    ComplexMeasure small = bergman_weight(1);
    small.set_max_degree(2);
    CHECK_THROWS_AS((void)multiply_density(small, BivariatePoly::monomial(3, 0)),
                    capability_error);
}

TEST_CASE("ball variation closed forms") {
    // arclength of T inside B(1, r) is (2/pi) asin(r/2)
    const ComplexMeasure m = circle_lebesgue();
    for (double r : {0.1, 0.5, 1.0})
        CHECK(std::abs(ball_variation(m, 1.0, r) - 2.0 / M_PI * std::asin(r / 2.0)) < 1e-9);
    CHECK(ball_variation(point_mass(cplx{0.0, 0.5}), cplx{0.0, 0.4}, 0.2) == 1.0);
    CHECK(ball_variation(point_mass(cplx{0.0, 0.5}), cplx{0.0, 0.4}, 0.05) == 0.0);
    // Bergman mass of a centered ball: ∫_0^{r²} 6(1-t)^5 dt = 1-(1-r²)^6
    const ComplexMeasure a5 = bergman_weight(5);
    for (double r : {0.3, 0.8})
        CHECK(std::abs(ball_variation(a5, 0.0, r) - (1.0 - std::pow(1.0 - r * r, 6.0))) < 1e-8);
}

TEST_CASE("measure spec parsing: spec examples") {
    const ComplexMeasure m =
        parse_measure_spec(R"({"components":[{"type":"circle_fourier","coeffs":{"0":[1,0]}}]})");
    CHECK(measure_identical(m, circle_lebesgue()));
    CHECK(cdist(total_mass(m), 1.0) < 1e-15);

    const ComplexMeasure a5 = parse_measure_spec(R"({"components":[{"type":"bergman","alpha":5}]})");
    CHECK(cdist(total_mass(a5), 1.0) < 1e-12);

    const ComplexMeasure zero = parse_measure_spec(R"({"components":[]})");
    CHECK(zero.empty());
    CHECK(cdist(total_mass(zero), 0.0) == 0.0);
}

TEST_CASE("measure spec round-trip is the identity") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 6; ++trial) {
        ComplexMeasure mu;
        mu.add_component(AtomComponent{cplx{rng.uniform(-2, 2), rng.uniform(-2, 2)},
                                       cplx{rng.uniform(-1, 1), 1e-17 * rng.uniform(0, 1)}});
        CircleFourierComponent cf;
        cf.density.set(-2, cplx{rng.uniform(-1, 1), rng.uniform(-1, 1)});
        cf.density.set(3, cplx{0.1 + rng.uniform(0, 1), 0.0});
        mu.add_component(cf);
        BergmanComponent bc;
        bc.alpha = static_cast<int>(rng.next() % 7);
        bc.density.set(1, 2, cplx{rng.uniform(-1, 1), rng.uniform(-1, 1)});
        bc.density.set(0, 0, 1.0);
        mu.add_component(bc);
        ComplexMeasure lens = lens_harmonic_measure(0.2 + 0.5 * rng.uniform());
        mu.add_component(lens.components().front());
        if (trial % 2) mu.set_max_degree(40);

        const std::string once = serialize_measure_spec(mu);
        const ComplexMeasure parsed = parse_measure_spec(once);
        const ComplexMeasure reparsed = parse_measure_spec(serialize_measure_spec(parsed));
        CHECK(measure_identical(parsed, reparsed));
    }
}

TEST_CASE("measure spec round-trips the inverse-density lens component") {
    // component with the reserved 1/|g|^2 density tag and tabulated samples
    ComplexMeasure mu;
    LensHarmonicComponent lc;
    lc.c = 0.3;
    lc.lens = std::make_shared<LensRegion>(0.3);
    lc.inv_abs_g_sq = true;
    lc.inv_a = cplx{0.9, 0.0};
    lc.inv_alpha = 5;
    lc.arc_samples = {{1.4, 0.25}, {2.0, 0.125}};
    lc.chord_samples = {{-0.5, 0.0625}};
    mu.add_component(lc);
    const std::string text = serialize_measure_spec(mu);
    CHECK(text.find("inv_abs_g_sq") != std::string::npos);
    const ComplexMeasure parsed = parse_measure_spec(text);
    CHECK(measure_identical(parsed, parse_measure_spec(serialize_measure_spec(parsed))));
    const auto& back = std::get<LensHarmonicComponent>(parsed.components().front());
    CHECK(back.inv_abs_g_sq);
    CHECK(back.inv_a == lc.inv_a);
    CHECK(back.arc_samples == lc.arc_samples);
}

TEST_CASE("measure spec errors carry diagnostics") {
    CHECK_THROWS_AS((void)parse_measure_spec("{"), parse_error);
    CHECK_THROWS_AS((void)parse_measure_spec(R"({"components":[{"type":"warp"}]})"),
                    capability_error);
    try {
        (void)parse_measure_spec(R"({"components":[{"type":"atom","point":[0,0]}]})");
        CHECK(false);
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("weight") != std::string::npos);
        CHECK(std::string(e.what()).find("components[0]") != std::string::npos);
    }
    CHECK_THROWS_AS(
        (void)parse_measure_spec(R"({"components":[{"type":"circle_fourier","coeffs":{"x":[1,0]}}]})"),
        parse_error);
    CHECK_THROWS_AS(
        (void)parse_measure_spec(R"({"components":[{"type":"lens_harmonic","c":1.5}]})"),
        parse_error);
}
