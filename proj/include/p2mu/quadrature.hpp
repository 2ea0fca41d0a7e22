#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "p2mu/polynomial.hpp"

namespace p2mu {

/// Nodes and weights on [-1, 1].
struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

/// n-point Gauss-Legendre rule on [-1, 1], exact for polynomials of degree
/// 2n-1. Rules are cached per n; thread-safe.
const QuadRule& gauss_legendre(int n);

/// Integrate f over [a, b] with a single n-point Gauss-Legendre rule.
template <typename F>
auto gauss_integrate(F&& f, double a, double b, int n) {
    const QuadRule& q = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    decltype(f(a)) acc = f(mid + half * q.x[0]) * (half * q.w[0]);
    for (std::size_t i = 1; i < q.x.size(); ++i) acc += f(mid + half * q.x[i]) * (half * q.w[i]);
    return acc;
}

/// Adaptive Gauss(7)/Kronrod(15) quadrature of a complex-valued integrand.
/// Bisects until the local K15-G7 discrepancy meets abs_tol + rel_tol*|I|.
cplx adaptive_integrate(const std::function<cplx(double)>& f, double a, double b,
                        double abs_tol = 1e-12, double rel_tol = 1e-12, int max_depth = 38);

/// Same, for real integrands.
double adaptive_integrate_real(const std::function<double(double)>& f, double a, double b,
                               double abs_tol = 1e-12, double rel_tol = 1e-12, int max_depth = 38);

/// Neville polynomial extrapolation of (x_i, y_i) to x = 0. The x_i must be
/// distinct and nonzero. Used to pull shell statistics to their boundary
/// limit without assuming a convergence rate.
cplx neville_extrapolate(const std::vector<double>& xs, const std::vector<cplx>& ys);

} // namespace p2mu
