#pragma once

#include <complex>

#include "p2mu/errors.hpp"
#include "p2mu/polynomial.hpp"

namespace p2mu {

/// Zero divisor of the weighted Bergman weight (1+α)(1-|z|²)^α dA for the
/// zero set {a}, following Hedenmalm-Zhu:
///
///     g(z) = 1 - ((1 - |a|²)/(1 - ā z))^(α+2).
///
/// g(a) = 0, g(0) = 1 - (1-|a|²)^(α+2), and the pole sits at 1/ā outside
/// the closed disk.
inline cplx hz_g(cplx a, int alpha, cplx z) {
    const double s = 1.0 - std::norm(a);
    const cplx denom = 1.0 - std::conj(a) * z;
    if (std::abs(denom) < 1e-300) throw domain_error("hz_g: evaluation at the pole 1/conj(a)");
    return 1.0 - BivariatePoly::ipow(s / denom, alpha + 2);
}

} // namespace p2mu
