#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "p2mu/errors.hpp"

namespace p2mu {

using cplx = std::complex<double>;

/// Polynomial in z and conj(z): sum of c[m][k] * z^m * conj(z)^k.
///
/// Stored sparsely as {(m, k) -> coefficient}; coefficients with modulus
/// below 1e-300 are dropped on normalization. This is the density class for
/// measure components: it is closed under products and under restriction to
/// curves where conj(z) is an affine function of z.
class BivariatePoly {
public:
    using key = std::pair<int, int>; // (power of z, power of conj z)

    BivariatePoly() = default;

    /// Constant polynomial.
    static BivariatePoly constant(cplx c) {
        BivariatePoly p;
        p.set(0, 0, c);
        return p;
    }

    /// Monomial c * z^m * conj(z)^k.
    static BivariatePoly monomial(int m, int k, cplx c = 1.0) {
        if (m < 0 || k < 0) throw domain_error("BivariatePoly: negative exponent");
        BivariatePoly p;
        p.set(m, k, c);
        return p;
    }

    /// Univariate polynomial in z from dense coefficients (index = power).
    static BivariatePoly from_coeffs(const std::vector<cplx>& coeffs) {
        BivariatePoly p;
        for (int m = 0; m < static_cast<int>(coeffs.size()); ++m) p.set(m, 0, coeffs[m]);
        return p;
    }

    void set(int m, int k, cplx c) {
        if (m < 0 || k < 0) throw domain_error("BivariatePoly: negative exponent");
        if (std::abs(c) < 1e-300)
            terms_.erase({m, k});
        else
            terms_[{m, k}] = c;
    }

    cplx coeff(int m, int k) const {
        auto it = terms_.find({m, k});
        return it == terms_.end() ? cplx{0.0} : it->second;
    }

    const std::map<key, cplx>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first == key{0, 0} &&
               std::abs(terms_.begin()->second - 1.0) == 0.0;
    }

    /// max over terms of m + k (total degree); -1 for the zero polynomial.
    int total_degree() const {
        int d = -1;
        for (const auto& [mk, c] : terms_) d = std::max(d, mk.first + mk.second);
        return d;
    }

    cplx eval(cplx z) const {
        const cplx zb = std::conj(z);
        cplx acc = 0.0;
        for (const auto& [mk, c] : terms_) acc += c * ipow(z, mk.first) * ipow(zb, mk.second);
        return acc;
    }

    BivariatePoly operator*(const BivariatePoly& o) const {
        BivariatePoly r;
        for (const auto& [a, ca] : terms_)
            for (const auto& [b, cb] : o.terms_) {
                const key k{a.first + b.first, a.second + b.second};
                auto it = r.terms_.find(k);
                const cplx v = (it == r.terms_.end() ? cplx{0.0} : it->second) + ca * cb;
                if (std::abs(v) < 1e-300)
                    r.terms_.erase(k);
                else
                    r.terms_[k] = v;
            }
        return r;
    }

    BivariatePoly operator+(const BivariatePoly& o) const {
        BivariatePoly r = *this;
        for (const auto& [k, c] : o.terms_) r.set(k.first, k.second, r.coeff(k.first, k.second) + c);
        return r;
    }

    BivariatePoly operator*(cplx s) const {
        BivariatePoly r;
        for (const auto& [k, c] : terms_) r.set(k.first, k.second, c * s);
        return r;
    }

    /// Sum of |coefficients|; bounds sup over the closed unit disk.
    double coeff_abs_sum() const {
        double s = 0.0;
        for (const auto& [k, c] : terms_) s += std::abs(c);
        return s;
    }

    static cplx ipow(cplx z, int n) {
        cplx r = 1.0;
        while (n-- > 0) r *= z;
        return r;
    }

private:
    std::map<key, cplx> terms_;
};

/// Finite Laurent polynomial sum c_k w^k, k in Z. Density class on the unit
/// circle, where conj(w) = 1/w turns any BivariatePoly into one of these.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(std::map<int, cplx> coeffs) : coeffs_(std::move(coeffs)) { prune(); }

    static LaurentPoly from_bivariate(const BivariatePoly& p) {
        std::map<int, cplx> c;
        for (const auto& [mk, v] : p.terms()) c[mk.first - mk.second] += v;
        return LaurentPoly(std::move(c));
    }

    void set(int k, cplx c) {
        if (std::abs(c) < 1e-300)
            coeffs_.erase(k);
        else
            coeffs_[k] = c;
    }
    cplx coeff(int k) const {
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? cplx{0.0} : it->second;
    }
    const std::map<int, cplx>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    cplx eval(cplx w) const {
        cplx acc = 0.0;
        for (const auto& [k, c] : coeffs_)
            acc += c * (k >= 0 ? BivariatePoly::ipow(w, k) : BivariatePoly::ipow(1.0 / w, -k));
        return acc;
    }

    LaurentPoly operator*(const LaurentPoly& o) const {
        std::map<int, cplx> r;
        for (const auto& [a, ca] : coeffs_)
            for (const auto& [b, cb] : o.coeffs_) r[a + b] += ca * cb;
        return LaurentPoly(std::move(r));
    }

    double coeff_abs_sum() const {
        double s = 0.0;
        for (const auto& [k, c] : coeffs_) s += std::abs(c);
        return s;
    }

private:
    void prune() {
        for (auto it = coeffs_.begin(); it != coeffs_.end();)
            it = (std::abs(it->second) < 1e-300) ? coeffs_.erase(it) : std::next(it);
    }
    std::map<int, cplx> coeffs_;
};

/// Dense univariate polynomial sum c[k] z^k; the coefficient-vector currency
/// of the Gram-matrix layer.
using PolyCoeffs = std::vector<cplx>;

inline cplx poly_eval(const PolyCoeffs& p, cplx z) {
    cplx acc = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
    return acc;
}

inline int poly_degree(const PolyCoeffs& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (std::abs(p[i]) != 0.0) return static_cast<int>(i);
    return -1;
}

/// (p * q) with exact coefficient convolution.
inline PolyCoeffs poly_mul(const PolyCoeffs& p, const PolyCoeffs& q) {
    if (p.empty() || q.empty()) return {};
    PolyCoeffs r(p.size() + q.size() - 1, cplx{0.0});
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
}

} // namespace p2mu
