#include "p2mu/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "p2mu/errors.hpp"

namespace p2mu {

namespace {

QuadRule make_gauss_legendre(int n) {
    // Newton iteration on P_n with the three-term recurrence; nodes are the
    // roots, weights 2 / ((1-x^2) P_n'(x)^2). Symmetric, so only half solved.
    QuadRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5)); // Chebyshev guess
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // refresh derivative at the converged node
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        rule.x[i] = -x;
        rule.x[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.w[i] = w;
        rule.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.x[n / 2] = 0.0;
    return rule;
}

// QUADPACK 15-point Kronrod extension of 7-point Gauss.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GKResult {
    cplx integral;
    double err;
};

template <typename F>
GKResult gk15(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(mid - half * kXgk[i]);
        fv[14 - i] = f(mid + half * kXgk[i]);
    }
    fv[7] = f(mid);
    cplx k15 = kWgk[7] * fv[7];
    cplx g7 = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        k15 += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) g7 += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    k15 *= half;
    g7 *= half;
    return {k15, std::abs(k15 - g7)};
}

struct Segment {
    double a, b;
    cplx integral;
    double err;
    int depth;
};

} // namespace

const QuadRule& gauss_legendre(int n) {
    if (n < 1) throw domain_error("gauss_legendre: n must be positive");
    static std::map<int, QuadRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
    return it->second;
}

cplx adaptive_integrate(const std::function<cplx(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_depth) {
    if (a == b) return 0.0;
    std::vector<Segment> work;
    auto push = [&](double lo, double hi, int depth) {
        GKResult r = gk15(f, lo, hi);
        work.push_back({lo, hi, r.integral, r.err, depth});
    };
    push(a, b, 0);
    cplx total = work[0].integral;
    double total_err = work[0].err;
    while (total_err > abs_tol + rel_tol * std::abs(total)) {
        // split the segment with the largest error estimate
        std::size_t worst = 0;
        for (std::size_t i = 1; i < work.size(); ++i)
            if (work[i].err > work[worst].err) worst = i;
        Segment seg = work[worst];
        if (seg.depth >= max_depth || seg.b - seg.a < 1e-300) break;
        work.erase(work.begin() + static_cast<long>(worst));
        const double mid = 0.5 * (seg.a + seg.b);
        push(seg.a, mid, seg.depth + 1);
        push(mid, seg.b, seg.depth + 1);
        total = 0.0;
        total_err = 0.0;
        for (const Segment& s : work) {
            total += s.integral;
            total_err += s.err;
        }
        if (work.size() > 200000) throw numerical_error("adaptive_integrate: too many segments");
    }
    return total;
}

double adaptive_integrate_real(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, double rel_tol, int max_depth) {
    return adaptive_integrate([&](double t) { return cplx{f(t), 0.0}; }, a, b, abs_tol, rel_tol,
                              max_depth)
        .real();
}

cplx neville_extrapolate(const std::vector<double>& xs, const std::vector<cplx>& ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw precondition_error("neville_extrapolate: need matching nonempty data");
    std::vector<cplx> t = ys;
    const std::size_t n = xs.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = 0; i + level < n; ++i) {
            const double dx = xs[i] - xs[i + level];
            if (dx == 0.0) throw precondition_error("neville_extrapolate: duplicate abscissa");
            // value at x = 0 of the interpolant through points i..i+level
            t[i] = (xs[i] * t[i + 1] - xs[i + level] * t[i]) / dx;
        }
    return t[0];
}

} // namespace p2mu
