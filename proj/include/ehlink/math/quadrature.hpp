// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ehlink::math {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = false;
};

namespace detail {

// Gauss7/Kronrod15 nodes and weights on [-1,1] (QUADPACK dqk15).
inline constexpr double kGK_x[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kGK_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGK_wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename F>
inline void gk15(const F& f, double a, double b, double& val, double& err) {
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(mid - h * kGK_x[i]);
        fv[14 - i] = f(mid + h * kGK_x[i]);
    }
    fv[7] = f(mid);
    double resk = kGK_wk[7] * fv[7];
    double resg = kGK_wg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += kGK_wk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) resg += kGK_wg[i / 2] * (fv[i] + fv[14 - i]);
    }
    val = resk * h;
    err = std::abs((resk - resg) * h);
}

} // namespace detail

// Adaptive Gauss-Kronrod on a finite interval.
template <typename F>
QuadResult integrate(const F& f, double a, double b, double rel_tol = 1e-10,
                     double abs_tol = 0.0, int max_intervals = 2000) {
    struct Seg { double a, b, val, err; };
    std::vector<Seg> segs;
    double v, e;
    detail::gk15(f, a, b, v, e);
    segs.push_back({a, b, v, e});
    double total = v, total_err = e;
    int n = 1;
    while (n < max_intervals) {
        double tol = std::max(abs_tol, rel_tol * std::abs(total));
        if (total_err <= tol) break;
        // split the segment with the largest error
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].err > segs[worst].err) worst = i;
        Seg s = segs[worst];
        double m = 0.5 * (s.a + s.b);
        if (m <= s.a || m >= s.b) break; // interval exhausted at double precision
        double v1, e1, v2, e2;
        detail::gk15(f, s.a, m, v1, e1);
        detail::gk15(f, m, s.b, v2, e2);
        total += v1 + v2 - s.val;
        total_err += e1 + e2 - s.err;
        segs[worst] = {s.a, m, v1, e1};
        segs.push_back({m, s.b, v2, e2});
        ++n;
    }
    return {total, total_err,
            total_err <= std::max(abs_tol, rel_tol * std::abs(total)) * 1.000001 ||
                total_err <= std::numeric_limits<double>::min()};
}

// Adaptive integration on [a, inf) via x = a + t/(1-t).
template <typename F>
QuadResult integrate_to_inf(const F& f, double a, double rel_tol = 1e-10,
                            double abs_tol = 0.0, int max_intervals = 2000) {
    auto g = [&](double t) {
        double omt = 1.0 - t;
        double x = a + t / omt;
        double jac = 1.0 / (omt * omt);
        double fx = f(x);
        return std::isfinite(fx) ? fx * jac : 0.0;
    };
    return integrate(g, 0.0, 1.0, rel_tol, abs_tol, max_intervals);
}

// chi-point Gauss-Chebyshev rule on (a,b):
//   (b-a)/2 * sum_i (pi/chi) sqrt(1-y_i^2) f(x_i),  y_i = cos((2i-1)pi/(2chi))
template <typename F>
double gauss_chebyshev(const F& f, double a, double b, int chi) {
    if (chi < 1) throw std::invalid_argument("gauss_chebyshev: chi must be >= 1");
    if (!(a < b)) throw std::invalid_argument("gauss_chebyshev: need a < b");
    double sum = 0.0;
    for (int i = 1; i <= chi; ++i) {
        double y = std::cos((2.0 * i - 1.0) * M_PI / (2.0 * chi));
        double x = 0.5 * (b - a) * y + 0.5 * (b + a);
        sum += (M_PI / chi) * std::sqrt(1.0 - y * y) * f(x);
    }
    return 0.5 * (b - a) * sum;
}

} // namespace ehlink::math
