// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehlink/math/gamma.hpp"
#include "ehlink/math/quadrature.hpp"

namespace ehlink::math {

// Meijer G^{m,n}_{p,q}(z | a_1..a_p ; b_1..b_q), z real > 0.
//
// Convention: G = (1/2pi i) int F(s) z^{-s} ds over an upward contour with the
// poles of Gamma(b_j + s), j <= m, to its left and those of Gamma(1 - a_j - s),
// j <= n, to its right, where
//   F(s) = prod_{j<=m} Gamma(b_j+s) prod_{j<=n} Gamma(1-a_j-s)
//        / [prod_{j>m} Gamma(1-b_j-s) prod_{j>n} Gamma(a_j+s)].
struct MeijerGSpec {
    int m = 0, n = 0;
    std::vector<double> a; // size p
    std::vector<double> b; // size q
    double argument = 1.0;
};

class MeijerGError : public std::runtime_error {
  public:
    explicit MeijerGError(const std::string& what) : std::runtime_error(what) {}
};

struct MeijerGValue {
    double value = 0.0;
    double rel_error = 0.0;
    bool accurate = true; // false when the internal error estimate exceeds 1e-6
};

namespace detail {

struct ReducedG {
    int m, n;
    std::vector<double> a, b;
};

// Remove parameter pairs whose gamma factors cancel exactly:
//   a_j (j<=n) == b_k (k>m)  and  b_j (j<=m) == a_k (k>n).
inline ReducedG reduce_spec(const MeijerGSpec& s) {
    ReducedG r{s.m, s.n, s.a, s.b};
    const double tol = 1e-12;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < r.n && !changed; ++i)
            for (std::size_t j = r.m; j < r.b.size(); ++j)
                if (std::abs(r.a[i] - r.b[j]) < tol) {
                    r.a.erase(r.a.begin() + i);
                    r.b.erase(r.b.begin() + j);
                    --r.n;
                    changed = true;
                    break;
                }
        if (changed) continue;
        for (int i = 0; i < r.m && !changed; ++i)
            for (std::size_t j = r.n; j < r.a.size(); ++j)
                if (std::abs(r.b[i] - r.a[j]) < tol) {
                    r.b.erase(r.b.begin() + i);
                    r.a.erase(r.a.begin() + j);
                    --r.m;
                    changed = true;
                    break;
                }
    }
    return r;
}

inline std::complex<double> mb_log_integrand(const ReducedG& g, std::complex<double> s) {
    std::complex<double> v(0.0, 0.0);
    for (int j = 0; j < g.m; ++j) v += log_gamma(g.b[j] + s);
    for (int j = 0; j < g.n; ++j) v += log_gamma(1.0 - g.a[j] - s);
    for (std::size_t j = g.m; j < g.b.size(); ++j) v -= log_gamma(1.0 - g.b[j] - s);
    for (std::size_t j = g.n; j < g.a.size(); ++j) v -= log_gamma(g.a[j] + s);
    return v;
}

} // namespace detail

inline MeijerGValue meijer_g(const MeijerGSpec& spec, double rel_tol = 1e-11) {
    const std::size_t p = spec.a.size(), q = spec.b.size();
    if (spec.m < 0 || spec.n < 0 || static_cast<std::size_t>(spec.m) > q ||
        static_cast<std::size_t>(spec.n) > p)
        throw std::invalid_argument("meijer_g: inconsistent (m,n,p,q)");
    if (!(spec.argument > 0.0) || !std::isfinite(spec.argument))
        throw std::domain_error("meijer_g: argument must be finite and positive");

    const detail::ReducedG g = detail::reduce_spec(spec);
    const int kappa =
        2 * (g.m + g.n) - static_cast<int>(g.a.size()) - static_cast<int>(g.b.size());
    if (kappa <= 0)
        throw MeijerGError("meijer_g: parameter family outside the exponentially "
                           "convergent Mellin-Barnes class (2(m+n) <= p+q after reduction)");

    // Separating vertical contour Re(s) = c with left poles at s <= -min b_m
    // and right poles at s >= min(1 - a_n).
    double left = -std::numeric_limits<double>::infinity();
    double right = std::numeric_limits<double>::infinity();
    for (int j = 0; j < g.m; ++j) left = std::max(left, -g.b[j]);
    for (int j = 0; j < g.n; ++j) right = std::min(right, 1.0 - g.a[j]);
    if (std::isfinite(left) && std::isfinite(right) && left >= right - 1e-9)
        throw MeijerGError("meijer_g: contour cannot separate poles (gap [" +
                           std::to_string(left) + ", " + std::to_string(right) + "])");

    const double logz = std::log(spec.argument);

    // Saddle-style abscissa: minimize the t = 0 integrand magnitude over the
    // admissible strip. Keeps tiny function values resolvable (the straight
    // contour otherwise carries an O(1) oscillating integrand whose
    // cancellation floor is machine epsilon times its magnitude).
    auto log_mag = [&](double c) {
        return (detail::mb_log_integrand(g, {c, 0.0}) -
                std::complex<double>(c, 0.0) * logz)
            .real();
    };
    double c;
    {
        // Search window keeps >= 0.35 of a unit (scaled by the strip width)
        // away from the nearest pole chain so the t = 0 peak stays resolvable.
        double lo, hi;
        if (std::isfinite(left) && std::isfinite(right)) {
            const double gap = right - left;
            const double margin = 0.35 * std::min(1.0, gap);
            lo = left + margin;
            hi = right - margin;
            if (lo > hi) lo = hi = 0.5 * (left + right);
        } else if (std::isfinite(left)) {
            lo = left + 0.35;
            hi = left + 4096.0;
        } else if (std::isfinite(right)) {
            hi = right - 0.35;
            lo = right - 4096.0;
        } else {
            lo = -4096.0;
            hi = 4096.0;
        }
        std::vector<double> cand;
        const double span = hi - lo;
        const int nlin = 32;
        const double lin_span = std::min(span, 32.0);
        const bool anchor_right = !std::isfinite(left) && std::isfinite(right);
        auto push = [&](double off) {
            cand.push_back(anchor_right ? hi - off : lo + off);
        };
        for (int i = 0; i <= nlin; ++i) push(lin_span * i / nlin);
        for (double off = 64.0; off < span; off *= 2.0) push(off);
        push(span);

        double best = cand[0], best_val = std::numeric_limits<double>::infinity();
        for (double cc : cand) {
            double val = log_mag(cc);
            if (std::isfinite(val) && val < best_val) {
                best_val = val;
                best = cc;
            }
        }
        // golden-section refinement around the best candidate
        double step = std::max(lin_span / nlin, std::abs(best) * 0.25);
        double a0 = std::max(lo, best - step), b0 = std::min(hi, best + step);
        const double gr = 0.61803398874989484;
        double x1 = b0 - gr * (b0 - a0), x2 = a0 + gr * (b0 - a0);
        double f1 = log_mag(x1), f2 = log_mag(x2);
        for (int it = 0; it < 48 && (b0 - a0) > 1e-6 * (1.0 + std::abs(a0)); ++it) {
            if (f1 < f2) {
                b0 = x2; x2 = x1; f2 = f1;
                x1 = b0 - gr * (b0 - a0);
                f1 = log_mag(x1);
            } else {
                a0 = x1; x1 = x2; f1 = f2;
                x2 = a0 + gr * (b0 - a0);
                f2 = log_mag(x2);
            }
        }
        c = 0.5 * (a0 + b0);
    }
    auto log_h = [&](double t) {
        std::complex<double> s(c, t);
        return detail::mb_log_integrand(g, s) - s * std::complex<double>(logz, 0.0);
    };
    // Log-scale offset so exp() stays in range even for extreme magnitudes.
    double w0 = -std::numeric_limits<double>::infinity();
    for (double t : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
        double re = log_h(t).real();
        if (std::isfinite(re)) w0 = std::max(w0, re);
    }
    if (!std::isfinite(w0)) w0 = 0.0;
    auto h = [&](double t) {
        std::complex<double> w = log_h(t);
        if (!std::isfinite(w.real())) return 0.0; // denominator pole: integrand zero
        w -= w0;
        if (w.real() > 700.0) return std::numeric_limits<double>::infinity();
        return std::exp(w).real();
    };

    // Integrate over t in [0,inf); geometric segments until the tail vanishes.
    double total = 0.0, err = 0.0;
    double t0 = 0.0, t1 = 1.0;
    const double t_cap = 520.0 / kappa + 64.0;
    int quiet = 0;
    while (t0 < t_cap) {
        QuadResult r = integrate(h, t0, t1, rel_tol,
                                 std::max(1e-300, std::abs(total) * rel_tol * 0.05), 400);
        total += r.value;
        err += r.abs_error;
        const double scale = std::max(std::abs(total), 1e-300);
        if (std::abs(r.value) < scale * rel_tol * 0.01)
            ++quiet;
        else
            quiet = 0;
        if (quiet >= 2) break;
        t0 = t1;
        t1 = 2.0 * t1;
    }
    const double ew0 = std::exp(std::min(w0, 700.0)); // saturates (value overflow is legitimate)
    const double value = total / M_PI * ew0 * (w0 > 700.0 ? std::exp(w0 - 700.0) : 1.0);
    const double abs_err = err / M_PI * ew0;
    MeijerGValue out;
    out.value = value;
    out.rel_error = std::abs(value) > 0 ? abs_err / std::abs(value)
                                        : (abs_err > 0 ? 1.0 : 0.0);
    out.accurate = out.rel_error < 1e-6;
    return out;
}

} // namespace ehlink::math
