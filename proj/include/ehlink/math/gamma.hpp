// SPDX-License-Identifier: Apache-2.0
//
// ehlink: dual-hop energy-harvesting V2V relay link toolkit
#pragma once

#include <cmath>
#include <complex>

namespace ehlink::math {

namespace detail {

// sin(pi*w) with range reduction on the real part, stable for |Im w| <= ~8.
inline std::complex<double> sin_pi(std::complex<double> w) {
    double x = w.real(), y = w.imag();
    double r = x - std::round(x);
    double sr = std::sin(M_PI * r);
    double cr = std::cos(M_PI * r);
    if (std::fmod(std::abs(std::round(x)), 2.0) >= 1.0) { sr = -sr; cr = -cr; }
    return {sr * std::cosh(M_PI * y), cr * std::sinh(M_PI * y)};
}

// log(sin(pi*w)), stable for any imaginary part.
inline std::complex<double> log_sin_pi(std::complex<double> w) {
    double y = w.imag();
    if (std::abs(y) < 8.0) return std::log(sin_pi(w));
    // sin(pi w) = (i/2) e^{-i pi w} (1 - e^{2 i pi w}), |e^{2 i pi w}| < 1 for y > 0
    if (y > 0) {
        std::complex<double> iu(0.0, 1.0);
        std::complex<double> e = std::exp(2.0 * iu * M_PI * w);
        return -iu * M_PI * w + std::log(1.0 - e) +
               std::complex<double>(-M_LN2, M_PI / 2.0);
    }
    return std::conj(log_sin_pi(std::conj(w)));
}

} // namespace detail

// Principal-branch-agnostic complex log-gamma: each value may differ from the
// principal branch by 2*pi*i*k, which is harmless under exp() of a sum.
inline std::complex<double> log_gamma(std::complex<double> w) {
    static const double kLogTwoPiHalf = 0.91893853320467274178;
    // Stirling coefficients B_{2k} / (2k (2k-1))
    static const double c[7] = {
        1.0 / 12.0,    -1.0 / 360.0,   1.0 / 1260.0, -1.0 / 1680.0,
        1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0};

    if (w.real() < 0.5) {
        // reflection: lgamma(w) = log(pi) - log(sin(pi w)) - lgamma(1 - w)
        return std::log(M_PI) - detail::log_sin_pi(w) - log_gamma(1.0 - w);
    }
    std::complex<double> shift(0.0, 0.0);
    while (std::abs(w) < 32.0) {
        shift -= std::log(w);
        w += 1.0;
    }
    std::complex<double> res = (w - 0.5) * std::log(w) - w + kLogTwoPiHalf;
    std::complex<double> w2 = w * w;
    std::complex<double> p = 1.0 / w;
    for (double ck : c) {
        res += ck * p;
        p /= w2;
    }
    return res + shift;
}

} // namespace ehlink::math
