// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>

#include "ehlink/channel.hpp"
#include "ehlink/common.hpp"
#include "ehlink/math/meijer_g.hpp"

namespace ehlink {

// Per-hop distance model: a fixed distance or d ~ U(lo, hi), plus the
// path-loss exponent v applied as L = d^-v.
struct LinkGeometry {
    enum class Kind { deterministic, uniform };
    Kind kind = Kind::uniform;
    double d = 2.0; // deterministic
    double lo = 1.0, hi = 3.0;
    double v = 2.7;

    static LinkGeometry fixed(double d, double v = 2.7) {
        require(d > 0, "LinkGeometry: distance must be > 0");
        require(v > 0, "LinkGeometry: path-loss exponent must be > 0");
        return {Kind::deterministic, d, d, d, v};
    }
    static LinkGeometry uniform(double lo, double hi, double v = 2.7) {
        require(lo > 0 && lo < hi, "LinkGeometry: need 0 < lo < hi");
        require(v > 0, "LinkGeometry: path-loss exponent must be > 0");
        return {Kind::uniform, 0.5 * (lo + hi), lo, hi, v};
    }
    bool is_uniform() const { return kind == Kind::uniform; }
};

namespace geometry {

inline double pathloss(double d, double v) {
    if (!(d > 0.0)) throw std::domain_error("pathloss: d must be > 0");
    if (!(v > 0.0)) throw std::domain_error("pathloss: v must be > 0");
    return std::pow(d, -v);
}

// pdf of Z = d^-v for d ~ U(lo, hi); support (hi^-v, lo^-v).
inline double pathloss_pdf(double z, double lo, double hi, double v) {
    if (!(lo > 0.0) || !(lo < hi)) throw ConfigError("pathloss_pdf: need 0 < lo < hi");
    if (!(v > 0.0)) throw std::domain_error("pathloss_pdf: v must be > 0");
    if (z <= std::pow(hi, -v) || z >= std::pow(lo, -v)) return 0.0;
    return std::pow(z, -1.0 - 1.0 / v) / (v * (hi - lo));
}

// pdf of the relay input power U = X * Z, X ~ GammaGamma(x), Z the S->R
// path-loss under uniform distance. Closed form assembled from the reduced
// Mellin-Barnes kernel equivalent to the convolution integral
//   f_U(u) = int (1/z) f_X(u/z) f_Z(z) dz.
inline double product_pdf_u(double u, const GammaGammaParams& x, const LinkGeometry& srgeom) {
    if (!srgeom.is_uniform())
        throw ConfigError("product_pdf_u: requires uniform S->R geometry (use the "
                          "deterministic-distance path otherwise)");
    if (!(u > 0.0)) throw std::domain_error("product_pdf_u: u must be > 0");
    const double f = srgeom.lo, g = srgeom.hi, v = srgeom.v;
    const double al = x.alpha, xi = x.xi;
    auto theta_term = [&](double kap) {
        math::MeijerGSpec s;
        s.m = 2;
        s.n = 1;
        s.a = {1.0 - al - 1.0 / v};
        s.b = {xi / 2.0, -xi / 2.0, -al - 1.0 / v};
        s.argument = x.beta * std::pow(kap, v) * u;
        return std::pow(kap, 1.0 + v * al) * math::meijer_g(s).value;
    };
    return x.psi * std::pow(u, al - 1.0) / (2.0 * v * (g - f)) *
           (theta_term(g) - theta_term(f));
}

} // namespace geometry
} // namespace ehlink
