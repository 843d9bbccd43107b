// SPDX-License-Identifier: Apache-2.0
//
// Closed-form SER/BER expressions for the dual-hop DF link, each paired with a
// direct-quadrature reference path computing the same quantity from the
// underlying integral. Closed forms are assembled from Mellin-Barnes kernels
// reduced to straight-contour Meijer-G specs; the incomplete-integral pieces
// keep the residue-cancelling endpoint-difference structure, so the values
// match the averaged-SER integrals exactly.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "ehlink/channel.hpp"
#include "ehlink/common.hpp"
#include "ehlink/geometry.hpp"
#include "ehlink/math/meijer_g.hpp"
#include "ehlink/math/quadrature.hpp"
#include "ehlink/modulation.hpp"
#include "ehlink/system.hpp"

namespace ehlink::analytic {

enum class EvalRoute { closed_form, fallback };

struct SerValue {
    double value = 0.0;
    EvalRoute route = EvalRoute::closed_form;
};

namespace detail {

inline double clamp01(double x) { return std::min(std::max(x, 0.0), 1.0); }

inline double meijer(int m, int n, std::vector<double> a, std::vector<double> b, double z) {
    math::MeijerGSpec s;
    s.m = m;
    s.n = n;
    s.a = std::move(a);
    s.b = std::move(b);
    s.argument = z;
    return math::meijer_g(s).value;
}

// a / (2 sqrt(pi) Gamma(k) Gamma(m)); the psi/(4 sqrt(pi) beta^alpha) prefactor
// with the beta^alpha absorbed.
inline double tau_of(const ModulationParams& mod, const GammaGammaParams& p) {
    return mod.a / (2.0 * std::sqrt(M_PI) * std::tgamma(p.k_t) * std::tgamma(p.m_t));
}

// Conditional SER of the MRC hop at fixed path loss z:
//   int a Q(sqrt(2 b t z)) f_Delta(t) dt.
inline double sr_cond_closed(const ModulationParams& mod, const GammaGammaParams& th,
                             double z) {
    const double al = th.alpha, xi = th.xi;
    return tau_of(mod, th) * meijer(2, 2, {1.0 - al - xi / 2.0, 1.0 - al + xi / 2.0, 1.0},
                                    {0.0, 0.5}, mod.b * z / th.beta);
}

inline double sr_cond_quad(const ModulationParams& mod, const GammaGammaParams& th,
                           double z) {
    // mass scale of the Gamma-Gamma pdf; splitting there keeps the adaptive
    // rule from overlooking a narrow bulk
    const double scale = th.mean;
    auto f = [&](double t) {
        return mod.a * q_func(std::sqrt(2.0 * mod.b * t * z)) * channel::gamma_gamma_pdf(t, th);
    };
    double total = math::integrate(f, 0.0, scale, 1e-11).value;
    total += math::integrate_to_inf(f, scale, 1e-11).value;
    return total;
}

// Effective upper end of the harvested-power distribution: beyond this point
// the Gamma-Gamma tail exp(-2 sqrt(beta x)) is below ~1e-13 of the bulk.
inline double gg_tail_cap(double beta) {
    const double lambda = 30.0;
    return lambda * lambda / (4.0 * beta);
}

} // namespace detail

// Union-style end-to-end BER bound from the two hop SERs; [0, 1/2] by construction.
inline double ber_overall(double p_sr, double p_rd, int iota) {
    p_sr = detail::clamp01(p_sr);
    p_rd = detail::clamp01(p_rd);
    double ber = (1.0 - (1.0 - p_sr) * (1.0 - p_rd)) / iota;
    return std::min(std::max(ber, 0.0), 0.5);
}

// ---------------------------------------------------------------------------
// S->R hop
// ---------------------------------------------------------------------------

inline double ser_sr_deterministic_quad(const ModulationParams& mod,
                                        const GammaGammaParams& theta, double d_sr,
                                        double v) {
    return detail::sr_cond_quad(mod, theta, geometry::pathloss(d_sr, v));
}

inline SerValue ser_sr_deterministic(const ModulationParams& mod,
                                     const GammaGammaParams& theta, double d_sr, double v) {
    try {
        return {detail::clamp01(detail::sr_cond_closed(mod, theta,
                                                       geometry::pathloss(d_sr, v))),
                EvalRoute::closed_form};
    } catch (const math::MeijerGError&) {
        return {detail::clamp01(ser_sr_deterministic_quad(mod, theta, d_sr, v)),
                EvalRoute::fallback};
    }
}

inline double ser_sr_uniform_quad(const ModulationParams& mod, const GammaGammaParams& theta,
                                  const LinkGeometry& geom) {
    const double f = geom.lo, g = geom.hi, v = geom.v;
    auto outer = [&](double z) {
        return detail::sr_cond_quad(mod, theta, z) * geometry::pathloss_pdf(z, f, g, v);
    };
    return math::integrate(outer, std::pow(g, -v), std::pow(f, -v), 1e-9).value;
}

inline SerValue ser_sr_uniform(const ModulationParams& mod, const GammaGammaParams& theta,
                               const LinkGeometry& geom) {
    if (!geom.is_uniform()) throw ConfigError("ser_sr_uniform: geometry must be uniform");
    const double f = geom.lo, g = geom.hi, v = geom.v;
    const double al = theta.alpha, xi = theta.xi;
    try {
        auto big_xi = [&](double kap) {
            return kap * detail::meijer(3, 2,
                                        {1.0 - al - xi / 2.0, 1.0 - al + xi / 2.0, 1.0,
                                         1.0 + 1.0 / v},
                                        {0.0, 0.5, 1.0 / v},
                                        mod.b * std::pow(kap, -v) / theta.beta);
        };
        const double val =
            detail::tau_of(mod, theta) / (v * (g - f)) * (big_xi(g) - big_xi(f));
        return {detail::clamp01(val), EvalRoute::closed_form};
    } catch (const math::MeijerGError&) {
        return {detail::clamp01(ser_sr_uniform_quad(mod, theta, geom)), EvalRoute::fallback};
    }
}

// ---------------------------------------------------------------------------
// R->D hop, conditioned on the harvested power
// ---------------------------------------------------------------------------

// SER of the R->D hop given relay input power u, averaged over the cascaded
// fading and the uniform R->D distance.
inline double ser_rd_cond_uniform_quad(const ModulationParams& mod, double u, double ybar,
                                       const LinkGeometry& geom_rd) {
    const double r = geom_rd.lo, p = geom_rd.hi, v = geom_rd.v;
    auto inner = [&](double w) {
        auto fy = [&](double y) {
            return mod.a * q_func(std::sqrt(2.0 * mod.b * u * y * w)) *
                   channel::double_rayleigh_pdf(y, ybar);
        };
        // K0 log singularity at 0 is integrable; the rule never samples 0
        double val = math::integrate(fy, 0.0, ybar, 1e-10).value;
        val += math::integrate_to_inf(fy, ybar, 1e-10).value;
        return val * geometry::pathloss_pdf(w, r, p, v);
    };
    return math::integrate(inner, std::pow(p, -v), std::pow(r, -v), 1e-8).value;
}

inline SerValue ser_rd_cond_uniform(const ModulationParams& mod, double u, double ybar,
                                    const LinkGeometry& geom_rd) {
    if (!(u > 0.0)) throw std::domain_error("ser_rd_cond_uniform: u must be > 0");
    if (!geom_rd.is_uniform())
        throw ConfigError("ser_rd_cond_uniform: geometry must be uniform");
    const double r = geom_rd.lo, p = geom_rd.hi, v = geom_rd.v;
    try {
        auto varrho = [&](double mu) {
            return mu * detail::meijer(3, 2, {0.0, 0.0, 1.0, 1.0 + 1.0 / v},
                                       {0.0, 0.5, 1.0 / v},
                                       mod.b * ybar * u * std::pow(mu, -v));
        };
        const double val =
            mod.a / (2.0 * std::sqrt(M_PI) * v * (p - r)) * (varrho(p) - varrho(r));
        return {detail::clamp01(val), EvalRoute::closed_form};
    } catch (const math::MeijerGError&) {
        return {detail::clamp01(ser_rd_cond_uniform_quad(mod, u, ybar, geom_rd)),
                EvalRoute::fallback};
    }
}

// Same conditioning with a fixed R->D path loss.
inline double ser_rd_cond_det_quad(const ModulationParams& mod, double phi, double ybar,
                                   double l_rd) {
    auto fy = [&](double y) {
        return mod.a * q_func(std::sqrt(2.0 * mod.b * phi * l_rd * y)) *
               channel::double_rayleigh_pdf(y, ybar);
    };
    return math::integrate(fy, 0.0, ybar, 1e-10).value +
           math::integrate_to_inf(fy, ybar, 1e-10).value;
}

inline SerValue ser_rd_cond_det(const ModulationParams& mod, double phi, double ybar,
                                double l_rd) {
    if (!(phi > 0.0)) throw std::domain_error("ser_rd_cond_det: phi must be > 0");
    try {
        const double val = mod.a / (2.0 * std::sqrt(M_PI)) *
                           detail::meijer(2, 2, {0.0, 0.0, 1.0}, {0.0, 0.5},
                                          mod.b * ybar * l_rd * phi);
        return {detail::clamp01(val), EvalRoute::closed_form};
    } catch (const math::MeijerGError&) {
        return {detail::clamp01(ser_rd_cond_det_quad(mod, phi, ybar, l_rd)),
                EvalRoute::fallback};
    }
}

// ---------------------------------------------------------------------------
// R->D hop, linear harvester
// ---------------------------------------------------------------------------

inline double ser_rd_linear_uniform_quad(const ModulationParams& mod,
                                         const GammaGammaParams& x,
                                         const LinkGeometry& geom_sr,
                                         const LinkGeometry& geom_rd, double ybar) {
    auto f = [&](double u) {
        return ser_rd_cond_uniform(mod, u, ybar, geom_rd).value *
               geometry::product_pdf_u(u, x, geom_sr);
    };
    const double cap = detail::gg_tail_cap(x.beta * std::pow(geom_sr.lo, geom_sr.v));
    return math::integrate(f, 0.0, cap, 1e-7).value +
           math::integrate_to_inf(f, cap, 1e-7).value;
}

inline SerValue ser_rd_linear_uniform(const ModulationParams& mod, const GammaGammaParams& x,
                                      const LinkGeometry& geom_sr,
                                      const LinkGeometry& geom_rd, double ybar) {
    if (!geom_sr.is_uniform() || !geom_rd.is_uniform())
        throw ConfigError("ser_rd_linear_uniform: both geometries must be uniform");
    const double f = geom_sr.lo, g = geom_sr.hi, v = geom_sr.v;
    const double r = geom_rd.lo, p = geom_rd.hi;
    const double al = x.alpha, xi = x.xi;
    try {
        auto phi_term = [&](double mu, double kap) {
            const double z = mod.b * ybar / (x.beta * std::pow(kap, v) * std::pow(mu, v));
            const double gval =
                detail::meijer(4, 4,
                               {0.0, 0.0, 1.0 - al - xi / 2.0, 1.0 - al + xi / 2.0, 1.0,
                                1.0 + 1.0 / v, 1.0 + 1.0 / v},
                               {0.0, 0.5, 1.0 / v, 1.0 / v}, z);
            return mu * std::pow(kap, 1.0 + v * al) *
                   std::pow(x.beta * std::pow(kap, v), -al) * gval;
        };
        const double pref =
            x.psi * mod.a / (4.0 * std::sqrt(M_PI) * v * v * (g - f) * (p - r));
        const double val = pref * (phi_term(p, g) - phi_term(p, f) - phi_term(r, g) +
                                   phi_term(r, f));
        return {detail::clamp01(val), EvalRoute::closed_form};
    } catch (const math::MeijerGError&) {
        return {detail::clamp01(ser_rd_linear_uniform_quad(mod, x, geom_sr, geom_rd, ybar)),
                EvalRoute::fallback};
    }
}

inline double ser_rd_linear_det_quad(const ModulationParams& mod, const GammaGammaParams& x,
                                     double l_sr, double l_rd, double ybar) {
    auto f = [&](double phi) {
        return ser_rd_cond_det(mod, phi, ybar, l_rd).value *
               channel::gamma_gamma_pdf(phi / l_sr, x) / l_sr;
    };
    const double cap = detail::gg_tail_cap(x.beta / l_sr);
    return math::integrate(f, 0.0, cap, 1e-9).value +
           math::integrate_to_inf(f, cap, 1e-9).value;
}

inline SerValue ser_rd_linear_det(const ModulationParams& mod, const GammaGammaParams& x,
                                  double l_sr, double l_rd, double ybar) {
    const double al = x.alpha, xi = x.xi;
    const double psi_phi = x.psi / std::pow(l_sr, al);
    const double beta_phi = x.beta / l_sr;
    try {
        const double gval = detail::meijer(
            2, 4, {0.0, 0.0, 1.0 - al - xi / 2.0, 1.0 - al + xi / 2.0, 1.0}, {0.0, 0.5},
            mod.b * ybar * l_rd / beta_phi);
        const double val = mod.a * psi_phi / (4.0 * std::sqrt(M_PI)) *
                           std::pow(beta_phi, -al) * gval;
        return {detail::clamp01(val), EvalRoute::closed_form};
    } catch (const math::MeijerGError&) {
        return {detail::clamp01(ser_rd_linear_det_quad(mod, x, l_sr, l_rd, ybar)),
                EvalRoute::fallback};
    }
}

// ---------------------------------------------------------------------------
// R->D hop, saturating harvester
// ---------------------------------------------------------------------------

// P[U <= p_th] for U = X * Z under uniform S->R distance.
inline double harvest_cdf_uniform(const GammaGammaParams& x, const LinkGeometry& geom_sr,
                                  double p_th) {
    const double f = geom_sr.lo, g = geom_sr.hi, v = geom_sr.v;
    const double al = x.alpha, xi = x.xi;
    auto sigma = [&](double kap) {
        return std::pow(kap, 1.0 + v * al) *
               detail::meijer(2, 2, {1.0 - al, 1.0 - al - 1.0 / v},
                              {xi / 2.0, -xi / 2.0, -al, -al - 1.0 / v},
                              x.beta * std::pow(kap, v) * p_th);
    };
    return x.psi * std::pow(p_th, al) / (2.0 * v * (g - f)) * (sigma(g) - sigma(f));
}

inline double harvest_cdf_uniform_quad(const GammaGammaParams& x, const LinkGeometry& geom_sr,
                                       double p_th) {
    auto f = [&](double u) { return geometry::product_pdf_u(u, x, geom_sr); };
    const double cap =
        std::min(p_th, detail::gg_tail_cap(x.beta * std::pow(geom_sr.lo, geom_sr.v)));
    double val = math::integrate(f, 0.0, cap, 1e-9).value;
    if (cap < p_th) val += math::integrate(f, cap, p_th, 1e-9).value;
    return val;
}

// P[Phi <= p_th] for Phi = l_sr * X.
inline double harvest_cdf_det(const GammaGammaParams& x, double l_sr, double p_th) {
    const double al = x.alpha, xi = x.xi;
    const double psi_phi = x.psi / std::pow(l_sr, al);
    const double beta_phi = x.beta / l_sr;
    return psi_phi * std::pow(p_th, al) / 2.0 *
           detail::meijer(2, 1, {1.0 - al}, {xi / 2.0, -xi / 2.0, -al}, beta_phi * p_th);
}

inline double harvest_cdf_det_quad(const GammaGammaParams& x, double l_sr, double p_th) {
    auto f = [&](double phi) { return channel::gamma_gamma_pdf(phi / l_sr, x) / l_sr; };
    const double cap = std::min(p_th, detail::gg_tail_cap(x.beta / l_sr));
    double val = math::integrate(f, 0.0, cap, 1e-10).value;
    if (cap < p_th) val += math::integrate(f, cap, p_th, 1e-10).value;
    return val;
}

// chi-point Gauss-Chebyshev applied per geometric panel across the effective
// support of the below-threshold integrand; uniform accuracy in the ratio of
// the harvest scale to p_th, preserving the chi accuracy/cost trade-off.
template <typename F>
inline double below_threshold_gc(const F& integrand, double p_th, double u_hi, int chi) {
    if (chi < 1) throw ConfigError("below_threshold_gc: chi must be >= 1");
    const double hi = std::min(p_th, u_hi);
    double total = math::gauss_chebyshev(integrand, 0.0, hi * 1e-5, chi);
    double b0 = hi * 1e-5;
    while (b0 < hi * 0.999999) {
        double b1 = std::min(b0 * 4.0, hi);
        total += math::gauss_chebyshev(integrand, b0, b1, chi);
        b0 = b1;
    }
    return total;
}

inline double ser_rd_nl_uniform_quad(const ModulationParams& mod, const GammaGammaParams& x,
                                     const LinkGeometry& geom_sr, const LinkGeometry& geom_rd,
                                     double ybar, double p_th) {
    auto f = [&](double u) {
        return ser_rd_cond_uniform(mod, u, ybar, geom_rd).value *
               geometry::product_pdf_u(u, x, geom_sr);
    };
    const double cap =
        std::min(p_th, detail::gg_tail_cap(x.beta * std::pow(geom_sr.lo, geom_sr.v)));
    double j1 = math::integrate(f, 0.0, cap, 1e-7).value;
    if (cap < p_th) j1 += math::integrate(f, cap, p_th, 1e-7).value;
    const double j2 = harvest_cdf_uniform_quad(x, geom_sr, p_th);
    return j1 + ser_rd_cond_uniform(mod, p_th, ybar, geom_rd).value * (1.0 - j2);
}

inline SerValue ser_rd_nl_uniform(const ModulationParams& mod, const GammaGammaParams& x,
                                  const LinkGeometry& geom_sr, const LinkGeometry& geom_rd,
                                  double ybar, double p_th, int chi = 20) {
    if (chi < 1) throw ConfigError("ser_rd_nl_uniform: chi must be >= 1");
    if (!geom_sr.is_uniform() || !geom_rd.is_uniform())
        throw ConfigError("ser_rd_nl_uniform: both geometries must be uniform");
    try {
        auto integrand = [&](double u) {
            return ser_rd_cond_uniform(mod, u, ybar, geom_rd).value *
                   geometry::product_pdf_u(u, x, geom_sr);
        };
        const double u_hi = detail::gg_tail_cap(x.beta * std::pow(geom_sr.lo, geom_sr.v));
        const double j1 = below_threshold_gc(integrand, p_th, u_hi, chi);
        const double j2 = harvest_cdf_uniform(x, geom_sr, p_th);
        const double cond = ser_rd_cond_uniform(mod, p_th, ybar, geom_rd).value;
        return {detail::clamp01(j1 + cond * (1.0 - detail::clamp01(j2))),
                EvalRoute::closed_form};
    } catch (const math::MeijerGError&) {
        return {detail::clamp01(
                    ser_rd_nl_uniform_quad(mod, x, geom_sr, geom_rd, ybar, p_th)),
                EvalRoute::fallback};
    }
}

inline double ser_rd_nl_det_quad(const ModulationParams& mod, const GammaGammaParams& x,
                                 double l_sr, double l_rd, double ybar, double p_th) {
    auto f = [&](double phi) {
        return ser_rd_cond_det(mod, phi, ybar, l_rd).value *
               channel::gamma_gamma_pdf(phi / l_sr, x) / l_sr;
    };
    const double cap = std::min(p_th, detail::gg_tail_cap(x.beta / l_sr));
    double i1 = math::integrate(f, 0.0, cap, 1e-8).value;
    if (cap < p_th) i1 += math::integrate(f, cap, p_th, 1e-8).value;
    const double i2 = harvest_cdf_det_quad(x, l_sr, p_th);
    return i1 + ser_rd_cond_det(mod, p_th, ybar, l_rd).value * (1.0 - i2);
}

namespace detail {

// Below-threshold SER mass via the Bessel bridge series
//   K_xi = pi/(2 sin(pi xi)) (I_{-xi} - I_{xi}),
// term-wise reduced to Meijer-G factors. Valid for non-integer xi and
// numerically healthy only while beta_phi * p_th stays moderate; the caller
// falls back to quadrature otherwise.
inline bool i1_series(const ModulationParams& mod, const GammaGammaParams& x, double l_sr,
                      double l_rd, double ybar, double p_th, int chi, double& out) {
    const double al = x.alpha, xi = x.xi;
    if (std::abs(xi - std::round(xi)) < 1e-6) return false; // csc(pi xi) pole
    const double psi_phi = x.psi / std::pow(l_sr, al);
    const double beta_phi = x.beta / l_sr;
    if (beta_phi * p_th > 400.0) return false; // cancellation past double headroom

    const double zarg = mod.b * p_th * l_rd * ybar;
    auto psi_sum = [&](double zeta, double& max_term) {
        double sum = 0.0;
        max_term = 0.0;
        double log_bp = std::log(beta_phi);
        int max_j = std::max(chi, 60);
        for (int j = 0; j <= max_j + 200; ++j) {
            const double sp = al + j + zeta / 2.0;
            const double g = meijer(2, 3, {0.0, 0.0, 1.0 - sp, 1.0}, {0.0, 0.5, -sp}, zarg);
            // Gamma(j + zeta + 1) is negative on part of its domain for
            // zeta < -1; keep the sign, unlike lgamma
            const double gj = j + zeta + 1.0;
            double sign = 1.0, log_den;
            if (gj > 170.5) {
                log_den = std::lgamma(gj);
            } else {
                const double tg = std::tgamma(gj);
                sign = tg < 0.0 ? -1.0 : 1.0;
                log_den = std::log(std::abs(tg));
            }
            const double logc = (j + zeta / 2.0) * log_bp + sp * std::log(p_th) - log_den -
                                std::lgamma(j + 1.0);
            const double term = sign * std::exp(logc) * g;
            sum += term;
            max_term = std::max(max_term, std::abs(term));
            if (j > 4 && std::abs(term) < 1e-16 * std::abs(sum)) return sum;
        }
        return sum; // truncation flagged by caller via magnitude check
    };
    double m1 = 0.0, m2 = 0.0;
    const double s1 = psi_sum(-xi, m1);
    const double s2 = psi_sum(xi, m2);
    const double val = mod.a * psi_phi * std::sqrt(M_PI) / (4.0 * std::sin(M_PI * xi)) *
                       (s1 - s2);
    // catastrophic cancellation guard
    const double scale = std::max(m1, m2) * std::abs(mod.a * psi_phi);
    if (!(std::isfinite(val)) || (val != 0.0 && scale / std::max(std::abs(val), 1e-300) > 1e10))
        return false;
    out = val;
    return true;
}

} // namespace detail

inline SerValue ser_rd_nl_det(const ModulationParams& mod, const GammaGammaParams& x,
                              double l_sr, double l_rd, double ybar, double p_th,
                              int chi = 20) {
    if (chi < 1) throw ConfigError("ser_rd_nl_det: chi must be >= 1");
    double i1 = 0.0;
    bool series_ok = false;
    try {
        series_ok = detail::i1_series(mod, x, l_sr, l_rd, ybar, p_th, chi, i1);
        if (series_ok) {
            const double i2 = harvest_cdf_det(x, l_sr, p_th);
            const double cond = ser_rd_cond_det(mod, p_th, ybar, l_rd).value;
            return {detail::clamp01(i1 + cond * (1.0 - detail::clamp01(i2))),
                    EvalRoute::closed_form};
        }
    } catch (const math::MeijerGError&) {
    }
    return {detail::clamp01(ser_rd_nl_det_quad(mod, x, l_sr, l_rd, ybar, p_th)),
            EvalRoute::fallback};
}

// ---------------------------------------------------------------------------
// End-to-end evaluation
// ---------------------------------------------------------------------------

struct BerBreakdown {
    double ber = 0.0;
    double p_sr = 0.0;
    double p_rd = 0.0;
    EvalRoute route = EvalRoute::closed_form;
};

// Upper-bound BER of the full link for the given harvester model. Geometries
// must be both uniform or both deterministic.
inline BerBreakdown ber_upper_bound(const SystemConfig& cfg, EhModel model, int chi = 20) {
    cfg.validate();
    const GammaGammaParams theta = channel::gamma_gamma_sum_params(channel::Link::SR, cfg);
    const GammaGammaParams x = channel::gamma_gamma_sum_params(channel::Link::RD, cfg);
    const double ybar = cfg.fading.ybar();
    BerBreakdown out;
    SerValue sr, rd;
    if (cfg.geom_sr.is_uniform() && cfg.geom_rd.is_uniform()) {
        sr = ser_sr_uniform(cfg.mod, theta, cfg.geom_sr);
        rd = model == EhModel::L
                 ? ser_rd_linear_uniform(cfg.mod, x, cfg.geom_sr, cfg.geom_rd, ybar)
                 : ser_rd_nl_uniform(cfg.mod, x, cfg.geom_sr, cfg.geom_rd, ybar,
                                     cfg.eh.p_th, chi);
    } else if (!cfg.geom_sr.is_uniform() && !cfg.geom_rd.is_uniform()) {
        const double l_sr = geometry::pathloss(cfg.geom_sr.d, cfg.geom_sr.v);
        const double l_rd = geometry::pathloss(cfg.geom_rd.d, cfg.geom_rd.v);
        sr = ser_sr_deterministic(cfg.mod, theta, cfg.geom_sr.d, cfg.geom_sr.v);
        rd = model == EhModel::L
                 ? ser_rd_linear_det(cfg.mod, x, l_sr, l_rd, ybar)
                 : ser_rd_nl_det(cfg.mod, x, l_sr, l_rd, ybar, cfg.eh.p_th, chi);
    } else {
        throw ConfigError("ber_upper_bound: mixed uniform/deterministic geometries are "
                          "not supported");
    }
    out.p_sr = sr.value;
    out.p_rd = rd.value;
    out.ber = ber_overall(sr.value, rd.value, cfg.mod.iota);
    out.route = (sr.route == EvalRoute::fallback || rd.route == EvalRoute::fallback)
                    ? EvalRoute::fallback
                    : EvalRoute::closed_form;
    return out;
}

// Reference-path twin of ber_upper_bound (direct quadrature throughout).
inline double ber_upper_bound_quad(const SystemConfig& cfg, EhModel model) {
    cfg.validate();
    const GammaGammaParams theta = channel::gamma_gamma_sum_params(channel::Link::SR, cfg);
    const GammaGammaParams x = channel::gamma_gamma_sum_params(channel::Link::RD, cfg);
    const double ybar = cfg.fading.ybar();
    double p_sr, p_rd;
    if (cfg.geom_sr.is_uniform() && cfg.geom_rd.is_uniform()) {
        p_sr = ser_sr_uniform_quad(cfg.mod, theta, cfg.geom_sr);
        p_rd = model == EhModel::L
                   ? ser_rd_linear_uniform_quad(cfg.mod, x, cfg.geom_sr, cfg.geom_rd, ybar)
                   : ser_rd_nl_uniform_quad(cfg.mod, x, cfg.geom_sr, cfg.geom_rd, ybar,
                                            cfg.eh.p_th);
    } else {
        const double l_sr = geometry::pathloss(cfg.geom_sr.d, cfg.geom_sr.v);
        const double l_rd = geometry::pathloss(cfg.geom_rd.d, cfg.geom_rd.v);
        p_sr = ser_sr_deterministic_quad(cfg.mod, theta, cfg.geom_sr.d, cfg.geom_sr.v);
        p_rd = model == EhModel::L
                   ? ser_rd_linear_det_quad(cfg.mod, x, l_sr, l_rd, ybar)
                   : ser_rd_nl_det_quad(cfg.mod, x, l_sr, l_rd, ybar, cfg.eh.p_th);
    }
    return ber_overall(p_sr, p_rd, cfg.mod.iota);
}

} // namespace ehlink::analytic
