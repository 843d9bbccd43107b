// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ehlink/common.hpp"
#include "ehlink/harvester.hpp"

namespace ehlink {

// Complex amplitude of one cascaded (double-Rayleigh) channel.
using ChannelGain = cplx;

struct FadingStats {
    double omega_h = 1.0; // S->R per-antenna channel gain E[|h|^2]
    double omega_g = 1.0; // R->D channel gain E[|g|^2]
    double n0 = 1.0;      // noise PSD, equal at all receive antennas

    double ybar() const { return omega_g / n0; }
    void validate() const {
        require(omega_h > 0 && omega_g > 0 && n0 > 0, "FadingStats: all fields must be > 0");
    }
};

// Parameters of the Gamma-Gamma pdf
//   f(d) = psi * d^(alpha-1) * K_xi(2 sqrt(beta d))
// that approximates an MRC sum of double-Rayleigh channel powers.
struct GammaGammaParams {
    double k_t = 1.0;
    double m_t = 1.0;
    double mean = 1.0; // linear power units
    double alpha = 1.0;
    double beta = 1.0;
    double xi = 0.0;
    double psi = 2.0;

    static GammaGammaParams from_orders(double k_t, double m_t, double mean) {
        require(k_t > 0 && m_t > 0 && mean > 0, "GammaGammaParams: k_t, m_t, mean must be > 0");
        GammaGammaParams p;
        p.k_t = k_t;
        p.m_t = m_t;
        p.mean = mean;
        p.alpha = 0.5 * (k_t + m_t);
        p.beta = k_t * m_t / mean;
        p.xi = k_t - m_t;
        p.psi = 2.0 * std::pow(p.beta, p.alpha) /
                (std::tgamma(m_t) * std::tgamma(k_t));
        return p;
    }
};

namespace channel {

// Fitted order-correction term for the moment-matched sum of Gamma-Gamma variates.
inline double epsilon_fit(double k, double m) {
    if (!(k > 0.0) || !(m > 0.0)) throw std::domain_error("epsilon_fit: k, m must be > 0");
    return (-0.127 - 0.95 * k - 0.0058 * m) / (1.0 + 0.00124 * k + 0.98 * m);
}

enum class Link { SR, RD };

// Table-driven Gamma-Gamma parameters for the MRC sum on one hop.
// k = m = 1 is the cascaded-Rayleigh fading order pair; override for other cascades.
inline GammaGammaParams gamma_gamma_sum_params(Link link, const EhConfig& eh, double ps,
                                               const FadingStats& stats, double k = 1.0,
                                               double m = 1.0) {
    eh.validate();
    stats.validate();
    require(ps > 0, "gamma_gamma_sum_params: ps must be > 0");
    int n_branches;
    double branch_mean;
    if (link == Link::SR) {
        if (eh.mode == EhMode::DA) {
            n_branches = eh.n_ip;
            branch_mean = ps * stats.omega_h / stats.n0;
        } else {
            n_branches = eh.n_r;
            branch_mean = (1.0 - eh.rho) * ps * stats.omega_h / stats.n0;
        }
    } else {
        if (eh.mode == EhMode::DA) {
            n_branches = eh.n_eh;
            branch_mean = eh.eta * ps * stats.omega_h;
        } else {
            n_branches = eh.n_r;
            branch_mean = eh.eta * eh.rho * ps * stats.omega_h;
        }
    }
    const double e = epsilon_fit(k, m);
    const double k_t = n_branches * k + (n_branches - 1) * e;
    const double m_t = n_branches * m;
    return GammaGammaParams::from_orders(k_t, m_t, n_branches * branch_mean);
}

// Cascaded-Rayleigh power density f(y) = (2/ybar) K_0(2 sqrt(y/ybar)).
// The y = 0 endpoint carries an integrable logarithmic singularity; +inf is
// returned there as a sentinel.
inline double double_rayleigh_pdf(double y, double ybar) {
    if (y < 0.0) throw std::domain_error("double_rayleigh_pdf: y must be >= 0");
    if (!(ybar > 0.0)) throw std::domain_error("double_rayleigh_pdf: ybar must be > 0");
    if (y == 0.0) return std::numeric_limits<double>::infinity();
    return (2.0 / ybar) * std::cyl_bessel_k(0.0, 2.0 * std::sqrt(y / ybar));
}

inline double gamma_gamma_pdf(double delta, const GammaGammaParams& p) {
    if (!(delta > 0.0)) throw std::domain_error("gamma_gamma_pdf: delta must be > 0");
    return p.psi * std::pow(delta, p.alpha - 1.0) *
           std::cyl_bessel_k(std::abs(p.xi), 2.0 * std::sqrt(p.beta * delta));
}

// One cascaded-Rayleigh draw h = h1*h2, per-factor powers balanced at sqrt(omega)
// so that E[|h|^2] = omega and the phase statistics match the physical cascade.
inline ChannelGain sample_double_rayleigh(double omega, RandomStream& rng) {
    if (!(omega > 0.0)) throw std::domain_error("sample_double_rayleigh: omega must be > 0");
    const double sigma = std::sqrt(std::sqrt(omega) / 2.0);
    std::normal_distribution<double> gauss(0.0, sigma);
    cplx h1(gauss(rng), gauss(rng));
    cplx h2(gauss(rng), gauss(rng));
    return h1 * h2;
}

} // namespace channel
} // namespace ehlink
