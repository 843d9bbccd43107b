// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>

#include "ehlink/common.hpp"

namespace ehlink {

enum class EhMode { PS, DA };
enum class EhModel { L, NL };

struct EhConfig {
    EhMode mode = EhMode::PS;
    EhModel model = EhModel::L;
    double rho = 0.8;  // PS split toward the harvester
    double eta = 0.7;  // conversion efficiency
    double p_th = 1e4; // NL saturation power, linear units
    int n_r = 4;
    int n_eh = 1; // DA only
    int n_ip = 3; // DA only

    void validate() const {
        require(n_r >= 1, "EhConfig: n_r must be >= 1");
        // eta = 0 is admitted so the no-harvest limit can be simulated
        require(eta >= 0.0 && eta <= 1.0, "EhConfig: eta must be in [0,1]");
        require(p_th > 0.0, "EhConfig: p_th must be > 0");
        if (mode == EhMode::PS) {
            require(rho > 0.0 && rho < 1.0, "EhConfig: PS mode needs 0 < rho < 1");
        } else {
            require(n_eh >= 1 && n_ip >= 1, "EhConfig: DA mode needs n_eh, n_ip >= 1");
            require(n_r == n_eh + n_ip, "EhConfig: DA mode needs n_r == n_eh + n_ip");
        }
    }
};

struct SnrPair {
    double gamma_sr = 0.0;
    double gamma_rd = 0.0;
};

namespace harvester {

// Relay harvested power. channel_powers holds the EH-side |h_j|^2 values:
// the n_eh dedicated antennas (DA) or all n_r antennas (PS).
inline double harvested_power(const EhConfig& cfg, double ps, double l_sr,
                              std::span<const double> channel_powers) {
    cfg.validate();
    const std::size_t expected = cfg.mode == EhMode::DA ? cfg.n_eh : cfg.n_r;
    if (channel_powers.size() != expected)
        throw std::invalid_argument("harvested_power: wrong channel_powers length");
    double sum = 0.0;
    for (double w : channel_powers) sum += w;
    double pr = cfg.eta * ps * l_sr * sum;
    if (cfg.mode == EhMode::PS) pr *= cfg.rho;
    if (cfg.model == EhModel::NL) pr = std::min(pr, cfg.p_th);
    return pr;
}

// Post-MRC per-hop SNRs. h_powers holds all n_r |h_i|^2 values; under DA the
// first n_ip entries feed the information receiver and the rest the harvester.
inline SnrPair received_snrs(const EhConfig& cfg, double ps, double n0, double l_sr,
                             double l_rd, std::span<const double> h_powers,
                             double g_power) {
    cfg.validate();
    if (h_powers.size() != static_cast<std::size_t>(cfg.n_r))
        throw std::invalid_argument("received_snrs: h_powers must have n_r entries");
    SnrPair out;
    double ip_sum = 0.0;
    if (cfg.mode == EhMode::DA) {
        for (int i = 0; i < cfg.n_ip; ++i) ip_sum += h_powers[i];
        out.gamma_sr = ps / n0 * ip_sum * l_sr;
        const double pr =
            harvested_power(cfg, ps, l_sr, h_powers.subspan(cfg.n_ip, cfg.n_eh));
        out.gamma_rd = pr * l_rd * g_power / n0;
    } else {
        for (double w : h_powers) ip_sum += w;
        out.gamma_sr = (1.0 - cfg.rho) * ps / n0 * ip_sum * l_sr;
        const double pr = harvested_power(cfg, ps, l_sr, h_powers);
        out.gamma_rd = pr * l_rd * g_power / n0;
    }
    return out;
}

} // namespace harvester
} // namespace ehlink
