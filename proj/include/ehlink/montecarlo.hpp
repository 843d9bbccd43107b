// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "ehlink/channel.hpp"
#include "ehlink/common.hpp"
#include "ehlink/modulation.hpp"
#include "ehlink/system.hpp"

namespace ehlink {

struct BerEstimate {
    double ber = 0.0;
    std::uint64_t bit_errors = 0;
    std::uint64_t bits = 0;
    double half_width_95 = 0.0;
};

namespace montecarlo {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Disjoint deterministic sub-seed for one work unit.
inline std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk_idx) {
    return splitmix64(seed ^ splitmix64(chunk_idx + 0x51ed2701a9e5f3c1ULL));
}

struct Counters {
    std::uint64_t bit_errors = 0;
    std::uint64_t bits = 0;
};

// One independent block: fresh distances, channels, and noise per symbol.
inline Counters run_chunk(const SystemConfig& cfg, const modulation::QamMapper& qam,
                          std::uint64_t seed, std::uint32_t n_symbols) {
    RandomStream rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_int_distribution<int> coin(0, 1);

    const EhConfig& eh = cfg.eh;
    const int n_r = eh.n_r;
    const int n_ip = eh.mode == EhMode::DA ? eh.n_ip : n_r;
    const double ps = cfg.ps_linear();
    const double n0 = cfg.fading.n0;
    const double noise_sd = std::sqrt(n0 / 2.0);
    const double fac_sd_h = std::sqrt(std::sqrt(cfg.fading.omega_h) / 2.0);
    const double fac_sd_g = std::sqrt(std::sqrt(cfg.fading.omega_g) / 2.0);
    const double ip_scale = eh.mode == EhMode::PS ? 1.0 - eh.rho : 1.0;
    const double eh_scale = eh.mode == EhMode::PS ? eh.rho : 1.0;
    const int iota = qam.bits_per_symbol();

    std::vector<cplx> h(n_r), rx(n_ip), amp(n_ip);
    std::vector<int> bits(iota), rbits(iota), dbits(iota);
    Counters out;

    auto draw_dist = [&](const LinkGeometry& gm) {
        return gm.is_uniform() ? gm.lo + (gm.hi - gm.lo) * uni(rng) : gm.d;
    };
    auto cgauss = [&](double sd) { return cplx(sd * gauss(rng), sd * gauss(rng)); };

    for (std::uint32_t s = 0; s < n_symbols; ++s) {
        const double l_sr = std::pow(draw_dist(cfg.geom_sr), -cfg.geom_sr.v);
        const double l_rd = std::pow(draw_dist(cfg.geom_rd), -cfg.geom_rd.v);
        for (int i = 0; i < n_r; ++i) h[i] = cgauss(fac_sd_h) * cgauss(fac_sd_h);
        const cplx g = cgauss(fac_sd_g) * cgauss(fac_sd_g);

        for (int k = 0; k < iota; ++k) bits[k] = coin(rng);
        const cplx x = qam.map(bits);

        // S->R with MRC over the information branches
        const double tx_amp = std::sqrt(ip_scale * ps * l_sr);
        double gain2 = 0.0;
        for (int i = 0; i < n_ip; ++i) {
            amp[i] = tx_amp * h[i];
            rx[i] = amp[i] * x + cplx(noise_sd * gauss(rng), noise_sd * gauss(rng));
            gain2 += std::norm(amp[i]);
        }
        cplx stat;
        if (gain2 > 0.0) {
            cplx acc(0.0, 0.0);
            for (int i = 0; i < n_ip; ++i) acc += std::conj(amp[i]) * rx[i];
            stat = acc / gain2;
        } else {
            stat = rx[0];
        }
        qam.demap(stat, rbits);
        const cplx xhat = qam.map(rbits);

        // harvest (EH branches: dedicated tail antennas under DA, all under PS)
        double eh_sum = 0.0;
        const int eh_from = eh.mode == EhMode::DA ? n_ip : 0;
        for (int i = eh_from; i < n_r; ++i) eh_sum += std::norm(h[i]);
        double pr = eh.eta * eh_scale * ps * l_sr * eh_sum;
        if (eh.model == EhModel::NL) pr = std::min(pr, eh.p_th);

        // R->D
        const cplx ampd = std::sqrt(pr * l_rd) * g;
        const cplx y = ampd * xhat + cplx(noise_sd * gauss(rng), noise_sd * gauss(rng));
        const double d2 = std::norm(ampd);
        const cplx statd = d2 > 0.0 ? std::conj(ampd) * y / d2 : y;
        qam.demap(statd, dbits);

        for (int k = 0; k < iota; ++k) out.bit_errors += (dbits[k] != bits[k]);
        out.bits += iota;
    }
    return out;
}

} // namespace detail

// Link-level BER estimate. Work is split into fixed-size chunks with disjoint
// sub-seeds derived from (seed, chunk index); stopping is decided on wave
// boundaries, so the estimate is bit-for-bit reproducible for a given seed,
// independent of the number of threads.
inline BerEstimate simulate_ber(const SystemConfig& cfg, std::uint64_t min_errors = 200,
                                std::uint64_t max_bits = 100000000ULL, int n_threads = 0) {
    cfg.validate();
    if (max_bits == 0) throw ConfigError("simulate_ber: max_bits must be > 0");
    const modulation::QamMapper qam(cfg.mod.m_order);
    const std::uint32_t chunk_symbols = 8192;
    const std::uint64_t chunk_bits =
        static_cast<std::uint64_t>(chunk_symbols) * qam.bits_per_symbol();
    if (n_threads <= 0) {
        n_threads = static_cast<int>(std::thread::hardware_concurrency());
        if (n_threads <= 0) n_threads = 1;
    }

    detail::Counters total;
    std::uint64_t next_chunk = 0;
    std::uint64_t wave = 4;
    while (total.bit_errors < min_errors && total.bits < max_bits) {
        std::uint64_t remaining_chunks =
            (max_bits - total.bits + chunk_bits - 1) / chunk_bits;
        const std::uint64_t n_chunks = std::min(wave, remaining_chunks);
        std::vector<detail::Counters> partial(n_chunks);
        auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
            for (std::uint64_t c = lo; c < hi; ++c)
                partial[c] = detail::run_chunk(
                    cfg, qam, detail::chunk_seed(cfg.seed, next_chunk + c), chunk_symbols);
        };
        if (n_threads == 1 || n_chunks == 1) {
            worker(0, n_chunks);
        } else {
            std::vector<std::thread> pool;
            const std::uint64_t per =
                (n_chunks + n_threads - 1) / static_cast<std::uint64_t>(n_threads);
            for (std::uint64_t lo = 0; lo < n_chunks; lo += per)
                pool.emplace_back(worker, lo, std::min(lo + per, n_chunks));
            for (auto& t : pool) t.join();
        }
        for (const auto& c : partial) {
            total.bit_errors += c.bit_errors;
            total.bits += c.bits;
        }
        next_chunk += n_chunks;
        wave *= 2;
    }
    if (total.bits == 0) throw ConfigError("simulate_ber: zero bits simulated");

    BerEstimate est;
    est.bit_errors = total.bit_errors;
    est.bits = total.bits;
    est.ber = static_cast<double>(total.bit_errors) / static_cast<double>(total.bits);
    est.half_width_95 =
        1.96 * std::sqrt(std::max(est.ber * (1.0 - est.ber), 0.0) /
                         static_cast<double>(total.bits));
    return est;
}

} // namespace montecarlo
} // namespace ehlink
