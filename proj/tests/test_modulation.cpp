// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "ehlink/common.hpp"
#include "ehlink/modulation.hpp"

using namespace ehlink;
using modulation::QamMapper;

TEST_CASE("square QAM constellations") {
    for (int m : {4, 16, 64}) {
        QamMapper qam(m);
        const int iota = qam.bits_per_symbol();
        double energy = 0.0;
        std::vector<int> bits(iota), back(iota);
        for (int sym = 0; sym < m; ++sym) {
            for (int k = 0; k < iota; ++k) bits[k] = (sym >> (iota - 1 - k)) & 1;
            cplx x = qam.map(bits);
            energy += std::norm(x);
            qam.demap(x, back);
            CHECK(back == bits); // noiseless round trip
        }
        CHECK(energy / m == Catch::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(QamMapper(8), ConfigError);  // not a square constellation
    QamMapper qam(4);
    std::vector<int> three(3);
    CHECK_THROWS_AS(qam.map(three), std::invalid_argument);
}

TEST_CASE("Gray mapping: adjacent levels differ in one bit") {
    QamMapper qam(16);
    std::vector<int> a(4), b(4);
    for (int gi = 0; gi < 3; ++gi) {
        // walk the I axis at fixed Q and count bit flips between neighbours
        cplx x1 = {(2.0 * gi + 1.0 - 4.0) * std::sqrt(1.5 / 15.0), 3.0 * std::sqrt(1.5 / 15.0)};
        cplx x2 = {(2.0 * gi + 3.0 - 4.0) * std::sqrt(1.5 / 15.0), 3.0 * std::sqrt(1.5 / 15.0)};
        qam.demap(x1, a);
        qam.demap(x2, b);
        int flips = 0;
        for (int k = 0; k < 4; ++k) flips += a[k] != b[k];
        CHECK(flips == 1);
    }
}

TEST_CASE("AWGN 4-QAM bit error rate matches the Q-function") {
    // BER = Q(sqrt(2 gamma_b)) at bit SNR gamma_b = 9.6 dB
    const double gamma_b = db_to_linear(9.6);
    const double want = q_func(std::sqrt(2.0 * gamma_b));
    QamMapper qam(4);
    RandomStream rng(2024);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> coin(0, 1);
    const double es = 2.0 * gamma_b; // two bits per symbol, unit symbol energy
    const double noise_sd = std::sqrt(0.5 / es);
    std::vector<int> bits(2), back(2);
    std::uint64_t errors = 0, total = 0;
    while (errors < 2000 && total < 400000000ULL) {
        bits[0] = coin(rng);
        bits[1] = coin(rng);
        cplx x = qam.map(bits);
        cplx y = x + cplx(noise_sd * gauss(rng), noise_sd * gauss(rng));
        qam.demap(y, back);
        errors += (back[0] != bits[0]) + (back[1] != bits[1]);
        total += 2;
    }
    const double ber = static_cast<double>(errors) / total;
    const double hw = 1.96 * std::sqrt(ber * (1.0 - ber) / total);
    CHECK(std::abs(ber - want) < 3.0 * hw);
}

TEST_CASE("MRC combining") {
    SECTION("single branch derotates the phase") {
        std::vector<cplx> r{cplx(0.0, 2.0)};
        std::vector<cplx> g{cplx(0.0, 1.0)};
        cplx out = modulation::mrc_combine(r, g);
        CHECK(out.real() == Catch::Approx(2.0));
        CHECK(out.imag() == Catch::Approx(0.0).margin(1e-15));
    }
    SECTION("noiseless combination is exactly the transmitted symbol") {
        RandomStream rng(7);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const cplx sym(0.7071, -0.7071);
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 6);
            std::vector<cplx> g(n), r(n);
            for (int i = 0; i < n; ++i) {
                g[i] = cplx(gauss(rng), gauss(rng));
                r[i] = g[i] * sym;
            }
            CHECK(std::abs(modulation::mrc_combine(r, g) - sym) < 1e-12);
        }
    }
    SECTION("post-combining SNR equals the sum of branch SNRs") {
        // fixed gains, many noise draws: 1 / Var(out - sym) estimates the
        // post-combining SNR (unit symbol energy, unit noise PSD)
        RandomStream rng(11);
        std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
        const cplx sym(1.0, 0.0);
        std::vector<cplx> g{cplx(0.8, 0.3), cplx(-0.1, 1.2), cplx(0.5, -0.5)};
        double want = 0.0;
        for (auto& gi : g) want += std::norm(gi);
        const int n = 200000;
        double var = 0.0;
        std::vector<cplx> r(g.size());
        for (int i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < g.size(); ++k)
                r[k] = g[k] * sym + cplx(gauss(rng), gauss(rng));
            var += std::norm(modulation::mrc_combine(r, g) - sym);
        }
        var /= n;
        CHECK(1.0 / var == Catch::Approx(want).epsilon(0.02));
        // N equal gains: exactly N times the single-branch SNR
        std::vector<cplx> ge(4, cplx(1.3, -0.4));
        double single = std::norm(ge[0]);
        double combined = 0.0;
        for (auto& gi : ge) combined += std::norm(gi);
        CHECK(combined == Catch::Approx(4.0 * single).epsilon(1e-9));
    }
    std::vector<cplx> r(2), g(3);
    CHECK_THROWS_AS(modulation::mrc_combine(r, g), std::invalid_argument);
}
