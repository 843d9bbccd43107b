// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ehlink/analytic.hpp"
#include "ehlink/montecarlo.hpp"

using namespace ehlink;

namespace {

SystemConfig defaults_ps(double ps_db) {
    SystemConfig cfg;
    cfg.eh.mode = EhMode::PS;
    cfg.eh.rho = 0.8;
    cfg.eh.eta = 0.7;
    cfg.eh.n_r = 4;
    cfg.eh.p_th = db_to_linear(40.0);
    cfg.ps_db = ps_db;
    cfg.seed = 987654321;
    return cfg;
}

} // namespace

TEST_CASE("fixed seed reproduces the estimate bit for bit") {
    SystemConfig cfg = defaults_ps(20.0);
    auto a = montecarlo::simulate_ber(cfg, 500, 10000000);
    auto b = montecarlo::simulate_ber(cfg, 500, 10000000);
    CHECK(a.ber == b.ber);
    CHECK(a.bit_errors == b.bit_errors);
    CHECK(a.bits == b.bits);
    SECTION("independent of the thread count") {
        auto c = montecarlo::simulate_ber(cfg, 500, 10000000, 3);
        CHECK(c.bit_errors == a.bit_errors);
        CHECK(c.bits == a.bits);
    }
    SECTION("different seeds give different streams") {
        SystemConfig other = cfg;
        other.seed = cfg.seed + 1;
        auto c = montecarlo::simulate_ber(other, 500, 10000000);
        CHECK(c.bit_errors != a.bit_errors);
    }
    CHECK(a.ber == Catch::Approx(static_cast<double>(a.bit_errors) / a.bits));
}

TEST_CASE("no harvested power drives the second hop to coin flipping") {
    SystemConfig cfg = defaults_ps(30.0);
    cfg.eh.eta = 0.0;
    auto est = montecarlo::simulate_ber(cfg, 2000, 2000000);
    CHECK(est.ber >= 0.4);
}

TEST_CASE("simulation agrees with the analytic bound near BER 1e-2") {
    // PS defaults cross 1e-2 a little above 40 dB
    SystemConfig cfg = defaults_ps(40.0);
    auto analytic = analytic::ber_upper_bound(cfg, EhModel::L);
    auto est = montecarlo::simulate_ber(cfg, 3000, 50000000);
    CHECK(std::abs(est.ber - analytic.ber) < 3.0 * est.half_width_95 +
                                                 0.06 * analytic.ber);
}

TEST_CASE("simulated BER never exceeds the union bound meaningfully") {
    for (double ps : {10.0, 25.0, 40.0}) {
        SystemConfig cfg = defaults_ps(ps);
        auto bound = analytic::ber_upper_bound(cfg, EhModel::L);
        auto est = montecarlo::simulate_ber(cfg, 2000, 20000000);
        CHECK(est.ber <= bound.ber + 3.0 * est.half_width_95 + 0.06 * bound.ber);
    }
}

TEST_CASE("saturating model floors while the linear model keeps improving") {
    SystemConfig cfg = defaults_ps(60.0);
    cfg.eh.model = EhModel::NL;
    auto nl60 = montecarlo::simulate_ber(cfg, 3000, 30000000);
    SystemConfig cfg70 = cfg;
    cfg70.ps_db = 70.0;
    auto nl70 = montecarlo::simulate_ber(cfg70, 3000, 30000000);
    CHECK(std::abs(nl70.ber - nl60.ber) <
          0.1 * nl60.ber + 3.0 * (nl60.half_width_95 + nl70.half_width_95));
}

TEST_CASE("contract errors") {
    SystemConfig cfg = defaults_ps(20.0);
    CHECK_THROWS_AS(montecarlo::simulate_ber(cfg, 100, 0), ConfigError);
}
