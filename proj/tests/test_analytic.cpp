// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ehlink/analytic.hpp"

using namespace ehlink;
using namespace ehlink::analytic;
using channel::Link;

namespace {

SystemConfig defaults_ps() {
    SystemConfig cfg;
    cfg.eh.mode = EhMode::PS;
    cfg.eh.rho = 0.8;
    cfg.eh.eta = 0.7;
    cfg.eh.n_r = 4;
    cfg.eh.p_th = db_to_linear(40.0);
    cfg.ps_db = 30.0;
    return cfg;
}

} // namespace

TEST_CASE("ber_overall") {
    CHECK(ber_overall(0.0, 0.0, 2) == 0.0);
    CHECK(ber_overall(0.1, 0.0, 2) == Catch::Approx(0.05));
    CHECK(ber_overall(0.01, 0.01, 2) == Catch::Approx((1.0 - 0.9801) / 2.0));
    CHECK(ber_overall(1.5, 0.9, 1) == 0.5);   // clamped on both sides
    CHECK(ber_overall(-0.2, 0.0, 2) == 0.0);
}

TEST_CASE("S->R SER: frozen reference values and dual path") {
    SystemConfig cfg = defaults_ps();
    auto theta = channel::gamma_gamma_sum_params(Link::SR, cfg);

    SECTION("30 dB reference value (independent-quadrature oracle)") {
        auto sr = ser_sr_uniform(cfg.mod, theta, cfg.geom_sr);
        CHECK(sr.route == EvalRoute::closed_form);
        CHECK(sr.value == Catch::Approx(9.9912111758e-04).epsilon(1e-6));
    }
    SECTION("uniform vs 2-D quadrature at 20 dB within 1e-5") {
        SystemConfig c = cfg;
        c.ps_db = 20.0;
        auto th = channel::gamma_gamma_sum_params(Link::SR, c);
        auto sr = ser_sr_uniform(c.mod, th, c.geom_sr);
        double quad = ser_sr_uniform_quad(c.mod, th, c.geom_sr);
        CHECK(std::abs(sr.value - quad) <= 1e-5 * quad);
    }
    SECTION("deterministic vs 1-D quadrature within 1e-6") {
        auto sr = ser_sr_deterministic(cfg.mod, theta, 2.0, cfg.geom_sr.v);
        double quad = ser_sr_deterministic_quad(cfg.mod, theta, 2.0, cfg.geom_sr.v);
        CHECK(std::abs(sr.value - quad) <= 1e-6 * quad);
    }
    SECTION("unit distance leaves the conditional value unchanged") {
        auto a = ser_sr_deterministic(cfg.mod, theta, 1.0, 2.7);
        auto b = ser_sr_deterministic(cfg.mod, theta, 1.0, 0.9);
        CHECK(a.value == Catch::Approx(b.value).epsilon(1e-12));
    }
    SECTION("zero-power limit approaches a/2") {
        ModulationParams mod;
        mod.a = 1.0;
        mod.b = 0.5;
        SystemConfig c = cfg;
        c.ps_db = -120.0;
        auto th = channel::gamma_gamma_sum_params(Link::SR, c);
        auto sr = ser_sr_uniform(mod, th, c.geom_sr);
        CHECK(sr.value == Catch::Approx(0.5).epsilon(1e-3));
    }
    SECTION("monotone nonincreasing in P_s") {
        double prev = 1.0;
        for (double ps = 0.0; ps <= 60.0; ps += 5.0) {
            SystemConfig c = cfg;
            c.ps_db = ps;
            auto th = channel::gamma_gamma_sum_params(Link::SR, c);
            double val = ser_sr_uniform(c.mod, th, c.geom_sr).value;
            CHECK(val <= prev * (1.0 + 1e-9));
            prev = val;
        }
    }
    SECTION("degenerate interval converges to the deterministic value") {
        // the collapsing interval concentrates at its midpoint
        auto th = theta;
        auto det = ser_sr_deterministic(cfg.mod, th, 2.0 + 5e-4, 2.7);
        auto uni = ser_sr_uniform(cfg.mod, th, LinkGeometry::uniform(2.0, 2.0 + 1e-3, 2.7));
        CHECK(uni.value == Catch::Approx(det.value).epsilon(1e-3));
    }
}

TEST_CASE("R->D conditional SER") {
    SystemConfig cfg = defaults_ps();
    const double ybar = cfg.fading.ybar();
    SECTION("matches the nested quadrature at u = 1 within 1e-5") {
        auto c = ser_rd_cond_uniform(cfg.mod, 1.0, ybar, cfg.geom_rd);
        double quad = ser_rd_cond_uniform_quad(cfg.mod, 1.0, ybar, cfg.geom_rd);
        CHECK(std::abs(c.value - quad) <= 1e-5 * quad);
        CHECK(c.value == Catch::Approx(7.4077029280e-01).epsilon(1e-5)); // frozen oracle
    }
    SECTION("decreasing in u; approaches a/2 as u -> 0") {
        ModulationParams mod;
        mod.a = 1.0;
        mod.b = 0.5;
        double prev = 1.0;
        for (double u : {1e-9, 1e-6, 1e-3, 1.0, 1e3, 1e6}) {
            double val = ser_rd_cond_uniform(mod, u, ybar, cfg.geom_rd).value;
            CHECK(val <= prev * (1.0 + 1e-9));
            prev = val;
        }
        CHECK(ser_rd_cond_uniform(mod, 1e-12, ybar, cfg.geom_rd).value ==
              Catch::Approx(0.5).epsilon(1e-3));
    }
    CHECK_THROWS_AS(ser_rd_cond_uniform(cfg.mod, 0.0, ybar, cfg.geom_rd),
                    std::domain_error);
}

TEST_CASE("R->D linear-harvest SER") {
    SystemConfig cfg = defaults_ps();
    const double ybar = cfg.fading.ybar();
    auto x = channel::gamma_gamma_sum_params(Link::RD, cfg);

    SECTION("frozen 30 dB values") {
        auto u = ser_rd_linear_uniform(cfg.mod, x, cfg.geom_sr, cfg.geom_rd, ybar);
        CHECK(u.route == EvalRoute::closed_form);
        CHECK(u.value == Catch::Approx(9.5493091100e-02).epsilon(1e-6));
        const double l = geometry::pathloss(2.0, 2.7);
        auto d = ser_rd_linear_det(cfg.mod, x, l, l, ybar);
        CHECK(d.value == Catch::Approx(9.0556727759e-02).epsilon(1e-6));
    }
    SECTION("uniform dual path within 1e-4 at 30 dB") {
        auto u = ser_rd_linear_uniform(cfg.mod, x, cfg.geom_sr, cfg.geom_rd, ybar);
        double quad = ser_rd_linear_uniform_quad(cfg.mod, x, cfg.geom_sr, cfg.geom_rd, ybar);
        CHECK(std::abs(u.value - quad) <= 1e-4 * quad);
    }
    SECTION("deterministic dual path within 1e-5") {
        const double l = geometry::pathloss(2.0, 2.7);
        auto d = ser_rd_linear_det(cfg.mod, x, l, l, ybar);
        double quad = ser_rd_linear_det_quad(cfg.mod, x, l, l, ybar);
        CHECK(std::abs(d.value - quad) <= 1e-5 * quad);
    }
    SECTION("degenerate interval limit") {
        auto uni = ser_rd_linear_uniform(cfg.mod, x, LinkGeometry::uniform(2.0, 2.0 + 1e-3, 2.7),
                                         LinkGeometry::uniform(2.0, 2.0 + 1e-3, 2.7), ybar);
        const double l = geometry::pathloss(2.0 + 5e-4, 2.7);
        auto det = ser_rd_linear_det(cfg.mod, x, l, l, ybar);
        CHECK(uni.value == Catch::Approx(det.value).epsilon(1e-3));
    }
    SECTION("decreasing in P_s") {
        double prev = 1.0;
        for (double ps = 0.0; ps <= 60.0; ps += 10.0) {
            SystemConfig c = cfg;
            c.ps_db = ps;
            auto xp = channel::gamma_gamma_sum_params(Link::RD, c);
            double val = ser_rd_linear_uniform(c.mod, xp, c.geom_sr, c.geom_rd, ybar).value;
            CHECK(val <= prev * (1.0 + 1e-9));
            prev = val;
        }
    }
}

TEST_CASE("R->D saturating-harvest SER") {
    SystemConfig cfg = defaults_ps();
    const double ybar = cfg.fading.ybar();
    auto x = channel::gamma_gamma_sum_params(Link::RD, cfg);
    const double p_th = cfg.eh.p_th;

    SECTION("uniform: matches adaptive quadrature within 0.5% at chi = 20") {
        auto nl = ser_rd_nl_uniform(cfg.mod, x, cfg.geom_sr, cfg.geom_rd, ybar, p_th, 20);
        double quad = ser_rd_nl_uniform_quad(cfg.mod, x, cfg.geom_sr, cfg.geom_rd, ybar, p_th);
        CHECK(std::abs(nl.value - quad) <= 5e-3 * quad);
    }
    SECTION("saturating never beats linear; equality at low power") {
        for (double ps : {10.0, 30.0, 50.0, 60.0}) {
            SystemConfig c = cfg;
            c.ps_db = ps;
            auto xp = channel::gamma_gamma_sum_params(Link::RD, c);
            double lin = ser_rd_linear_uniform(c.mod, xp, c.geom_sr, c.geom_rd, ybar).value;
            double sat =
                ser_rd_nl_uniform(c.mod, xp, c.geom_sr, c.geom_rd, ybar, p_th, 20).value;
            CHECK(sat >= lin - 5e-3 * lin);
            if (ps <= 10.0) CHECK(sat == Catch::Approx(lin).epsilon(5e-3));
        }
    }
    SECTION("error floor at high power") {
        SystemConfig c60 = cfg, c80 = cfg;
        c60.ps_db = 60.0;
        c80.ps_db = 80.0;
        auto x60 = channel::gamma_gamma_sum_params(Link::RD, c60);
        auto x80 = channel::gamma_gamma_sum_params(Link::RD, c80);
        double s60 = ser_rd_nl_uniform(cfg.mod, x60, cfg.geom_sr, cfg.geom_rd, ybar, p_th, 20).value;
        double s80 = ser_rd_nl_uniform(cfg.mod, x80, cfg.geom_sr, cfg.geom_rd, ybar, p_th, 20).value;
        CHECK(std::abs(s60 - s80) < 1e-4);
    }
    SECTION("harvest cdf is a proper cdf, increasing in the threshold") {
        double prev = 0.0;
        for (double th_db : {0.0, 20.0, 40.0, 60.0}) {
            double j2 = harvest_cdf_uniform(x, cfg.geom_sr, db_to_linear(th_db));
            CHECK(j2 >= prev - 1e-9);
            CHECK(j2 >= -1e-9);
            CHECK(j2 <= 1.0 + 1e-6);
            prev = j2;
        }
        double quad = harvest_cdf_uniform_quad(x, cfg.geom_sr, p_th);
        CHECK(harvest_cdf_uniform(x, cfg.geom_sr, p_th) == Catch::Approx(quad).epsilon(1e-6));
    }
    SECTION("deterministic: series path against quadrature at 40 dB within 0.5%") {
        SystemConfig c = cfg;
        c.ps_db = 40.0;
        auto xp = channel::gamma_gamma_sum_params(Link::RD, c);
        const double l = geometry::pathloss(2.0, 2.7);
        auto nl = ser_rd_nl_det(c.mod, xp, l, l, ybar, p_th, 20);
        CHECK(nl.route == EvalRoute::closed_form); // series numerically healthy here
        double quad = ser_rd_nl_det_quad(c.mod, xp, l, l, ybar, p_th);
        CHECK(std::abs(nl.value - quad) <= 5e-3 * quad);
    }
    SECTION("deterministic: cdf cross-check and low-power fallback") {
        const double l = geometry::pathloss(2.0, 2.7);
        double i2 = harvest_cdf_det(x, l, p_th);
        double i2q = harvest_cdf_det_quad(x, l, p_th);
        CHECK(std::abs(i2 - i2q) <= 1e-6);
        SystemConfig c = cfg;
        c.ps_db = 5.0; // cancellation regime: quadrature route, flagged
        auto xp = channel::gamma_gamma_sum_params(Link::RD, c);
        auto nl = ser_rd_nl_det(c.mod, xp, l, l, ybar, p_th, 20);
        CHECK(nl.route == EvalRoute::fallback);
        double quad = ser_rd_nl_det_quad(c.mod, xp, l, l, ybar, p_th);
        CHECK(nl.value == Catch::Approx(quad).epsilon(1e-12));
    }
    CHECK_THROWS_AS(ser_rd_nl_uniform(cfg.mod, x, cfg.geom_sr, cfg.geom_rd, ybar, p_th, 0),
                    ConfigError);
}

TEST_CASE("end-to-end upper bound") {
    SystemConfig cfg = defaults_ps();
    SECTION("uniform geometry, both models") {
        auto l = ber_upper_bound(cfg, EhModel::L);
        auto nl = ber_upper_bound(cfg, EhModel::NL);
        CHECK(l.ber > 0.0);
        CHECK(l.ber <= 0.5);
        CHECK(nl.ber >= l.ber - 5e-3 * l.ber);
    }
    SECTION("mixed geometries rejected") {
        SystemConfig c = cfg;
        c.geom_sr = LinkGeometry::fixed(2.0);
        CHECK_THROWS_AS(ber_upper_bound(c, EhModel::L), ConfigError);
    }
    SECTION("quadrature twin agrees at defaults") {
        double a = ber_upper_bound(cfg, EhModel::L).ber;
        double b = ber_upper_bound_quad(cfg, EhModel::L);
        CHECK(a == Catch::Approx(b).epsilon(1e-4));
    }
}
