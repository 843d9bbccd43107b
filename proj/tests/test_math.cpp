// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "ehlink/math/gamma.hpp"
#include "ehlink/math/quadrature.hpp"

using namespace ehlink;

TEST_CASE("complex log-gamma against reference points") {
    struct Case {
        std::complex<double> w, want;
    };
    // reference values from 30-digit arithmetic
    const Case cases[] = {
        {{0.35, 5.0}, {-7.1762297232273774, 2.8176658808377746}},
        {{0.35, 0.05}, {0.9231339237634550, -0.1475708335921283}},
        {{12.0, 0.0}, {17.502307845873886, 0.0}},
        {{0.5, 40.0}, {-61.912914538591192, 107.55621986920906}},
        {{-2.5, 1.0}, {-2.3441906524655926, -8.3041279866579259}},
    };
    for (const auto& c : cases) {
        auto got = math::log_gamma(c.w);
        CHECK(got.real() == Catch::Approx(c.want.real()).epsilon(1e-12));
        // imaginary part is branch-ambiguous modulo 2*pi
        double di = std::remainder(got.imag() - c.want.imag(), 2.0 * M_PI);
        CHECK(std::abs(di) < 1e-12 * (1.0 + std::abs(c.want.imag())));
    }
}

TEST_CASE("adaptive Gauss-Kronrod on analytic integrals") {
    auto r = math::integrate([](double x) { return x * x * x; }, 0.0, 1.0, 1e-13);
    CHECK(r.value == Catch::Approx(0.25).epsilon(1e-13));
    r = math::integrate([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12);
    CHECK(r.value == Catch::Approx(2.0).epsilon(1e-12));
    // narrow feature found by subdivision
    r = math::integrate([](double x) { return std::exp(-1e4 * (x - 0.3) * (x - 0.3)); },
                        0.0, 1.0, 1e-10);
    CHECK(r.value == Catch::Approx(std::sqrt(M_PI) / 100.0).epsilon(1e-9));
    // semi-infinite transform: int_0^inf e^-x = 1, int_1^inf x^-2 = 1
    r = math::integrate_to_inf([](double x) { return std::exp(-x); }, 0.0, 1e-12);
    CHECK(r.value == Catch::Approx(1.0).epsilon(1e-11));
    r = math::integrate_to_inf([](double x) { return 1.0 / (x * x); }, 1.0, 1e-12);
    CHECK(r.value == Catch::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("Gauss-Chebyshev rule") {
    SECTION("sine over (0, pi) at chi = 20") {
        double got = math::gauss_chebyshev([](double x) { return std::sin(x); }, 0.0, M_PI, 20);
        CHECK(std::abs(got - 2.0) < 1e-3);
    }
    SECTION("constant integrand reproduces the weight-sum identity") {
        // sum_i (pi/chi) sqrt(1-y_i^2) = (pi/chi) / sin(pi/(2 chi)) exactly, so a
        // constant c integrates to c(b-a) (pi/(2 chi))/sin(pi/(2 chi)); the
        // deviation from c(b-a) is pure weight discretization.
        for (int chi : {2, 5, 20, 64}) {
            const double c = 3.25, a = -1.0, b = 5.0;
            double got = math::gauss_chebyshev([&](double) { return c; }, a, b, chi);
            double wfactor = (M_PI / (2.0 * chi)) / std::sin(M_PI / (2.0 * chi));
            CHECK(got == Catch::Approx(c * (b - a) * wfactor).epsilon(1e-12));
        }
        // discretization vanishes with chi
        double g20 = math::gauss_chebyshev([](double) { return 1.0; }, 0.0, 1.0, 20);
        CHECK(std::abs(g20 - 1.0) < 2e-3);
    }
    SECTION("rejects bad arguments") {
        CHECK_THROWS_AS(math::gauss_chebyshev([](double) { return 1.0; }, 0.0, 1.0, 0),
                        std::invalid_argument);
        CHECK_THROWS_AS(math::gauss_chebyshev([](double) { return 1.0; }, 1.0, 1.0, 5),
                        std::invalid_argument);
    }
}
