#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "spinwire/asymptotics.hpp"
#include "spinwire/numerics.hpp"

using namespace spinwire;

TEST_CASE("tau = 0 collapses to the closed form") {
    CHECK(u_infinity(0.0, 1.0) == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-6));
    double worst = 0.0;
    for (int i = 0; i <= 98; ++i) {
        const double sigma = 0.1 + (5.0 - 0.1) * i / 98.0;
        const double gap = std::abs(u_infinity(0.0, sigma) -
                                    2.0 * sigma * std::exp(-sigma));
        worst = std::max(worst, gap);
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("z-form matches the infinite-domain x-form") {
    // Same integral with x = tan z: (2/pi) Int_0^inf cos(tau x^3 - sigma x
    // + 2 atan x) / (1 + x^2) dx.  Chunks are sized to a few oscillations so
    // the Simpson error estimate cannot alias them away, and the remainder
    // past the cut is replaced by its leading integration-by-parts term.
    for (double tau : {0.01, 0.0325, 0.055, 0.0775, 0.1}) {
        for (double sigma : {0.5, 1.0, 1.5, 2.0, 2.5}) {
            const double cut = 80.0;
            auto phi = [&](double x) {
                return tau * x * x * x - sigma * x + 2.0 * std::atan(x);
            };
            auto dphi = [&](double x) {
                return 3.0 * tau * x * x - sigma + 2.0 / (1.0 + x * x);
            };
            auto f = [&](double x) { return std::cos(phi(x)) / (1.0 + x * x); };
            double x_form = 0.0;
            double a = 0.0;
            while (a < cut) {
                const double slope = std::max({std::abs(dphi(a)),
                                               std::abs(dphi(a + 1.0)), 2.0});
                const double b = std::min(cut, a + 12.0 / slope);
                x_form += adaptive_simpson(f, a, b, 3e-11);
                a = b;
            }
            x_form -= std::sin(phi(cut)) / ((1.0 + cut * cut) * dphi(cut));
            x_form *= 2.0 / 3.14159265358979323846;
            CHECK(u_infinity(tau, sigma) == doctest::Approx(x_form).epsilon(1e-6));
        }
    }
}

TEST_CASE("quadrature rejects bad arguments") {
    CHECK_THROWS_AS(u_infinity(-0.01, 1.0), InvalidConfig);
    CHECK_THROWS_AS(u_infinity(0.02, 1.0, 0.0), InvalidConfig);
    CHECK_THROWS_AS(maximize_u_infinity(-1.0), InvalidConfig);
}

TEST_CASE("rescaled amplitude peaks at the known point") {
    CHECK(u_infinity(0.02483, 1.2152) == doctest::Approx(0.84690).epsilon(1e-4));

    AsymptoticOptimum opt = maximize_u_infinity();
    CHECK(std::abs(opt.tau - 0.02483) < 1e-3);
    CHECK(std::abs(opt.sigma - 1.2152) < 1e-3);
    CHECK(std::abs(opt.u_max - 0.84690) < 2e-4);
    CHECK(std::abs(opt.delta_coeff - 0.530) < 0.005);
    CHECK(std::abs(opt.s_coeff - 2.29) < 0.02);
    CHECK(std::abs(opt.j0_coeff - 1.030) < 0.01);
    CHECK(opt.u_max > 2.0 / std::exp(1.0));
    CHECK(opt.u_max < 1.0);

    // The located maximum is insensitive to halving the quadrature tolerance.
    AsymptoticOptimum finer = maximize_u_infinity(5e-9);
    CHECK(std::abs(finer.u_max - opt.u_max) <= 1e-4);
}

TEST_CASE("finite sizes approach the limit from above") {
    std::vector<ConsistencyRow> rows = finite_size_consistency({25, 51, 101});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].u_opt == doctest::Approx(0.972).epsilon(0.002));
    for (const ConsistencyRow& row : rows) {
        CHECK(row.u_gap > 0.0);
        CHECK(row.u_gap == doctest::Approx(row.u_opt - 0.84690).epsilon(1e-12));
    }
    CHECK(rows[0].u_gap > rows[1].u_gap);
    CHECK(rows[1].u_gap > rows[2].u_gap);
    // The scaled width heads toward its 0.530 plateau.
    CHECK(rows[2].delta_scaled == doctest::Approx(0.64).epsilon(0.1));
}
