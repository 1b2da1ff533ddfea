#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "spinwire/optimizer.hpp"
#include "spinwire/propagator.hpp"
#include "spinwire/spectrum.hpp"

using namespace spinwire;

TEST_CASE("arrival search recovers perfect transfer at m = 3") {
    // j0 = 1 on three sites transfers exactly: |U(t)| = |cos(t/sqrt2) - 1|/2
    // reaches 1 at t = sqrt(2) pi (2k+1); the wide default window holds
    // several of these equal peaks, so compare modulo the period.
    Spectrum sp = solve_spectrum(mirror_config(3, 1.0));
    ArrivalPoint arrival = find_arrival_time(sp);
    const double period = 2.0 * std::sqrt(2.0) * 3.14159265358979;
    const double folded = std::fmod(arrival.t_star, period);
    CHECK(folded == doctest::Approx(0.5 * period).epsilon(1e-4));
    CHECK(arrival.u_star == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("arrival point for the 51-site table row") {
    Spectrum sp = solve_spectrum(mirror_config(51, 0.5556));
    ArrivalPoint arrival = find_arrival_time(sp);
    CHECK(arrival.u_star == doctest::Approx(0.9535).epsilon(2e-4));
    CHECK(arrival.t_star == doctest::Approx(58.19).epsilon(1e-3));

    // The table convention normalizes the dominant weights; the exact-weight
    // amplitude at the same instant sits slightly below it.
    const double exact = transition_amplitude(sp, arrival.t_star).u;
    CHECK(std::abs(arrival.u_star - exact) < 6e-3);
    CHECK(arrival.u_star > exact);

    ArrivalPoint windowed = find_arrival_time(sp, 5.0);
    CHECK(windowed.t_star == doctest::Approx(arrival.t_star).epsilon(1e-6));
}

TEST_CASE("dispersion-flattening width") {
    const double d0 = delta_zero(49);
    CHECK(d0 == doctest::Approx(0.3944).epsilon(1.5e-3));
    // Fixed point residual.
    const double t_star = 52.0 + 2.0 * (1.0 - d0) / d0;
    CHECK(d0 == doctest::Approx(std::cbrt(4.0 * (1.0 - d0 * d0) / t_star)).epsilon(1e-10));
    CHECK(delta_zero(999) < d0);
    CHECK_THROWS_AS(delta_zero(2), InvalidConfig);
}

TEST_CASE("optimal width for 51 sites") {
    OptimalPoint point = optimize_delta(49);
    CHECK(point.n_total == 51);
    CHECK(point.delta_opt == doctest::Approx(0.182).epsilon(0.02));
    CHECK(point.j0_opt == doctest::Approx(0.556).epsilon(0.01));
    CHECK(point.u_opt == doctest::Approx(0.953).epsilon(0.002));
    CHECK(point.t_star == doctest::Approx(58.19).epsilon(2e-3));
    CHECK(point.delta0 == doctest::Approx(0.3944).epsilon(1.5e-3));
    CHECK(point.reading_time > 0.0);

    OptimalPoint again = optimize_delta(49);
    CHECK(again.delta_opt == point.delta_opt);
    CHECK(again.t_star == point.t_star);

    CHECK_THROWS_AS(optimize_delta(4), InvalidConfig);
}

TEST_CASE("optimal width for 251 sites") {
    OptimalPoint point = optimize_delta(249);
    CHECK(point.u_opt == doctest::Approx(0.916).epsilon(0.002));
    CHECK(point.delta_opt == doctest::Approx(0.098).epsilon(0.02));
    CHECK(point.t_star == doctest::Approx(264.0).epsilon(4e-3));
}

TEST_CASE("optimum table sizes are validated") {
    CHECK_THROWS_AS(table_one({8}), InvalidConfig);
    CHECK_THROWS_AS(table_one({5}), InvalidConfig);
    std::vector<OptimalPoint> rows = table_one({25, 51});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n_total == 25);
    CHECK(rows[0].u_opt == doctest::Approx(0.972).epsilon(0.002));
    CHECK(rows[1].n_total == 51);
    CHECK(rows[0].u_opt > rows[1].u_opt);
}

TEST_CASE("reading time tracks the inverse width") {
    OptimalPoint point = optimize_delta(249);
    Spectrum sp = solve_spectrum(mirror_config(251, point.j0_opt));
    ReadingTime rt = reading_time(sp, point.t_star, 0.1);
    CHECK(rt.estimate == 1.0 / sp.delta);
    CHECK(rt.measured / rt.estimate > 0.5);
    CHECK(rt.measured / rt.estimate < 2.0);

    // Narrower drops give narrower plateaus.
    const double w01 = reading_time(sp, point.t_star, 0.01).measured;
    const double w05 = reading_time(sp, point.t_star, 0.05).measured;
    CHECK(w01 < w05);
    CHECK(w05 < rt.measured);

    CHECK_THROWS_AS(reading_time(sp, point.t_star, 0.2), InvalidConfig);
    CHECK_THROWS_AS(reading_time(sp, point.t_star, 0.0), InvalidConfig);
}

TEST_CASE("reading time scales with the cube root of the length") {
    double scaled_prev = 0.0;
    for (int n : {249, 999}) {
        OptimalPoint point = optimize_delta(n);
        Spectrum sp = solve_spectrum(mirror_config(n + 2, point.j0_opt));
        const double width = reading_time(sp, point.t_star, 0.1).measured;
        const double scaled = width / std::cbrt(double(n));
        if (scaled_prev != 0.0)
            CHECK(scaled == doctest::Approx(scaled_prev).epsilon(0.15));
        scaled_prev = scaled;
    }
}

TEST_CASE("asymptotic coupling fit") {
    CHECK(asymptotic_coupling(49) == doctest::Approx(0.5384).epsilon(1e-3));
    // Matches the directly optimized coupling at the few-percent level.
    CHECK(asymptotic_coupling(49) == doctest::Approx(0.556).epsilon(0.05));
    CHECK_THROWS_AS(asymptotic_coupling(0), InvalidConfig);
}

TEST_CASE("long-chain scaling constants") {
    OptimalPoint point = optimize_delta(9999);
    const double n = 9999.0;
    const double s = (point.t_star - n - 3.0) / std::cbrt(n);
    CHECK(std::abs(s - 2.29) < 0.23);
    CHECK(std::abs(point.delta_opt * std::cbrt(n) - 0.530) < 0.0265);
    CHECK(point.u_opt > 0.8469);
    CHECK(point.u_opt < 0.88);
}
