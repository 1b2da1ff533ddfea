#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "spinwire/channel_states.hpp"
#include "spinwire/ed_oracle.hpp"
#include "spinwire/optimizer.hpp"
#include "spinwire/propagator.hpp"
#include "spinwire/spectrum.hpp"

using namespace spinwire;
using cplx = std::complex<double>;

TEST_CASE("phased sum matches a direct evaluation") {
    Eigen::VectorXd omega(5), weight(5);
    omega << 0.3, -1.1, 2.2, 0.05, -0.6;
    weight << 0.2, 0.3, 0.1, 0.25, 0.15;
    for (double t : {0.0, 0.9, 13.7, -4.2}) {
        cplx direct = 0.0;
        for (int i = 0; i < 5; ++i) direct += weight[i] * std::polar(1.0, -omega[i] * t);
        CHECK(std::abs(phased_sum(omega, weight, t) - direct) < 1e-15);
    }
}

TEST_CASE("modulus scan agrees with pointwise sums") {
    Spectrum sp = solve_spectrum(mirror_config(51, 0.5556));
    const double t0 = 40.0;
    const double dt = 0.037;
    const int count = 2500;  // crosses one re-synchronization boundary
    Eigen::VectorXd scan = modulus_scan(sp.omega, sp.weight, t0, dt, count);
    REQUIRE(scan.size() == count);
    for (int j = 0; j < count; j += 97) {
        const double direct = std::abs(phased_sum(sp.omega, sp.weight, t0 + j * dt));
        CHECK(scan[j] == doctest::Approx(direct).epsilon(1e-11));
    }
}

TEST_CASE("transfer weights alternate in sign") {
    Spectrum sp = solve_spectrum(mirror_config(9, 0.7));
    Eigen::VectorXd w = transfer_weights(sp);
    for (int n = 0; n < w.size(); ++n) {
        CHECK(w[n] == (n % 2 == 0 ? sp.weight[n] : -sp.weight[n]));
        CHECK((n % 2 == 0 ? w[n] : -w[n]) > 0.0);
    }
}

TEST_CASE("amplitude vanishes at t = 0 and return starts at unity") {
    Spectrum sp = solve_spectrum(mirror_config(51, 0.5556));
    CHECK(transition_amplitude(sp, 0.0).u < 1e-12);
    CHECK(std::abs(return_amplitude(sp, 0.0) - 1.0) < 1e-12);
}

TEST_CASE("analytic-weight and eigenbasis paths agree") {
    EigenBasis basis = solve_eigenbasis(mirror_config(13, 0.5, 0.2));
    for (double t : {0.7, 5.3, 16.1}) {
        AmplitudeSample a = transition_amplitude(basis.spectrum, t);
        AmplitudeSample b = transition_amplitude(basis, t);
        CHECK(std::abs(std::polar(a.u, a.alpha) - std::polar(b.u, b.alpha)) < 1e-12);
        CHECK(std::abs(return_amplitude(basis.spectrum, t) - return_amplitude(basis, t)) <
              1e-12);
    }
}

TEST_CASE("propagator rows form a unitary matrix") {
    CouplingConfig cfg{10, 0.45, 0.3, 0.5};  // tilted endpoints, x = 0.4
    EigenBasis basis = solve_eigenbasis(cfg);
    const int m = basis.spectrum.m();
    const double t = 7.9;
    Eigen::MatrixXcd u(m, m);
    for (int i = 0; i < m; ++i) u.row(i) = propagator_row(basis, t, i).transpose();
    CHECK((u * u.adjoint() - Eigen::MatrixXcd::Identity(m, m)).norm() < 1e-10);
    CHECK_THROWS_AS(propagator_row(basis, 0.0, m), InvalidConfig);
}

TEST_CASE("endpoint amplitude matches exact diagonalization") {
    CouplingConfig tilted{4, 0.7, 0.3, 0.45};
    EigenBasis basis = solve_eigenbasis(tilted);
    EdSystem system = ed_system(tilted);
    for (double t : {0.4, 2.9, 7.3, 18.5}) {
        AmplitudeSample s = transition_amplitude(basis, t);
        CHECK(std::abs(std::polar(s.u, s.alpha) - ed_amplitude(system, t)) < 1e-10);
    }

    CouplingConfig mirror{4, 0.7, 0.3, 0.3};
    Spectrum sp = solve_spectrum(mirror);
    EdSystem msys = ed_system(mirror);
    for (double t : {0.4, 2.9, 7.3, 18.5}) {
        AmplitudeSample s = transition_amplitude(sp, t);
        CHECK(std::abs(std::polar(s.u, s.alpha) - ed_amplitude(msys, t)) < 1e-10);
    }
}

TEST_CASE("leakage and magnetization match exact diagonalization") {
    CouplingConfig cfg{4, 0.6, 0.25, 0.25};
    EigenBasis basis = solve_eigenbasis(cfg);
    EdSystem system = ed_system(cfg);

    for (ChannelKind kind : {ChannelKind::Neel, ChannelKind::GroundState}) {
        ChannelInit init{kind, cfg.h};
        Eigen::MatrixXd corr = correlation_matrix(init, cfg.n_chain);
        Eigen::VectorXcd chi = channel_state(init, cfg.n_chain);
        CHECK(channel_contribution(basis, corr, 0.0, basis.spectrum.m() - 1) < 1e-14);

        for (double t : {0.8, 3.1, 9.4}) {
            CHECK(leakage_v(basis, corr, -0.3, t) ==
                  doctest::Approx(ed_leakage(system, chi, -0.3, t)).epsilon(1e-10));

            // Pure endpoints: A up, B down.
            Eigen::VectorXcd state = composite_state(1, chi, 0);
            Eigen::VectorXd occ = ed_occupations(system, state, t);
            Eigen::VectorXd sz = magnetization_profile(basis, corr, 1.0, -1.0, t);
            CHECK((sz - (2.0 * occ.array() - 1.0).matrix()).norm() < 1e-10);
            CHECK(sz.sum() ==
                  doctest::Approx(corr.trace() * 2.0 - cfg.n_chain).epsilon(1e-10));
        }
    }
}

TEST_CASE("partial sums build up the full amplitude") {
    Spectrum sp = solve_spectrum(mirror_config(51, 0.5556));
    ArrivalPoint arrival = find_arrival_time(sp);
    Eigen::VectorXd partial = partial_amplitude_sums(sp, arrival.t_star);
    REQUIRE(partial.size() == 26);
    CHECK(partial[0] == doctest::Approx(sp.weight[25]).epsilon(1e-13));
    CHECK(partial[25] ==
          doctest::Approx(transition_amplitude(sp, arrival.t_star).u).epsilon(1e-12));

    Spectrum even = solve_spectrum(mirror_config(8, 0.5));
    CHECK_THROWS_AS(partial_amplitude_sums(even, 1.0), InvalidConfig);
}

TEST_CASE("tilted and malformed inputs are rejected") {
    Spectrum tilted = solve_spectrum({6, 0.5, 0.0, 0.2});
    CHECK_THROWS_AS(transition_amplitude(tilted, 1.0), InvalidConfig);
    CHECK_THROWS_AS(return_amplitude(tilted, 1.0), InvalidConfig);

    EigenBasis basis = solve_eigenbasis(mirror_config(8, 0.5));
    Eigen::MatrixXd corr = Eigen::MatrixXd::Zero(5, 5);  // chain has N = 6
    CHECK_THROWS_AS(channel_contribution(basis, corr, 1.0, 0), InvalidConfig);
    Eigen::MatrixXd ok = Eigen::MatrixXd::Zero(6, 6);
    CHECK_THROWS_AS(leakage_v(basis, ok, 1.5, 1.0), InvalidConfig);
    CHECK_THROWS_AS(magnetization_profile(basis, ok, 0.0, -2.0, 1.0), InvalidConfig);
}
