#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "spinwire/channel_states.hpp"
#include "spinwire/ed_oracle.hpp"
#include "spinwire/propagator.hpp"
#include "spinwire/spectrum.hpp"
#include "spinwire/transfer_metrics.hpp"

using namespace spinwire;
using cplx = std::complex<double>;

TEST_CASE("three-site amplitude has a closed form") {
    // Uniform coupling on A-1-B gives U_BA(t) = (cos(t/sqrt2) - 1) / 2,
    // perfect transfer at t = sqrt(2) pi.
    EdSystem system = ed_system({1, 1.0, 0.0, 0.0});
    for (double t : {0.0, 0.8, 2.5, 4.0, 7.7}) {
        const cplx expected = 0.5 * std::cos(t / std::sqrt(2.0)) - 0.5;
        CHECK(std::abs(ed_amplitude(system, t) - expected) < 1e-12);
    }
    const double t_perfect = std::sqrt(2.0) * 3.14159265358979323846;
    CHECK(std::abs(ed_amplitude(system, t_perfect)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hamiltonian conserves the excitation number") {
    CouplingConfig cfg{3, 0.8, 0.2, 0.4};
    Eigen::MatrixXd h = build_hamiltonian(cfg);
    CHECK(h.rows() == 32);
    CHECK((h - h.transpose()).norm() == 0.0);
    for (int a = 0; a < 32; ++a)
        for (int b = 0; b < 32; ++b)
            if (std::popcount(unsigned(a)) != std::popcount(unsigned(b)))
                CHECK(h(a, b) == 0.0);
    // Vacuum energy (N h + 2 h0) / 2.
    CHECK(h(0, 0) == doctest::Approx(0.5 * (3 * 0.2 + 2 * 0.4)).epsilon(1e-15));
}

TEST_CASE("single-excitation sector reproduces the mode frequencies") {
    CouplingConfig cfg{6, 0.55, 0.2, 0.3};  // tilted: x = 0.2
    const int m = cfg.m();
    Eigen::MatrixXd h = build_hamiltonian(cfg);
    Eigen::MatrixXd sector(m, m);
    for (int l = 0; l < m; ++l)
        for (int lp = 0; lp < m; ++lp) sector(l, lp) = h(1 << l, 1 << lp);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sector);

    Spectrum sp = solve_spectrum(cfg);
    for (int n = 0; n < m; ++n)
        CHECK(sp.omega[n] ==
              doctest::Approx(solver.eigenvalues()[n] - h(0, 0)).epsilon(1e-10));
}

TEST_CASE("evolution preserves norm, energy and parity") {
    CouplingConfig cfg{4, 0.7, 0.3, 0.45};
    EdSystem system = ed_system(cfg);
    Eigen::MatrixXd h = build_hamiltonian(cfg);
    Eigen::VectorXcd state = composite_state(1, channel_state({ChannelKind::Neel, 0.0}, 4), 0);
    const double norm0 = state.norm();
    const double energy0 = (state.adjoint() * h * state)(0).real();
    const double parity0 = measured_parity(state);
    CHECK(parity0 == doctest::Approx(-1.0).epsilon(1e-12));  // three spins up

    for (double t : {3.7, 11.3}) {
        Eigen::VectorXcd evolved = system.evolve(state, t);
        CHECK(evolved.norm() == doctest::Approx(norm0).epsilon(1e-12));
        CHECK((evolved.adjoint() * h * evolved)(0).real() ==
              doctest::Approx(energy0).epsilon(1e-10));
        CHECK(measured_parity(evolved) == doctest::Approx(parity0).epsilon(1e-10));
    }
}

TEST_CASE("occupations at time zero match the preparation") {
    CouplingConfig cfg{4, 0.6, 0.25, 0.25};
    EdSystem system = ed_system(cfg);
    ChannelInit init{ChannelKind::GroundState, cfg.h};
    Eigen::VectorXcd chi = channel_state(init, 4);
    Eigen::VectorXd occ = ed_occupations(system, composite_state(1, chi, 0), 0.0);
    CHECK(occ[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(occ[5] == doctest::Approx(0.0).epsilon(1e-12));
    Eigen::MatrixXd corr = correlation_matrix(init, 4);
    for (int j = 0; j < 4; ++j)
        CHECK(occ[j + 1] == doctest::Approx(corr(j, j)).epsilon(1e-10));

    const double total0 = occ.sum();
    CHECK(ed_occupations(system, composite_state(1, chi, 0), 6.2).sum() ==
          doctest::Approx(total0).epsilon(1e-12));
}

TEST_CASE("measured map starts as a replacement map") {
    CouplingConfig cfg{4, 0.6, 0.25, 0.25};
    MeasuredMap map = ed_transfer_map(cfg, {ChannelKind::Neel, 0.0}, -0.4, 0.0);
    CHECK(map.t11() == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(map.t44() == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(map.v() == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(std::abs(map.t22()) < 1e-12);
}

TEST_CASE("measured map matches the fermionic map") {
    CouplingConfig cfg{6, 0.7, 0.25, 0.25};
    EdSystem system = ed_system(cfg);
    EigenBasis basis = solve_eigenbasis(cfg);
    const double szB = -0.3;

    for (ChannelKind kind :
         {ChannelKind::Neel, ChannelKind::GroundState, ChannelKind::SingletSeries}) {
        ChannelInit init{kind, cfg.h};
        Eigen::MatrixXd corr = correlation_matrix(init, cfg.n_chain);
        const int p = parity(init, cfg.n_chain);
        for (int step = 0; step < 20; ++step) {
            const double t = 27.0 * step / 19.0;
            AmplitudeSample s = transition_amplitude(basis, t);
            const double v = leakage_v(basis, corr, szB, t);
            TransferMap fermionic = transfer_map(s.u, s.alpha, v, p, szB);
            MeasuredMap measured = ed_transfer_map(system, init, szB, t);
            CHECK((measured.t - fermionic.matrix()).norm() < 1e-8);
        }
    }
}

TEST_CASE("leakage stays a probability") {
    CouplingConfig cfg{4, 0.7, 0.3, 0.3};
    EdSystem system = ed_system(cfg);
    Eigen::VectorXcd chi = channel_state({ChannelKind::PolarizedUp, 0.0}, 4);
    for (double t : {0.0, 1.9, 6.3}) {
        const double v = ed_leakage(system, chi, -0.2, t);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    CHECK(ed_leakage(system, chi, -1.0, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(ed_leakage(system, chi, -2.0, 1.0), InvalidInit);
}

TEST_CASE("size limits and malformed states are rejected") {
    CHECK_THROWS_AS(build_hamiltonian({11, 0.5, 0.0, 0.0}), SizeLimit);
    CHECK_THROWS_AS(channel_state({ChannelKind::PolarizedDown, 0.0}, 13), SizeLimit);
    CHECK_THROWS_AS(ed_transfer_map(CouplingConfig{9, 0.5, 0.0, 0.0},
                                    {ChannelKind::PolarizedDown, 0.0}, -1.0, 1.0),
                    SizeLimit);
    Eigen::VectorXcd odd_sized = Eigen::VectorXcd::Zero(6);
    CHECK_THROWS_AS(composite_state(0, odd_sized, 0), InvalidInit);

    EdSystem system = ed_system({2, 0.5, 0.0, 0.0});
    Eigen::VectorXcd wrong = Eigen::VectorXcd::Zero(8);
    CHECK_THROWS_AS(system.evolve(wrong, 1.0), InvalidInit);
}
