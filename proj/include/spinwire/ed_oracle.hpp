#pragma once

// Brute-force many-body oracle. The full chain of m = n_chain + 2 spins is
// held as a dense state over 2^m basis vectors; bit l of a basis index is
// site l, a set bit meaning spin up. Site 0 is qubit A, site m-1 is qubit B.

#include <complex>

#include <Eigen/Dense>

#include "spinwire/channel_states.hpp"
#include "spinwire/spectrum.hpp"

namespace spinwire {

Eigen::MatrixXd build_hamiltonian(const CouplingConfig& config);

struct EdSystem {
    CouplingConfig config;
    Eigen::VectorXd energies;
    Eigen::MatrixXd modes;

    int sites() const { return config.m(); }
    Eigen::Index dim() const { return energies.size(); }
    Eigen::VectorXcd evolve(const Eigen::VectorXcd& state, double t) const;
};

EdSystem ed_system(const CouplingConfig& config);

// Pure channel state of dimension 2^n_chain.
Eigen::VectorXcd channel_state(const ChannelInit& init, int n_chain);

// <c^dag_j c_j'> on a chain state, Jordan-Wigner strings included.
Eigen::MatrixXcd measured_correlation(const Eigen::VectorXcd& chi, int n_chain);

// Expectation of prod_j(-sigma^z_j) over every site of the state.
double measured_parity(const Eigen::VectorXcd& chi);

// Full-system ket |a_bit at A> x chi x |b_bit at B>.
Eigen::VectorXcd composite_state(int a_bit, const Eigen::VectorXcd& chi, int b_bit);

// Single-excitation transition A -> B with the vacuum phase divided out;
// equals the (B, A) entry of the one-particle propagator.
std::complex<double> ed_amplitude(const EdSystem& system, double t);

// Per-site occupation <n_l> after evolving the given ket.
Eigen::VectorXd ed_occupations(const EdSystem& system, const Eigen::VectorXcd& state, double t);

// P(B up at time t) with A down, the channel in chi, and B drawn from the
// diagonal qubit state with <sigma^z> = szB.
double ed_leakage(const EdSystem& system, const Eigen::VectorXcd& chi, double szB, double t);

struct MeasuredMap {
    Eigen::Matrix4cd t;

    double t11() const { return t(0, 0).real(); }
    std::complex<double> t22() const { return t(1, 1); }
    double t44() const { return t(3, 3).real(); }
    double v() const { return t(0, 3).real(); }
};

MeasuredMap ed_transfer_map(const EdSystem& system, const ChannelInit& init, double szB,
                            double t);
MeasuredMap ed_transfer_map(const CouplingConfig& config, const ChannelInit& init, double szB,
                            double t);

}  // namespace spinwire
