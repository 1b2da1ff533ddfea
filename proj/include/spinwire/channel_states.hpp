#pragma once

// Initial data for the channel segment: the one-body correlation matrix
// <c_j^dag c_j'> and the parity eigenvalue of Prod_j (-sigma_j^z).  Fermion
// occupation follows n_j = S_j^z + 1/2, so spin up means occupied.  Every
// supported initialization has a real symmetric two-point function, so the
// correlation matrix is stored as a real matrix.

#include <Eigen/Core>

#include "spinwire/errors.hpp"

namespace spinwire {

enum class ChannelKind {
    PolarizedDown,  // all spins down, no fermions
    PolarizedUp,    // all spins up
    GroundState,    // free-fermion ground state of the uniform open chain at field h
    Neel,           // up-down-up-down..., starting up
    SingletSeries,  // product of nearest-neighbor singlets, N even
};

struct ChannelInit {
    ChannelKind kind = ChannelKind::PolarizedDown;
    double h = 0.0;  // only GroundState depends on the field
};

// N x N real symmetric matrix with entries <c_j^dag c_j'>; eigenvalues lie
// in [0, 1] and the trace is the fermion number.
Eigen::MatrixXd correlation_matrix(const ChannelInit& init, int n_chain);

// Eigenvalue of the chain parity operator, +1 or -1.  For GroundState the
// value counts strictly negative single-particle energies; exact zero modes
// are left empty.
int parity(const ChannelInit& init, int n_chain);

// Site magnetizations 2 diag(correlation) - 1.
Eigen::VectorXd channel_magnetization(const ChannelInit& init, int n_chain);

// Nearest chain length to target_n (searching +-8, odd lengths) for which
// -p * szB * cos(pi (N+1)/2) = 1, the phase condition that turns the
// arrival into a fidelity maximum when B starts polarized at szB.
int recommend_chain_length(const ChannelInit& init, double h, int target_n,
                           double szB = -1.0);

}  // namespace spinwire
