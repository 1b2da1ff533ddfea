#pragma once

// Qubit-level view of the wire: the U(1)-symmetric dynamical map T, state
// evolution through it, and the transfer quality metrics (entanglement
// fidelity, average fidelity, concurrence, Bloch-sphere fidelity extrema).
//
// Single-qubit operators are expanded as rho = b_mu zeta_mu over the basis
// zeta_mu = |i><j| with mu = 1 + 2i + j (one-based), so b_1 and b_4 are the
// populations of |0> and |1> and b_2 = b_3* the coherence.  The map is
// diagonal apart from the population block:
//
//   T_11 = u^2 + v,   T_44 = 1 - v,   T_41 = 1 - T_11,   T_14 = v,
//   T_22 = T_33* = -p szB u e^{i alpha},
//
// with u, alpha the transition amplitude, v the leaked occupation, p the
// channel parity and szB the initial magnetization of the receiving qubit.

#include <complex>

#include <Eigen/Core>

#include "spinwire/errors.hpp"

namespace spinwire {

struct QubitDensity {
    Eigen::Vector4cd b;  // coefficients over zeta_mu

    Eigen::Matrix2cd matrix() const;
    static QubitDensity from_matrix(const Eigen::Matrix2cd& rho);
    static QubitDensity pure(double theta, double phi);

    void check() const;  // hermiticity, trace, positivity
};

struct TwoQubitDensity {
    Eigen::Matrix4cd g;  // coefficients over zeta_mu (x) zeta_nu

    Eigen::Matrix4cd matrix() const;
    static TwoQubitDensity from_matrix(const Eigen::Matrix4cd& rho);
    static TwoQubitDensity bell();  // g = delta_{mu nu} / 2
};

struct TransferMap {
    double u = 1.0;
    double alpha = 0.0;
    double v = 0.0;
    int p = 1;
    double szB = -1.0;

    double t11() const { return u * u + v; }
    double t44() const { return 1.0 - v; }
    double t41() const { return 1.0 - t11(); }
    double t14() const { return v; }
    std::complex<double> t22() const;

    Eigen::Matrix4cd matrix() const;  // full T_{mu nu}
};

// Validated constructor; rejects parameters outside the completely
// positive region.
TransferMap transfer_map(double u, double alpha, double v, int p, double szB);

QubitDensity apply_map(const TransferMap& map, const QubitDensity& a);

// g -> g T^T, the second qubit of the pair sent through the wire.
TwoQubitDensity evolve_pair(const TwoQubitDensity& g_ca, const TransferMap& map);

// F_ent = T_{mu nu} (g_{lambda mu})* g_{lambda nu} for a pure input pair.
double entanglement_fidelity(const TwoQubitDensity& g_ca, const TransferMap& map);

struct BellMetrics {
    double fidelity;     // (T_11 + T_44 + 2 Re T_22) / 4
    double concurrence;  // max{0, |T_22| - sqrt(T_14 T_41)}
};

BellMetrics bell_metrics(const TransferMap& map);

double wootters_concurrence(const TwoQubitDensity& rho);

// Transmission fidelity of the pure input (theta, phi); phi drops out under
// the U(1) symmetry.
double state_fidelity(const TransferMap& map, double theta, double phi = 0.0);

// Bloch-sphere average, equal to 1/3 + 2/3 F_ent^Bell.
double average_fidelity(const TransferMap& map);

struct FidelityExtrema {
    double f0;     // fidelity of |0>
    double f1;     // fidelity of |1>
    double f;      // fidelity of the equator
    double c_m;    // stationary cos(theta) of the quadratic, +-inf if affine
    double f_m;    // fidelity at the stationary point
    double f_min;  // true minimum over the sphere
    double f_max;  // true maximum over the sphere
};

FidelityExtrema fidelity_extrema(const TransferMap& map);

// Choi matrix of the map; positive semidefinite iff the map is completely
// positive.
Eigen::Matrix4cd choi_matrix(const TransferMap& map);

}  // namespace spinwire
