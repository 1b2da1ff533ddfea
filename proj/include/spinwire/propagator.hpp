#pragma once

// Free-fermion dynamics of the wire.  The propagator is
//
//   U_ij(t) = sum_n O_ni O_nj exp(-i omega_n t),
//
// and every observable here is a contraction of a few of its rows: the
// endpoint-to-endpoint transition amplitude u(t) e^{i alpha(t)}, the return
// amplitude, the channel contribution C_i(t) and site magnetizations.  The
// endpoint amplitudes come in two flavors: an O(m)-per-sample path driven by
// the analytic edge weights of Spectrum (valid for the mirror-symmetric
// case, scales to m ~ 5e5), and an O(m^2) path through the full eigenbasis
// that serves interior observables and oracle validation.

#include <complex>

#include <Eigen/Core>

#include "spinwire/spectrum.hpp"

namespace spinwire {

struct AmplitudeSample {
    double t = 0.0;
    double u = 0.0;      // modulus, in [0, 1]
    double alpha = 0.0;  // phase in (-pi, pi]
};

// sum_n w_n exp(-i omega_n t) evaluated with pairwise accumulation.
std::complex<double> phased_sum(const Eigen::VectorXd& omega,
                                const Eigen::VectorXd& weight, double t);

// |phased_sum| on the uniform grid t0 + j dt, j = 0..count-1, advanced by
// phasor rotation with periodic re-synchronization.
Eigen::VectorXd modulus_scan(const Eigen::VectorXd& omega,
                             const Eigen::VectorXd& weight, double t0, double dt,
                             int count);

// Mirror-signed weights (-1)^(n+1) rho_n entering the transition amplitude.
Eigen::VectorXd transfer_weights(const Spectrum& spectrum);

AmplitudeSample transition_amplitude(const Spectrum& spectrum, double t);
std::complex<double> return_amplitude(const Spectrum& spectrum, double t);

// Exact-eigenvector path, endpoint components taken from the solved basis.
AmplitudeSample transition_amplitude(const EigenBasis& basis, double t);
std::complex<double> return_amplitude(const EigenBasis& basis, double t);

Eigen::VectorXcd propagator_row(const EigenBasis& basis, double t, int i);

// C_i(t) = sum_{j j'} U*_ij U_ij' <c_j^dag c_j'> over the channel segment.
double channel_contribution(const EigenBasis& basis, const Eigen::MatrixXd& corr,
                            double t, int i);

// v(t) = |U_BB|^2 (szB + 1)/2 + C_B(t), the occupation leaking into B.
double leakage_v(const EigenBasis& basis, const Eigen::MatrixXd& corr, double szB,
                 double t);

// <sigma^z_i(t)> for all sites, endpoints prepared at sz0 and szB.
Eigen::VectorXd magnetization_profile(const EigenBasis& basis,
                                      const Eigen::MatrixXd& corr, double sz0,
                                      double szB, double t);

// u_l(t): the transition sum restricted to the 2l+1 modes centered on the
// band middle; the last entry is the full u(t).  Needs odd m.
Eigen::VectorXd partial_amplitude_sums(const Spectrum& spectrum, double t);

}  // namespace spinwire
