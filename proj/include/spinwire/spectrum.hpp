#pragma once

// Analytic spectrum of the quasi-uniform tridiagonal coupling matrix
//
//              [ x  y            ]
//   M(x, y) =  [ y  0  1         ]      (m = N + 2 rows)
//              [    1  .  .      ]
//              [       .  0  y   ]
//              [          y  x   ]
//
// which is the single-particle block of an open XX chain with endpoint
// exchange y = j0 and corner detuning x = 2(h0 - h).  Eigenvalues are
// lambda = 2 cos k with k in (0, pi) solving
//
//   sin((m+1) k - phi_k) = 0,   phi_k = 2k - 2 atan2(y^2 sin k, A(k)),
//   A(k) = (2 - y^2) cos k - x,
//
// so k_n = (pi n + phi_{k_n}) / (m+1) for n = 1..m, each root displaced
// from the uniform grid by less than pi/(m+1).  The squared first
// eigenvector component behaves as a Lorentzian of HWHM
// Delta = y^2 / (2 - y^2) centered on cos k0 = x / (2 - y^2); the stored
// weights carry the finite-m correction 1 / (1 - phi'_k/(m+1)) so they
// sum to one and match dense eigenvectors at machine precision.

#include <Eigen/Core>

#include "spinwire/errors.hpp"

namespace spinwire {

struct CouplingConfig {
    int n_chain = 0;   // N, interior sites
    double j0 = 1.0;   // endpoint exchange, units of the bulk exchange
    double h = 0.0;    // bulk field
    double h0 = 0.0;   // endpoint field

    int m() const { return n_chain + 2; }
    double x() const { return 2.0 * (h0 - h); }

    // Lorentzian HWHM of the edge weights; requires j0^2 < 2.
    double delta() const;

    void validate() const;
};

// Mirror-symmetric config (h0 = h) of total size m_total.
CouplingConfig mirror_config(int m_total, double j0, double h = 0.0);

// Endpoint exchange producing a given weight HWHM.
double coupling_for_delta(double delta);

struct Spectrum {
    CouplingConfig config;
    Eigen::VectorXd k;            // ascending pseudo-wavevectors, size m
    Eigen::VectorXd omega;        // -h - cos k
    Eigen::VectorXd weight;       // squared first eigenvector components
    Eigen::VectorXd phase_shift;  // phi_{k_n}
    double delta;                 // NaN when j0^2 >= 2
    double k0;                    // NaN when the peak leaves the band

    int m() const { return static_cast<int>(k.size()); }
};

double secular_residual(const CouplingConfig& config, double k);
double phase_shift(const CouplingConfig& config, double k);
double phase_shift_derivative(const CouplingConfig& config, double k);

// Dominant-term weight (exact only as m -> infinity); the finite-m
// corrected value is what Spectrum carries.
double edge_weight(const CouplingConfig& config, double k);

Spectrum solve_spectrum(const CouplingConfig& config, double tol = 1e-12);

// Unit-norm eigenvector for a solved root k_n, built by forward recurrence
// on the first half and mirror reflection on the second.
Eigen::VectorXd eigenvector(const CouplingConfig& config, double k_n);

struct EigenBasis {
    Spectrum spectrum;
    Eigen::MatrixXd vectors;  // column n holds the eigenvector of k_n
};

EigenBasis solve_eigenbasis(const CouplingConfig& config, double tol = 1e-12,
                            int max_dim = 4000);

// Dense M(x, y), for reference solvers and tests.
Eigen::MatrixXd coupling_matrix(const CouplingConfig& config);

// Rows (k_n, v_{k_n}) with v_k = (m+1) sin k / (m+1 - phi'_k); requires the
// mirror-symmetric case x = 0.
Eigen::MatrixX2d group_velocity_profile(const Spectrum& spectrum);

}  // namespace spinwire
