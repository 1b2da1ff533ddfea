#pragma once

// Large-N limit of the optimized transfer amplitude.  After rescaling, the
// amplitude becomes
//
//   u_inf(tau, sigma) = (2/pi) Int_0^(pi/2) cos(tau tan^3 z - sigma tan z + 2z) dz,
//
// an oscillatory integral whose maximum over (tau, sigma) fixes the scaling
// constants of the optimal width, delay and coupling.  At tau = 0 it
// collapses to the closed form 2 sigma exp(-sigma).

#include <vector>

#include "spinwire/optimizer.hpp"

namespace spinwire {

// Absolute-error quadrature of u_inf; throws QuadratureFailure when the
// oscillatory tail cannot be certified below the tolerance.
double u_infinity(double tau, double sigma, double tol = 1e-7);

struct AsymptoticOptimum {
    double tau;
    double sigma;
    double u_max;
    double delta_coeff;  // (6 tau)^(1/3), prefactor of N^(-1/3)
    double s_coeff;      // sigma / delta_coeff, prefactor of N^(1/3)
    double j0_coeff;     // sqrt(2) (6 tau)^(1/6), prefactor of N^(-1/6)
};

// Deterministic 2D maximization: coarse grid over tau in [0, 0.1],
// sigma in [0.5, 2.5], then nested golden-section refinement with the
// integrals evaluated at quad_tol.
AsymptoticOptimum maximize_u_infinity(double quad_tol = 1e-8);

struct ConsistencyRow {
    int m_total;
    double u_opt;
    double u_gap;         // u_opt - u_inf limit 0.84690
    double delta_scaled;  // delta_opt * N^(1/3)
    double s_scaled;      // (t* - N - 3) * N^(-1/3)
};

// Optimizes each listed size and tabulates the approach to the asymptotic
// limit; checks that u_opt decreases monotonically toward it from above.
std::vector<ConsistencyRow> finite_size_consistency(const std::vector<int>& m_list);

}  // namespace spinwire
