#pragma once

// Ballistic-regime tuning: arrival time t* near N+3, the optimal weight
// width Delta and endpoint coupling j0 for each chain size, the
// dispersion-minimizing width Delta_0, and the reading-time estimate.
// Amplitudes in this module use the dominant-term edge weights normalized
// to unit sum, the convention the optimum table is quoted in.

#include <vector>

#include "spinwire/spectrum.hpp"

namespace spinwire {

struct ArrivalPoint {
    double t_star;
    double u_star;
};

// Maximizes u(t) over [t_c - w, t_c + w], t_c = N+3 + 2(1-Delta)/Delta,
// by a 0.25-step coarse scan plus golden-section refinement to 1e-4.
// window_half_width <= 0 selects the default max(20, 6/Delta).
ArrivalPoint find_arrival_time(const Spectrum& spectrum,
                               double window_half_width = 0.0);

struct OptimalPoint {
    int n_total;          // m = N + 2
    double delta_opt;
    double j0_opt;
    double t_star;
    double u_opt;
    double delta0;        // dispersion-flattening width
    double reading_time;  // measured width of the arrival plateau
};

OptimalPoint optimize_delta(int n_chain, double h = 0.0);

// Self-consistent solution of Delta_0 = [4 (1 - Delta_0^2) / t*]^(1/3),
// t* = N+3 + 2(1-Delta_0)/Delta_0; behaves as 2^(2/3) N^(-1/3).
double delta_zero(int n_chain);

std::vector<OptimalPoint> table_one(const std::vector<int>& m_list);

struct ReadingTime {
    double measured;  // width of { t : u(t) >= u(t*) - drop } around t*
    double estimate;  // 1 / Delta
};

ReadingTime reading_time(const Spectrum& spectrum, double t_star, double drop = 0.01);

// Large-N fit for the optimal endpoint coupling, 1.030 N^(-1/6).
double asymptotic_coupling(int n_chain);

}  // namespace spinwire
