#include "spinwire/asymptotics.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "spinwire/numerics.hpp"

namespace spinwire {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLimit = 0.84690;

// Integrand data in the x = tan z picture: envelope G = 1/(1+x^2), phase
// phi = tau x^3 - sigma x + 2 atan x, and the derivatives feeding the
// integration-by-parts tail.
struct Phase {
    double tau, sigma;

    double g(double x) const { return 1.0 / (1.0 + x * x); }
    double phi(double x) const {
        return tau * x * x * x - sigma * x + 2.0 * std::atan(x);
    }
    double dphi(double x) const { return 3.0 * tau * x * x - sigma + 2.0 * g(x); }
    double d2phi(double x) const {
        const double gg = g(x);
        return 6.0 * tau * x - 4.0 * x * gg * gg;
    }
    double d3phi(double x) const {
        const double gg = g(x);
        return 6.0 * tau + (12.0 * x * x - 4.0) * gg * gg * gg;
    }

    // h1 = (G/phi')', h2 = (h1/phi')'.
    double h1(double x) const {
        const double gg = g(x), dg = -2.0 * x * gg * gg;
        const double p1 = dphi(x), p2 = d2phi(x);
        return dg / p1 - gg * p2 / (p1 * p1);
    }
    double h2(double x) const {
        const double gg = g(x);
        const double dg = -2.0 * x * gg * gg;
        const double d2g = (6.0 * x * x - 2.0) * gg * gg * gg;
        const double p1 = dphi(x), p2 = d2phi(x), p3 = d3phi(x);
        const double dh1 = (d2g * p1 - 2.0 * dg * p2 - gg * p3) / (p1 * p1) +
                           2.0 * gg * p2 * p2 / (p1 * p1 * p1);
        return dh1 / p1 - h1(x) * p2 / (p1 * p1);
    }

    // Largest zero of phi' on x > 0, or 0 when phi' keeps one sign.
    double stationary_edge() const {
        if (tau > 1e-14) {
            const double b = 3.0 * tau - sigma;
            const double disc = b * b - 12.0 * tau * (2.0 - sigma);
            if (disc < 0.0) return 0.0;
            const double x2 = (-b + std::sqrt(disc)) / (6.0 * tau);
            return x2 > 0.0 ? std::sqrt(x2) : 0.0;
        }
        if (sigma > 0.0 && sigma < 2.0) return std::sqrt(2.0 / sigma - 1.0);
        return 0.0;
    }
};

// Splits [za, zb] until the phase varies by at most ~3 per panel, so the
// Simpson error estimate cannot alias an oscillation away.  The phase slope
// in z is quadratic in x^2 with positive leading coefficient, hence extremal
// at the panel ends or at the single interior vertex.
void build_panels(const Phase& ph, double za, double zb, std::vector<double>& edges,
                  int depth) {
    auto slope = [&](double z) {
        const double x = std::tan(z);
        return ph.dphi(x) * (1.0 + x * x);
    };
    double peak = std::max(std::abs(slope(za)), std::abs(slope(zb)));
    if (ph.tau > 1e-14) {
        const double xv2 = (ph.sigma - 3.0 * ph.tau) / (6.0 * ph.tau);
        if (xv2 > 0.0) {
            const double zv = std::atan(std::sqrt(xv2));
            if (zv > za && zv < zb) peak = std::max(peak, std::abs(slope(zv)));
        }
    }
    if (peak * (zb - za) <= 3.0 || depth <= 0) {
        edges.push_back(zb);
        return;
    }
    const double mid = 0.5 * (za + zb);
    build_panels(ph, za, mid, edges, depth - 1);
    build_panels(ph, mid, zb, edges, depth - 1);
}

}  // namespace

double u_infinity(double tau, double sigma, double tol) {
    if (tau < 0.0) throw InvalidConfig("tau must be nonnegative");
    if (!(tol > 0.0)) throw InvalidConfig("tolerance must be positive");
    const Phase ph{tau, sigma};

    // Truncation point: beyond all stationary phase points, in the region
    // where two integrations by parts certify |tail| <= 2 |h2/phi'|.
    const double tail_budget = 0.25 * tol * kPi / 2.0;
    double cut = std::max({4.0, 1.5 * ph.stationary_edge(),
                           tau > 1e-14 ? std::pow(2.0 / (3.0 * tau), 0.25) : 0.0});
    int doublings = 0;
    while (4.0 * std::abs(ph.h2(cut) / ph.dphi(cut)) > tail_budget) {
        cut *= 2.0;
        if (++doublings > 60)
            throw QuadratureFailure("oscillatory tail not certifiable at tau = " +
                                    std::to_string(tau) + ", sigma = " + std::to_string(sigma));
    }

    const double p1 = ph.dphi(cut);
    const double tail = -ph.g(cut) / p1 * std::sin(ph.phi(cut)) -
                        ph.h1(cut) / p1 * std::cos(ph.phi(cut));

    std::vector<double> edges{0.0};
    build_panels(ph, 0.0, std::atan(cut), edges, 48);
    auto f = [&](double z) { return std::cos(ph.phi(std::tan(z))); };
    const double main_budget = 0.5 * tol * kPi / 2.0;
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        integral += adaptive_simpson(f, edges[i], edges[i + 1],
                                     main_budget / static_cast<double>(edges.size()));

    return 2.0 / kPi * (integral + tail);
}

AsymptoticOptimum maximize_u_infinity(double quad_tol) {
    if (!(quad_tol > 0.0)) throw InvalidConfig("tolerance must be positive");
    double best_tau = 0.0, best_sigma = 0.0, best_u = -1.0;
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            const double tau = 0.1 * i / 20.0;
            const double sigma = 0.5 + 2.0 * j / 20.0;
            const double u = u_infinity(tau, sigma, 1e-6);
            if (u > best_u) {
                best_u = u;
                best_tau = tau;
                best_sigma = sigma;
            }
        }
    }

    // Nested golden sections around the best cell, sigma inner, tau outer.
    double sigma_center = best_sigma;
    auto best_over_sigma = [&](double tau) {
        const ScalarMax inner = golden_section_max(
            [&](double sigma) { return u_infinity(tau, sigma, quad_tol); },
            sigma_center - 0.15, sigma_center + 0.15, 1e-6);
        return inner;
    };
    const ScalarMax outer = golden_section_max(
        [&](double tau) { return best_over_sigma(tau).value; },
        std::max(0.0, best_tau - 0.0075), best_tau + 0.0075, 1e-6);
    const ScalarMax inner = best_over_sigma(outer.x);

    AsymptoticOptimum opt;
    opt.tau = outer.x;
    opt.sigma = inner.x;
    opt.u_max = inner.value;
    opt.delta_coeff = std::cbrt(6.0 * opt.tau);
    opt.s_coeff = opt.sigma / opt.delta_coeff;
    opt.j0_coeff = std::sqrt(2.0) * std::pow(6.0 * opt.tau, 1.0 / 6.0);
    return opt;
}

std::vector<ConsistencyRow> finite_size_consistency(const std::vector<int>& m_list) {
    std::vector<ConsistencyRow> rows;
    rows.reserve(m_list.size());
    double previous = 2.0;
    for (int m : m_list) {
        const OptimalPoint point = optimize_delta(m - 2);
        const double n = m - 2;
        ConsistencyRow row{m, point.u_opt, point.u_opt - kLimit,
                           point.delta_opt * std::cbrt(n),
                           (point.t_star - n - 3.0) / std::cbrt(n)};
        if (row.u_gap < 0.0)
            throw NumericalInstability("optimized amplitude fell below the asymptotic limit");
        if (point.u_opt >= previous)
            throw NumericalInstability("optimized amplitude is not decreasing with size");
        previous = point.u_opt;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace spinwire
