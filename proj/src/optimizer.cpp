#include "spinwire/optimizer.hpp"

#include <cmath>
#include <string>

#include "spinwire/numerics.hpp"
#include "spinwire/propagator.hpp"

namespace spinwire {

namespace {

double require_delta(const Spectrum& spectrum) {
    const double delta = spectrum.delta;
    if (!std::isfinite(delta) || !(delta > 0.0))
        throw InvalidConfig("arrival search needs a finite weight width (j0 < sqrt(2))");
    return delta;
}

// Mirror-signed dominant-term weights normalized to unit sum.
Eigen::VectorXd table_weights(const Spectrum& spectrum) {
    const int m = spectrum.m();
    Eigen::VectorXd w(m);
    for (int n = 0; n < m; ++n) w[n] = edge_weight(spectrum.config, spectrum.k[n]);
    w /= w.sum();
    for (int n = 1; n < m; n += 2) w[n] = -w[n];
    return w;
}

double scan_modulus(const Eigen::VectorXd& omega, const Eigen::VectorXd& w, double t) {
    return std::abs(phased_sum(omega, w, t));
}

}  // namespace

ArrivalPoint find_arrival_time(const Spectrum& spectrum, double window_half_width) {
    const double delta = require_delta(spectrum);
    const double t_c = (spectrum.m() + 1) + 2.0 * (1.0 - delta) / delta;
    const double w = window_half_width > 0.0 ? window_half_width
                                             : std::max(20.0, 6.0 / delta);
    const double t_lo = std::max(0.0, t_c - w);
    const double step = 0.25;
    const int count = static_cast<int>((t_c + w - t_lo) / step) + 1;

    const Eigen::VectorXd weights = table_weights(spectrum);
    const Eigen::VectorXd coarse = modulus_scan(spectrum.omega, weights, t_lo, step, count);
    int best = 0;
    for (int j = 1; j < count; ++j)
        if (coarse[j] > coarse[best]) best = j;

    const double t_best = t_lo + best * step;
    auto u_of = [&](double t) { return scan_modulus(spectrum.omega, weights, t); };
    const ScalarMax peak = golden_section_max(u_of, t_best - step, t_best + step, 5e-5);
    return {peak.x, peak.value};
}

double delta_zero(int n_chain) {
    if (n_chain < 3) throw InvalidConfig("delta_zero needs N >= 3");
    double d = 0.5;
    for (int it = 0; it < 1000; ++it) {
        const double t_star = (n_chain + 3) + 2.0 * (1.0 - d) / d;
        const double next = std::cbrt(4.0 * (1.0 - d * d) / t_star);
        if (std::abs(next - d) < 1e-12) return next;
        d = next;
    }
    throw NonConvergence("delta_zero fixed point stalled for N = " + std::to_string(n_chain));
}

OptimalPoint optimize_delta(int n_chain, double h) {
    if (n_chain < 5) throw InvalidConfig("optimize_delta needs N >= 5");
    const int m = n_chain + 2;
    const double d0 = delta_zero(n_chain);

    auto amplitude_at = [&](double delta) {
        const Spectrum spec = solve_spectrum(mirror_config(m, coupling_for_delta(delta), h));
        return find_arrival_time(spec).u_star;
    };

    double lo = 0.2 * d0;
    double hi = 2.0 * d0;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    for (int attempt = 0;; ++attempt) {
        constexpr int points = 25;
        const double ratio = std::pow(hi / lo, 1.0 / (points - 1));
        Eigen::VectorXd deltas(points), values(points);
        for (int i = 0; i < points; ++i) {
            deltas[i] = lo * std::pow(ratio, i);
            values[i] = amplitude_at(deltas[i]);
        }
        int best = 0;
        for (int i = 1; i < points; ++i)
            if (values[i] > values[best]) best = i;

        int peaks = 0;
        for (int i = 1; i + 1 < points; ++i)
            if (values[i] > values[i - 1] + 1e-9 && values[i] > values[i + 1] + 1e-9 &&
                values[i] > values[best] - 5e-3)
                ++peaks;
        if (peaks > 1)
            throw BracketFailure("coarse width scan is not unimodal for N = " +
                                 std::to_string(n_chain));

        if (best > 0 && best + 1 < points) {
            bracket_lo = deltas[best - 1];
            bracket_hi = deltas[best + 1];
            break;
        }
        if (attempt >= 1)
            throw BracketFailure("no interior width maximum in [" + std::to_string(lo) +
                                 ", " + std::to_string(hi) + "]");
        lo = 0.05 * d0;
        hi = 4.0 * d0;
    }

    const double rel_tol = m >= 10000 ? 5e-2 : 1e-3;
    const ScalarMax opt = golden_section_max(amplitude_at, bracket_lo, bracket_hi,
                                             rel_tol * 0.5 * (bracket_lo + bracket_hi));

    const double j0 = coupling_for_delta(opt.x);
    const Spectrum spec = solve_spectrum(mirror_config(m, j0, h));
    const ArrivalPoint arrival = find_arrival_time(spec);
    const ReadingTime reading = reading_time(spec, arrival.t_star);
    return {m, opt.x, j0, arrival.t_star, arrival.u_star, d0, reading.measured};
}

std::vector<OptimalPoint> table_one(const std::vector<int>& m_list) {
    std::vector<OptimalPoint> rows;
    rows.reserve(m_list.size());
    for (int m : m_list) {
        if (m < 7 || m % 2 == 0)
            throw InvalidConfig("table sizes are odd and at least 7, got " +
                                std::to_string(m));
        rows.push_back(optimize_delta(m - 2));
    }
    return rows;
}

ReadingTime reading_time(const Spectrum& spectrum, double t_star, double drop) {
    if (!(drop > 0.0) || drop > 0.1)
        throw InvalidConfig("drop must lie in (0, 0.1], got " + std::to_string(drop));
    const double delta = require_delta(spectrum);
    const Eigen::VectorXd weights = table_weights(spectrum);
    auto u_of = [&](double t) { return scan_modulus(spectrum.omega, weights, t); };

    const double threshold = u_of(t_star) - drop;
    const double step = 0.05;
    const double reach = 20.0 / delta;

    auto crossing = [&](double direction) {
        double inside = t_star;
        double outside = t_star;
        for (double d = step; d <= reach; d *= 1.5) {
            outside = t_star + direction * d;
            if (u_of(outside) < threshold) break;
            inside = outside;
        }
        if (u_of(outside) >= threshold) return outside;  // plateau ran past the cap
        for (int it = 0; it < 50; ++it) {
            const double mid = 0.5 * (inside + outside);
            if (u_of(mid) >= threshold)
                inside = mid;
            else
                outside = mid;
        }
        return 0.5 * (inside + outside);
    };

    const double hi = crossing(+1.0);
    const double lo = crossing(-1.0);
    return {hi - lo, 1.0 / delta};
}

double asymptotic_coupling(int n_chain) {
    if (n_chain < 1) throw InvalidConfig("chain length must be positive");
    return 1.030 * std::pow(static_cast<double>(n_chain), -1.0 / 6.0);
}

}  // namespace spinwire
