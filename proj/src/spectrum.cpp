#include "spinwire/spectrum.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace spinwire {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CornerTerms {
    double a;  // (2 - y^2) cos k - x
    double b;  // y^2 sin k
};

CornerTerms corner_terms(const CouplingConfig& config, double k) {
    const double y2 = config.j0 * config.j0;
    return {(2.0 - y2) * std::cos(k) - config.x(), y2 * std::sin(k)};
}

double corrected_weight(const CouplingConfig& config, double k) {
    const double denom = 1.0 - phase_shift_derivative(config, k) / (config.m() + 1);
    return edge_weight(config, k) / denom;
}

}  // namespace

double CouplingConfig::delta() const {
    const double y2 = j0 * j0;
    if (!(y2 < 2.0))
        throw InvalidConfig("delta undefined for j0^2 >= 2 (j0 = " + std::to_string(j0) +
                            ")");
    return y2 / (2.0 - y2);
}

void CouplingConfig::validate() const {
    if (n_chain < 1)
        throw InvalidConfig("n_chain must be >= 1, got " + std::to_string(n_chain));
    if (!(j0 > 0.0))
        throw InvalidConfig("j0 must be positive, got " + std::to_string(j0));
    if (std::abs(j0 * j0 - 2.0) < 1e-12)
        throw InvalidConfig("j0 = sqrt(2) makes the weight width degenerate");
    if (!std::isfinite(h) || !std::isfinite(h0))
        throw InvalidConfig("fields must be finite");
}

CouplingConfig mirror_config(int m_total, double j0, double h) {
    CouplingConfig config{m_total - 2, j0, h, h};
    config.validate();
    return config;
}

double coupling_for_delta(double delta) {
    if (!(delta > 0.0))
        throw InvalidConfig("delta must be positive, got " + std::to_string(delta));
    return std::sqrt(2.0 * delta / (1.0 + delta));
}

double secular_residual(const CouplingConfig& config, double k) {
    const auto [a, b] = corner_terms(config, k);
    const double re = a * a - b * b;
    const double im = 2.0 * a * b;
    const double arg = (config.m() - 1) * k;
    return std::sin(arg) * re + std::cos(arg) * im;
}

double phase_shift(const CouplingConfig& config, double k) {
    const auto [a, b] = corner_terms(config, k);
    return 2.0 * k - 2.0 * std::atan2(b, a);
}

double phase_shift_derivative(const CouplingConfig& config, double k) {
    const auto [a, b] = corner_terms(config, k);
    const double y2 = config.j0 * config.j0;
    const double da = -(2.0 - y2) * std::sin(k);
    const double db = y2 * std::cos(k);
    return 2.0 - 2.0 * (db * a - da * b) / (a * a + b * b);
}

double edge_weight(const CouplingConfig& config, double k) {
    const auto [a, b] = corner_terms(config, k);
    const double y2 = config.j0 * config.j0;
    const double s = std::sin(k);
    return 2.0 / (config.m() + 1) * y2 * s * s / (a * a + b * b);
}

Spectrum solve_spectrum(const CouplingConfig& config, double tol) {
    config.validate();
    if (!(tol > 0.0)) throw InvalidConfig("tolerance must be positive");

    const int m = config.m();
    const double scale = m + 1;
    Spectrum spec;
    spec.config = config;
    spec.k.resize(m);
    spec.omega.resize(m);
    spec.weight.resize(m);
    spec.phase_shift.resize(m);

    for (int n = 1; n <= m; ++n) {
        const double eps = 1e-14;
        const double lo = std::max(kPi * (n - 1) / scale, eps);
        const double hi = std::min(kPi * (n + 1) / scale, kPi - eps);

        // Damped fixed point k <- (pi n + phi_k)/(m+1); contraction factor is
        // |phi'|/(m+1), which degrades near the weight peak for narrow widths.
        double k = kPi * n / scale;
        bool converged = false;
        for (int it = 0; it < 60; ++it) {
            const double next = (kPi * n + phase_shift(config, k)) / scale;
            if (next <= lo || next >= hi) break;
            const double dk = std::abs(next - k);
            k = next;
            if (dk < tol) {
                converged = true;
                break;
            }
        }

        if (!converged) {
            // Bracketed bisection on g(k) = (m+1)k - pi n - phi_k, then a few
            // safeguarded Newton steps; g is strictly increasing on the bracket.
            auto g = [&](double kk) { return scale * kk - kPi * n - phase_shift(config, kk); };
            double a = lo, b = hi;
            double ga = g(a), gb = g(b);
            if (!(ga < 0.0) || !(gb > 0.0))
                throw NonConvergence("root bracket failed for mode n = " + std::to_string(n) +
                                     ", residual " + std::to_string(std::min(std::abs(ga), std::abs(gb))));
            for (int it = 0; it < 24; ++it) {
                const double mid = 0.5 * (a + b);
                if (g(mid) < 0.0)
                    a = mid;
                else
                    b = mid;
            }
            k = 0.5 * (a + b);
            double best_k = k;
            double best_g = std::numeric_limits<double>::infinity();
            for (int it = 0; it < 12 && b - a > tol; ++it) {
                const double gk = g(k);
                if (std::abs(gk) < best_g) {
                    best_g = std::abs(gk);
                    best_k = k;
                }
                const double slope = scale - phase_shift_derivative(config, k);
                double next = k - gk / slope;
                if (!(next > a) || !(next < b)) next = 0.5 * (a + b);
                if (gk < 0.0)
                    a = k;
                else
                    b = k;
                k = next;
            }
            // k holds an unevaluated prediction; keep the best point seen.
            if (std::abs(g(k)) > best_g) k = best_k;
        }

        spec.k[n - 1] = k;
        spec.phase_shift[n - 1] = phase_shift(config, k);
        spec.omega[n - 1] = -config.h - std::cos(k);
        spec.weight[n - 1] = corrected_weight(config, k);
    }

    for (int n = 1; n < m; ++n)
        if (!(spec.k[n] > spec.k[n - 1]))
            throw NumericalInstability("pseudo-wavevector ordering lost at n = " +
                                       std::to_string(n + 1));

    const double y2 = config.j0 * config.j0;
    if (y2 < 2.0) {
        spec.delta = y2 / (2.0 - y2);
        const double c0 = config.x() / (2.0 - y2);
        spec.k0 = std::abs(c0) <= 1.0 ? std::acos(c0)
                                      : std::numeric_limits<double>::quiet_NaN();
    } else {
        spec.delta = std::numeric_limits<double>::quiet_NaN();
        spec.k0 = std::numeric_limits<double>::quiet_NaN();
    }
    return spec;
}

Eigen::VectorXd eigenvector(const CouplingConfig& config, double k_n) {
    config.validate();
    const int m = config.m();
    const double lambda = 2.0 * std::cos(k_n);
    const double x = config.x();
    const double y = config.j0;

    // Mode index recovered from the secular relation; eigenvectors alternate
    // symmetric / antisymmetric in ascending k, starting symmetric.
    const int n = static_cast<int>(std::lround(((m + 1) * k_n - phase_shift(config, k_n)) / kPi));
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;

    Eigen::VectorXd v(m);
    const int half = (m + 1) / 2;
    v[0] = 1.0;
    if (half > 1) v[1] = (lambda - x) / y;
    for (int i = 1; i + 1 < half; ++i) {
        const double e_prev = (i == 1) ? y : 1.0;
        v[i + 1] = lambda * v[i] - e_prev * v[i - 1];
    }
    for (int i = half; i < m; ++i) v[i] = sign * v[m - 1 - i];
    v.normalize();

    // Residual of the full eigenproblem; the center rows also certify that the
    // mirrored half matches the forward recurrence.
    double resid = 0.0;
    for (int i = 0; i < m; ++i) {
        double r = (i == 0 || i == m - 1 ? x : 0.0) * v[i] - lambda * v[i];
        if (i > 0) r += (i == 1 || i == m - 1 ? y : 1.0) * v[i - 1];
        if (i + 1 < m) r += (i == 0 || i + 1 == m - 1 ? y : 1.0) * v[i + 1];
        resid = std::max(resid, std::abs(r));
    }
    const double vmax = v.cwiseAbs().maxCoeff();
    if (resid > 1e-8 * vmax)
        throw NumericalInstability("eigenvector residual " + std::to_string(resid) +
                                   " at k = " + std::to_string(k_n));
    return v;
}

EigenBasis solve_eigenbasis(const CouplingConfig& config, double tol, int max_dim) {
    if (config.m() > max_dim)
        throw SizeLimit("eigenbasis of size " + std::to_string(config.m()) +
                        " exceeds the cap " + std::to_string(max_dim));
    EigenBasis basis;
    basis.spectrum = solve_spectrum(config, tol);
    basis.vectors.resize(config.m(), config.m());
    for (int n = 0; n < config.m(); ++n)
        basis.vectors.col(n) = eigenvector(config, basis.spectrum.k[n]);
    return basis;
}

Eigen::MatrixXd coupling_matrix(const CouplingConfig& config) {
    config.validate();
    const int m = config.m();
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m, m);
    mat(0, 0) = mat(m - 1, m - 1) = config.x();
    for (int i = 0; i + 1 < m; ++i) {
        const double e = (i == 0 || i + 1 == m - 1) ? config.j0 : 1.0;
        mat(i, i + 1) = mat(i + 1, i) = e;
    }
    return mat;
}

Eigen::MatrixX2d group_velocity_profile(const Spectrum& spectrum) {
    if (std::abs(spectrum.config.x()) > 1e-12)
        throw InvalidConfig("group velocity profile requires h0 = h");
    const int m = spectrum.m();
    Eigen::MatrixX2d profile(m, 2);
    for (int n = 0; n < m; ++n) {
        const double k = spectrum.k[n];
        const double dphi = phase_shift_derivative(spectrum.config, k);
        profile(n, 0) = k;
        profile(n, 1) = (m + 1) * std::sin(k) / (m + 1 - dphi);
    }
    return profile;
}

}  // namespace spinwire
