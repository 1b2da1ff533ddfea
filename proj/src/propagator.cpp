#include "spinwire/propagator.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "spinwire/numerics.hpp"

namespace spinwire {

namespace {

using cplx = std::complex<double>;

AmplitudeSample to_sample(double t, cplx z) {
    return {t, std::abs(z), std::arg(z)};
}

void require_mirror(const CouplingConfig& config) {
    if (std::abs(config.x()) > 1e-12)
        throw InvalidConfig("endpoint amplitudes need the mirror-symmetric case h0 = h");
}

}  // namespace

cplx phased_sum(const Eigen::VectorXd& omega, const Eigen::VectorXd& weight, double t) {
    const auto n = omega.size();
    std::vector<cplx> terms(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        terms[static_cast<std::size_t>(i)] = weight[i] * std::polar(1.0, -omega[i] * t);
    return pairwise_sum(std::span<const cplx>(terms));
}

Eigen::VectorXd modulus_scan(const Eigen::VectorXd& omega, const Eigen::VectorXd& weight,
                             double t0, double dt, int count) {
    const auto n = omega.size();
    std::vector<cplx> z(static_cast<std::size_t>(n));
    std::vector<cplx> rot(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        rot[static_cast<std::size_t>(i)] = std::polar(1.0, -omega[i] * dt);

    constexpr int resync = 2048;
    Eigen::VectorXd out(count);
    for (int j = 0; j < count; ++j) {
        if (j % resync == 0) {
            const double t = t0 + j * dt;
            for (Eigen::Index i = 0; i < n; ++i)
                z[static_cast<std::size_t>(i)] = weight[i] * std::polar(1.0, -omega[i] * t);
        }
        out[j] = std::abs(pairwise_sum(std::span<const cplx>(z)));
        for (std::size_t i = 0; i < z.size(); ++i) z[i] *= rot[i];
    }
    return out;
}

Eigen::VectorXd transfer_weights(const Spectrum& spectrum) {
    Eigen::VectorXd w = spectrum.weight;
    for (int n = 1; n < w.size(); n += 2) w[n] = -w[n];
    return w;
}

AmplitudeSample transition_amplitude(const Spectrum& spectrum, double t) {
    require_mirror(spectrum.config);
    return to_sample(t, phased_sum(spectrum.omega, transfer_weights(spectrum), t));
}

cplx return_amplitude(const Spectrum& spectrum, double t) {
    require_mirror(spectrum.config);
    return phased_sum(spectrum.omega, spectrum.weight, t);
}

AmplitudeSample transition_amplitude(const EigenBasis& basis, double t) {
    const int m = basis.spectrum.m();
    const Eigen::VectorXd w =
        basis.vectors.row(0).cwiseProduct(basis.vectors.row(m - 1)).transpose();
    return to_sample(t, phased_sum(basis.spectrum.omega, w, t));
}

cplx return_amplitude(const EigenBasis& basis, double t) {
    const int m = basis.spectrum.m();
    const Eigen::VectorXd w = basis.vectors.row(m - 1).cwiseAbs2().transpose();
    return phased_sum(basis.spectrum.omega, w, t);
}

Eigen::VectorXcd propagator_row(const EigenBasis& basis, double t, int i) {
    const int m = basis.spectrum.m();
    if (i < 0 || i >= m) throw InvalidConfig("row index out of range");
    Eigen::VectorXcd coeff(m);
    for (int n = 0; n < m; ++n)
        coeff[n] = basis.vectors(i, n) * std::polar(1.0, -basis.spectrum.omega[n] * t);
    Eigen::VectorXcd row(m);
    row.real() = basis.vectors * coeff.real();
    row.imag() = basis.vectors * coeff.imag();
    return row;
}

namespace {

double interior_quadratic_form(const Eigen::VectorXcd& row, const Eigen::MatrixXd& corr) {
    const auto n = corr.rows();
    const Eigen::VectorXd re = row.segment(1, n).real();
    const Eigen::VectorXd im = row.segment(1, n).imag();
    return re.dot(corr * re) + im.dot(corr * im);
}

}  // namespace

double channel_contribution(const EigenBasis& basis, const Eigen::MatrixXd& corr,
                            double t, int i) {
    if (corr.rows() != basis.spectrum.config.n_chain || corr.rows() != corr.cols())
        throw InvalidConfig("correlation matrix does not match the chain length");
    return interior_quadratic_form(propagator_row(basis, t, i), corr);
}

double leakage_v(const EigenBasis& basis, const Eigen::MatrixXd& corr, double szB,
                 double t) {
    if (std::abs(szB) > 1.0)
        throw InvalidConfig("szB must lie in [-1, 1], got " + std::to_string(szB));
    const int b = basis.spectrum.m() - 1;
    const Eigen::VectorXcd row = propagator_row(basis, t, b);
    const double stay = std::norm(row[b]);
    return stay * 0.5 * (szB + 1.0) + interior_quadratic_form(row, corr);
}

Eigen::VectorXd magnetization_profile(const EigenBasis& basis, const Eigen::MatrixXd& corr,
                                      double sz0, double szB, double t) {
    const int m = basis.spectrum.m();
    const int n = basis.spectrum.config.n_chain;
    if (corr.rows() != n || corr.cols() != n)
        throw InvalidConfig("correlation matrix does not match the chain length");
    if (std::abs(sz0) > 1.0 || std::abs(szB) > 1.0)
        throw InvalidConfig("endpoint magnetizations must lie in [-1, 1]");

    // Columns of V with the mode phases applied; U = Vc * V^T.
    Eigen::MatrixXcd vc(m, m);
    for (int nn = 0; nn < m; ++nn)
        vc.col(nn) = basis.vectors.col(nn) * std::polar(1.0, -basis.spectrum.omega[nn] * t);

    const Eigen::VectorXcd col_a = vc * basis.vectors.row(0).transpose();
    const Eigen::VectorXcd col_b = vc * basis.vectors.row(m - 1).transpose();

    // Interior block U(:, 1..n) split into real parts for the contraction
    // C_i = sum_jj' U*_ij corr_jj' U_ij'.
    const Eigen::MatrixXd vin = basis.vectors.middleRows(1, n);
    Eigen::MatrixXd qre(m, n), qim(m, n);
    qre.noalias() = vc.real() * vin.transpose();
    qim.noalias() = vc.imag() * vin.transpose();
    const Eigen::VectorXd c =
        (qre.cwiseProduct(qre * corr) + qim.cwiseProduct(qim * corr)).rowwise().sum();

    Eigen::VectorXd sz(m);
    for (int i = 0; i < m; ++i) {
        const double pa = std::norm(col_a[i]);
        const double pb = std::norm(col_b[i]);
        const double g = 2.0 * c[i] + pa + pb - 1.0;
        sz[i] = pa * sz0 + pb * szB + g;
    }
    return sz;
}

Eigen::VectorXd partial_amplitude_sums(const Spectrum& spectrum, double t) {
    require_mirror(spectrum.config);
    const int m = spectrum.m();
    if (m % 2 == 0)
        throw InvalidConfig("partial sums are defined for odd m, got " + std::to_string(m));
    const Eigen::VectorXd w = transfer_weights(spectrum);
    const int center = (m - 1) / 2;
    const int half = (m + 1) / 2;

    Eigen::VectorXd out(half);
    cplx acc = w[center] * std::polar(1.0, -spectrum.omega[center] * t);
    out[0] = std::abs(acc);
    for (int l = 1; l < half; ++l) {
        acc += w[center - l] * std::polar(1.0, -spectrum.omega[center - l] * t);
        acc += w[center + l] * std::polar(1.0, -spectrum.omega[center + l] * t);
        out[l] = std::abs(acc);
    }
    return out;
}

}  // namespace spinwire
