#include "spinwire/transfer_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

namespace spinwire {

namespace {

using cplx = std::complex<double>;

constexpr double kTol = 1e-10;

}  // namespace

Eigen::Matrix2cd QubitDensity::matrix() const {
    Eigen::Matrix2cd rho;
    rho << b[0], b[1], b[2], b[3];
    return rho;
}

QubitDensity QubitDensity::from_matrix(const Eigen::Matrix2cd& rho) {
    QubitDensity a;
    a.b << rho(0, 0), rho(0, 1), rho(1, 0), rho(1, 1);
    return a;
}

QubitDensity QubitDensity::pure(double theta, double phi) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const cplx off = c * s * std::polar(1.0, -phi);
    QubitDensity a;
    a.b << c * c, off, std::conj(off), s * s;
    return a;
}

void QubitDensity::check() const {
    if (std::abs(b[0].imag()) > kTol || std::abs(b[3].imag()) > kTol)
        throw PositivityViolation("populations must be real");
    if (std::abs(b[1] - std::conj(b[2])) > kTol)
        throw PositivityViolation("coherences must be conjugate");
    if (std::abs(b[0].real() + b[3].real() - 1.0) > kTol)
        throw PositivityViolation("trace must be one");
    if (std::norm(b[1]) > b[0].real() * b[3].real() + kTol)
        throw PositivityViolation("|b2|^2 exceeds b1 b4");
}

Eigen::Matrix4cd TwoQubitDensity::matrix() const {
    // zeta_mu (x) zeta_nu = |i i'><j j'| with mu = 1+2i+j, nu = 1+2i'+j'.
    Eigen::Matrix4cd rho;
    for (int i = 0; i < 2; ++i)
        for (int ip = 0; ip < 2; ++ip)
            for (int j = 0; j < 2; ++j)
                for (int jp = 0; jp < 2; ++jp)
                    rho(2 * i + ip, 2 * j + jp) = g(2 * i + j, 2 * ip + jp);
    return rho;
}

TwoQubitDensity TwoQubitDensity::from_matrix(const Eigen::Matrix4cd& rho) {
    TwoQubitDensity d;
    for (int i = 0; i < 2; ++i)
        for (int ip = 0; ip < 2; ++ip)
            for (int j = 0; j < 2; ++j)
                for (int jp = 0; jp < 2; ++jp)
                    d.g(2 * i + j, 2 * ip + jp) = rho(2 * i + ip, 2 * j + jp);
    return d;
}

TwoQubitDensity TwoQubitDensity::bell() {
    TwoQubitDensity d;
    d.g = 0.5 * Eigen::Matrix4cd::Identity();
    return d;
}

cplx TransferMap::t22() const {
    return -static_cast<double>(p) * szB * u * std::polar(1.0, alpha);
}

Eigen::Matrix4cd TransferMap::matrix() const {
    Eigen::Matrix4cd t = Eigen::Matrix4cd::Zero();
    t(0, 0) = t11();
    t(1, 1) = t22();
    t(2, 2) = std::conj(t22());
    t(3, 3) = t44();
    t(3, 0) = t41();
    t(0, 3) = t14();
    return t;
}

TransferMap transfer_map(double u, double alpha, double v, int p, double szB) {
    if (p != 1 && p != -1) throw InvalidConfig("parity must be +-1");
    if (std::abs(szB) > 1.0 + kTol) throw InvalidConfig("szB must lie in [-1, 1]");
    TransferMap map{u, alpha, v, p, szB};
    if (u < -kTol || u > 1.0 + kTol || v < -kTol || map.t41() < -kTol)
        throw PositivityViolation("map parameters leave the completely positive region");
    if (std::norm(map.t22()) > map.t11() * map.t44() + kTol)
        throw PositivityViolation("|T22|^2 exceeds T11 T44");
    return map;
}

QubitDensity apply_map(const TransferMap& map, const QubitDensity& a) {
    QubitDensity out;
    out.b[0] = map.t11() * a.b[0] + map.t14() * a.b[3];
    out.b[1] = map.t22() * a.b[1];
    out.b[2] = std::conj(map.t22()) * a.b[2];
    out.b[3] = map.t41() * a.b[0] + map.t44() * a.b[3];
    const double pop0 = out.b[0].real();
    const double pop1 = out.b[3].real();
    if (std::norm(out.b[1]) > pop0 * pop1 + 1e-8)
        throw PositivityViolation("map output violates |b2|^2 <= b1 b4");
    return out;
}

TwoQubitDensity evolve_pair(const TwoQubitDensity& g_ca, const TransferMap& map) {
    TwoQubitDensity out;
    out.g = g_ca.g * map.matrix().transpose();
    return out;
}

double entanglement_fidelity(const TwoQubitDensity& g_ca, const TransferMap& map) {
    const Eigen::Matrix4cd rho = g_ca.matrix();
    if (std::abs((rho * rho).trace().real() - 1.0) > 1e-8)
        throw NotPure("entanglement fidelity needs a pure input pair");
    const cplx val = (g_ca.g.adjoint() * g_ca.g).cwiseProduct(map.matrix()).sum();
    return val.real();
}

BellMetrics bell_metrics(const TransferMap& map) {
    const double fid = 0.25 * (map.t11() + map.t44() + 2.0 * map.t22().real());
    const double c0 = std::abs(map.t22()) - std::sqrt(std::max(0.0, map.t14() * map.t41()));
    return {fid, std::max(0.0, c0)};
}

double wootters_concurrence(const TwoQubitDensity& rho_in) {
    const Eigen::Matrix4cd rho = rho_in.matrix();
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Eigen::Matrix4cd tilde = yy * rho.conjugate() * yy;

    // sqrt(rho) via the spectral decomposition, then the Hermitian partner
    // sqrt(rho) tilde sqrt(rho) whose eigenvalues are the lambda_i^2.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
    Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0);
    const Eigen::Matrix4cd root =
        es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es2(root * tilde * root);
    Eigen::Vector4d lam = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    std::sort(lam.data(), lam.data() + 4);
    return std::max(0.0, lam[3] - lam[2] - lam[1] - lam[0]);
}

double state_fidelity(const TransferMap& map, double theta, double phi) {
    (void)phi;
    const double c2 = std::cos(0.5 * theta) * std::cos(0.5 * theta);
    const double s2 = 1.0 - c2;
    return map.t11() * c2 * c2 + map.t44() * s2 * s2 +
           (map.t14() + map.t41()) * c2 * s2 + 2.0 * c2 * s2 * map.t22().real();
}

double average_fidelity(const TransferMap& map) {
    return 0.5 + map.u * map.u / 6.0 -
           map.p * std::cos(map.alpha) * map.szB * map.u / 3.0;
}

FidelityExtrema fidelity_extrema(const TransferMap& map) {
    FidelityExtrema ex{};
    ex.f0 = map.t11();
    ex.f1 = map.t44();
    ex.f = 0.5 * (1.0 + map.t22().real());

    // F(cos theta) = f + (f0 - f1)/2 c + a2 c^2 on c in [-1, 1].
    const double a2 = 0.5 * (ex.f0 + ex.f1) - ex.f;

    double lo = std::min(ex.f0, ex.f1);
    double hi = std::max(ex.f0, ex.f1);
    if (std::abs(a2) < 1e-12) {
        ex.c_m = std::numeric_limits<double>::infinity();
        ex.f_m = std::numeric_limits<double>::quiet_NaN();
    } else {
        ex.c_m = (ex.f1 - ex.f0) / (2.0 * (ex.f1 + ex.f0 - 2.0 * ex.f));
        ex.f_m = ex.f - (ex.f0 - ex.f1) * (ex.f0 - ex.f1) /
                          (8.0 * (ex.f0 + ex.f1 - 2.0 * ex.f));
        if (std::abs(ex.c_m) < 1.0) {
            lo = std::min(lo, ex.f_m);
            hi = std::max(hi, ex.f_m);
        }
    }
    ex.f_min = lo;
    ex.f_max = hi;
    return ex;
}

Eigen::Matrix4cd choi_matrix(const TransferMap& map) {
    const Eigen::Matrix4cd t = map.matrix();
    Eigen::Matrix4cd choi;
    for (int i = 0; i < 2; ++i)
        for (int ip = 0; ip < 2; ++ip)
            for (int j = 0; j < 2; ++j)
                for (int jp = 0; jp < 2; ++jp)
                    choi(2 * i + ip, 2 * j + jp) = t(2 * ip + jp, 2 * i + j);
    return choi;
}

}  // namespace spinwire
