#include "spinwire/ed_oracle.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "spinwire/errors.hpp"

namespace spinwire {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kZeroModeTol = 1e-12;

int popcount(int idx) { return std::popcount(static_cast<unsigned>(idx)); }

// Dense XX Hamiltonian for arbitrary per-site fields and per-bond couplings:
// -sum_l bond_l (S^x_l S^x_{l+1} + S^y_l S^y_{l+1}) - sum_l field_l S^z_l.
Eigen::MatrixXd xx_dense(const std::vector<double>& field, const std::vector<double>& bond) {
    const int m = static_cast<int>(field.size());
    const int dim = 1 << m;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int idx = 0; idx < dim; ++idx) {
        double diag = 0.0;
        for (int l = 0; l < m; ++l) diag -= field[l] * ((idx >> l & 1) ? 0.5 : -0.5);
        h(idx, idx) = diag;
        for (int l = 0; l + 1 < m; ++l) {
            const int pair = idx >> l & 3;
            if (pair == 1 || pair == 2) h(idx ^ (3 << l), idx) = -0.5 * bond[l];
        }
    }
    return h;
}

int ground_occupation(double h, int n_chain) {
    int count = 0;
    for (int l = 1; l <= n_chain; ++l)
        if (-h - std::cos(kPi * l / (n_chain + 1)) < -kZeroModeTol) ++count;
    return count;
}

}  // namespace

Eigen::MatrixXd build_hamiltonian(const CouplingConfig& config) {
    config.validate();
    const int m = config.m();
    if (m > 12)
        throw SizeLimit("dense oracle handles at most 12 sites, got " + std::to_string(m));
    std::vector<double> field(m, config.h);
    field.front() = field.back() = config.h0;
    std::vector<double> bond(m - 1, 1.0);
    bond.front() = bond.back() = config.j0;
    return xx_dense(field, bond);
}

EdSystem ed_system(const CouplingConfig& config) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(build_hamiltonian(config));
    if (solver.info() != Eigen::Success)
        throw NumericalInstability("dense eigensolve failed");
    return EdSystem{config, solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXcd EdSystem::evolve(const Eigen::VectorXcd& state, double t) const {
    if (state.size() != dim()) throw InvalidInit("state dimension does not match the system");
    Eigen::VectorXd cr = modes.transpose() * state.real();
    Eigen::VectorXd ci = modes.transpose() * state.imag();
    Eigen::VectorXcd coeff(dim());
    for (Eigen::Index i = 0; i < dim(); ++i)
        coeff[i] = std::polar(1.0, -energies[i] * t) * std::complex<double>(cr[i], ci[i]);
    Eigen::VectorXcd out(dim());
    out.real() = modes * coeff.real();
    out.imag() = modes * coeff.imag();
    return out;
}

Eigen::VectorXcd channel_state(const ChannelInit& init, int n_chain) {
    if (n_chain < 1) throw InvalidInit("channel needs at least one site");
    if (n_chain > 12)
        throw SizeLimit("dense channel state handles at most 12 sites, got " +
                        std::to_string(n_chain));
    const int dim = 1 << n_chain;
    Eigen::VectorXcd chi = Eigen::VectorXcd::Zero(dim);
    switch (init.kind) {
        case ChannelKind::PolarizedDown:
            chi[0] = 1.0;
            break;
        case ChannelKind::PolarizedUp:
            chi[dim - 1] = 1.0;
            break;
        case ChannelKind::Neel: {
            int idx = 0;
            for (int j = 0; j < n_chain; j += 2) idx |= 1 << j;
            chi[idx] = 1.0;
            break;
        }
        case ChannelKind::SingletSeries: {
            if (n_chain % 2 != 0)
                throw InvalidInit("singlet series requires an even chain, got " +
                                  std::to_string(n_chain));
            const double amp = 1.0 / std::sqrt(2.0);
            chi[0] = 1.0;
            Eigen::VectorXcd next(dim);
            for (int p = 0; p < n_chain / 2; ++p) {
                next.setZero();
                for (int idx = 0; idx < dim; ++idx) {
                    if (chi[idx] == 0.0) continue;
                    next[idx | 1 << (2 * p)] += amp * chi[idx];
                    next[idx | 1 << (2 * p + 1)] -= amp * chi[idx];
                }
                chi.swap(next);
            }
            break;
        }
        case ChannelKind::GroundState: {
            std::vector<double> field(n_chain, init.h);
            std::vector<double> bond(n_chain > 1 ? n_chain - 1 : 0, 1.0);
            const Eigen::MatrixXd h = xx_dense(field, bond);
            const int filling = ground_occupation(init.h, n_chain);
            std::vector<int> sector;
            for (int idx = 0; idx < dim; ++idx)
                if (popcount(idx) == filling) sector.push_back(idx);
            const int size = static_cast<int>(sector.size());
            Eigen::MatrixXd block(size, size);
            for (int r = 0; r < size; ++r)
                for (int c = 0; c < size; ++c) block(r, c) = h(sector[r], sector[c]);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
            if (solver.info() != Eigen::Success)
                throw NumericalInstability("sector eigensolve failed");
            for (int r = 0; r < size; ++r) chi[sector[r]] = solver.eigenvectors()(r, 0);
            break;
        }
    }
    return chi;
}

Eigen::MatrixXcd measured_correlation(const Eigen::VectorXcd& chi, int n_chain) {
    const int dim = 1 << n_chain;
    if (chi.size() != dim) throw InvalidInit("state dimension does not match n_chain");
    Eigen::MatrixXcd corr = Eigen::MatrixXcd::Zero(n_chain, n_chain);
    for (int j = 0; j < n_chain; ++j)
        for (int idx = 0; idx < dim; ++idx)
            if (idx >> j & 1) corr(j, j) += std::norm(chi[idx]);
    for (int j = 0; j < n_chain; ++j)
        for (int jp = j + 1; jp < n_chain; ++jp) {
            const unsigned between = ((1u << jp) - 1u) & ~((1u << (j + 1)) - 1u);
            std::complex<double> sum = 0.0;
            for (int idx = 0; idx < dim; ++idx) {
                if (!(idx >> jp & 1) || (idx >> j & 1)) continue;
                const int target = idx ^ (1 << j) ^ (1 << jp);
                const double sign =
                    (std::popcount(static_cast<unsigned>(idx) & between) & 1) ? -1.0 : 1.0;
                sum += sign * std::conj(chi[target]) * chi[idx];
            }
            corr(j, jp) = sum;
            corr(jp, j) = std::conj(sum);
        }
    return corr;
}

double measured_parity(const Eigen::VectorXcd& chi) {
    double parity = 0.0;
    for (Eigen::Index idx = 0; idx < chi.size(); ++idx)
        parity += (popcount(static_cast<int>(idx)) & 1 ? -1.0 : 1.0) * std::norm(chi[idx]);
    return parity;
}

Eigen::VectorXcd composite_state(int a_bit, const Eigen::VectorXcd& chi, int b_bit) {
    const int n_chain = static_cast<int>(std::countr_zero(static_cast<unsigned>(chi.size())));
    if (chi.size() != (1 << n_chain)) throw InvalidInit("channel state dimension is not a power of two");
    const int m = n_chain + 2;
    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(1 << m);
    for (int idx = 0; idx < chi.size(); ++idx)
        state[(a_bit & 1) | idx << 1 | (b_bit & 1) << (m - 1)] = chi[idx];
    return state;
}

std::complex<double> ed_amplitude(const EdSystem& system, double t) {
    const int m = system.sites();
    Eigen::VectorXcd start = Eigen::VectorXcd::Zero(system.dim());
    start[1] = 1.0;
    const Eigen::VectorXcd evolved = system.evolve(start, t);
    const double vacuum_energy = 0.5 * (system.config.n_chain * system.config.h +
                                        2.0 * system.config.h0);
    return evolved[Eigen::Index(1) << (m - 1)] * std::polar(1.0, vacuum_energy * t);
}

Eigen::VectorXd ed_occupations(const EdSystem& system, const Eigen::VectorXcd& state, double t) {
    const Eigen::VectorXcd evolved = system.evolve(state, t);
    Eigen::VectorXd occ = Eigen::VectorXd::Zero(system.sites());
    for (Eigen::Index idx = 0; idx < evolved.size(); ++idx) {
        const double weight = std::norm(evolved[idx]);
        for (int l = 0; l < system.sites(); ++l)
            if (idx >> l & 1) occ[l] += weight;
    }
    return occ;
}

double ed_leakage(const EdSystem& system, const Eigen::VectorXcd& chi, double szB, double t) {
    if (std::abs(szB) > 1.0 + 1e-12) throw InvalidInit("szB must lie in [-1, 1]");
    const double w_up = 0.5 * (1.0 + szB);
    double up_probability = 0.0;
    for (int b0 = 0; b0 < 2; ++b0) {
        const double weight = b0 ? w_up : 1.0 - w_up;
        if (weight == 0.0) continue;
        const Eigen::VectorXd occ = ed_occupations(system, composite_state(0, chi, b0), t);
        up_probability += weight * occ[system.sites() - 1];
    }
    return up_probability;
}

MeasuredMap ed_transfer_map(const EdSystem& system, const ChannelInit& init, double szB,
                            double t) {
    const int m = system.sites();
    if (m > 10)
        throw SizeLimit("transfer-map oracle handles at most 10 sites, got " + std::to_string(m));
    if (std::abs(szB) > 1.0 + 1e-12) throw InvalidInit("szB must lie in [-1, 1]");
    const Eigen::VectorXcd chi = channel_state(init, system.config.n_chain);
    const double w_up = 0.5 * (1.0 + szB);

    // Each basis input |i><j| at A factors the evolved operator into two kets,
    // one per bra/ket side; qubit label 0 means up, so the A bit is 1 - label.
    std::array<std::array<Eigen::VectorXcd, 2>, 2> evolved;
    for (int label = 0; label < 2; ++label)
        for (int b0 = 0; b0 < 2; ++b0)
            evolved[label][b0] = system.evolve(composite_state(1 - label, chi, b0), t);

    const Eigen::Index rest = system.dim() / 2;
    MeasuredMap out;
    for (int nu = 0; nu < 4; ++nu) {
        const int i = nu >> 1, j = nu & 1;
        Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
        for (int b0 = 0; b0 < 2; ++b0) {
            const double weight = b0 ? w_up : 1.0 - w_up;
            if (weight == 0.0) continue;
            const Eigen::VectorXcd& left = evolved[i][b0];
            const Eigen::VectorXcd& right = evolved[j][b0];
            for (int bq = 0; bq < 2; ++bq)
                for (int bq2 = 0; bq2 < 2; ++bq2) {
                    const Eigen::Index off1 = static_cast<Eigen::Index>(1 - bq) * rest;
                    const Eigen::Index off2 = static_cast<Eigen::Index>(1 - bq2) * rest;
                    std::complex<double> sum = 0.0;
                    for (Eigen::Index r = 0; r < rest; ++r)
                        sum += left[off1 + r] * std::conj(right[off2 + r]);
                    rho(bq, bq2) += weight * sum;
                }
        }
        for (int mu = 0; mu < 4; ++mu) out.t(mu, nu) = rho(mu >> 1, mu & 1);
    }

    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            const bool corner = (mu == 0 || mu == 3) && (nu == 0 || nu == 3);
            if (mu == nu || corner) {
                if (corner && std::abs(out.t(mu, nu).imag()) > 1e-10)
                    throw NumericalInstability("measured map has a complex population element");
            } else if (std::abs(out.t(mu, nu)) > 1e-10) {
                throw NumericalInstability("measured map breaks the excitation-number pattern");
            }
        }
    return out;
}

MeasuredMap ed_transfer_map(const CouplingConfig& config, const ChannelInit& init, double szB,
                            double t) {
    if (config.m() > 10)
        throw SizeLimit("transfer-map oracle handles at most 10 sites, got " +
                        std::to_string(config.m()));
    return ed_transfer_map(ed_system(config), init, szB, t);
}

}  // namespace spinwire
