#include "spinwire/channel_states.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>

namespace spinwire {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kZeroModeTol = 1e-12;

void check_init(const ChannelInit& init, int n_chain) {
    if (n_chain < 1)
        throw InvalidInit("channel length must be >= 1, got " + std::to_string(n_chain));
    if (init.kind == ChannelKind::SingletSeries && n_chain % 2 != 0)
        throw InvalidInit("singlet series needs an even chain, got N = " +
                          std::to_string(n_chain));
}

int ground_state_occupation(double h, int n_chain, bool* degenerate = nullptr) {
    int occupied = 0;
    for (int q = 1; q <= n_chain; ++q) {
        const double omega = -h - std::cos(kPi * q / (n_chain + 1));
        if (omega < -kZeroModeTol)
            ++occupied;
        else if (degenerate && std::abs(omega) <= kZeroModeTol)
            *degenerate = true;
    }
    return occupied;
}

}  // namespace

Eigen::MatrixXd correlation_matrix(const ChannelInit& init, int n_chain) {
    check_init(init, n_chain);
    const int n = n_chain;
    Eigen::MatrixXd corr = Eigen::MatrixXd::Zero(n, n);

    switch (init.kind) {
        case ChannelKind::PolarizedDown:
            break;
        case ChannelKind::PolarizedUp:
            corr.setIdentity();
            break;
        case ChannelKind::Neel:
            for (int j = 0; j < n; j += 2) corr(j, j) = 1.0;
            break;
        case ChannelKind::GroundState: {
            bool degenerate = false;
            const int occupied = ground_state_occupation(init.h, n, &degenerate);
            if (degenerate)
                std::cerr << "spinwire: ground state has a zero mode at h = " << init.h
                          << ", N = " << n << "; leaving it empty\n";
            Eigen::MatrixXd modes(n, occupied);
            int col = 0;
            const double norm = std::sqrt(2.0 / (n + 1));
            for (int q = 1; q <= n; ++q) {
                if (!(-init.h - std::cos(kPi * q / (n + 1)) < -kZeroModeTol)) continue;
                for (int j = 0; j < n; ++j)
                    modes(j, col) = norm * std::sin(kPi * q * (j + 1) / (n + 1));
                ++col;
            }
            corr.noalias() = modes * modes.transpose();
            break;
        }
        case ChannelKind::SingletSeries:
            for (int j = 0; j < n; j += 2) {
                corr(j, j) = corr(j + 1, j + 1) = 0.5;
                corr(j, j + 1) = corr(j + 1, j) = -0.5;
            }
            break;
    }
    return corr;
}

int parity(const ChannelInit& init, int n_chain) {
    check_init(init, n_chain);
    int ups = 0;
    switch (init.kind) {
        case ChannelKind::PolarizedDown:
            ups = 0;
            break;
        case ChannelKind::PolarizedUp:
            ups = n_chain;
            break;
        case ChannelKind::Neel:
            ups = (n_chain + 1) / 2;
            break;
        case ChannelKind::GroundState:
            ups = ground_state_occupation(init.h, n_chain);
            break;
        case ChannelKind::SingletSeries:
            ups = n_chain / 2;
            break;
    }
    return ups % 2 == 0 ? 1 : -1;
}

Eigen::VectorXd channel_magnetization(const ChannelInit& init, int n_chain) {
    return 2.0 * correlation_matrix(init, n_chain).diagonal().array() - 1.0;
}

int recommend_chain_length(const ChannelInit& init, double h, int target_n, double szB) {
    if (std::abs(szB) != 1.0)
        throw InvalidInit("phase condition needs B polarized, szB = +-1");
    ChannelInit probe = init;
    probe.h = h;

    int best = -1;
    for (int n = target_n - 8; n <= target_n + 8; ++n) {
        if (n < 1 || n % 2 == 0) continue;
        if (init.kind == ChannelKind::SingletSeries) continue;
        const double cos_half = ((n + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
        if (-parity(probe, n) * szB * cos_half != 1.0) continue;
        if (best < 0 || std::abs(n - target_n) < std::abs(best - target_n)) best = n;
    }
    if (best < 0)
        throw InvalidInit("no chain length near " + std::to_string(target_n) +
                          " satisfies the phase condition");
    return best;
}

}  // namespace spinwire
