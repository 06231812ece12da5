// Copyright 2026 The fhsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fhsim/hubbard.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fhsim {

void HubbardParams::set_trap(int spin, const GaussianTrap& trap) {
    if (trap.sigma <= 0.0) throw std::invalid_argument("trap sigma must be positive");
    eps[spin].assign(L, 0.0);
    for (int j = 0; j < L; ++j) {
        const double d = (j + 1) - trap.center;
        eps[spin][j] = -trap.lambda * std::exp(-0.5 * d * d / (trap.sigma * trap.sigma));
    }
}

void HubbardParams::validate() const {
    if (L < 2) throw std::invalid_argument("HubbardParams: L must be >= 2");
    if (tau <= 0.0) throw std::invalid_argument("HubbardParams: tau must be positive");
    for (int s = 0; s < 2; ++s)
        if (!eps[s].empty() && static_cast<int>(eps[s].size()) != L)
            throw std::invalid_argument("HubbardParams: eps length mismatch");
}

Eigen::MatrixXd single_particle_hamiltonian(const HubbardParams& p, int spin) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(p.L, p.L);
    for (int j = 0; j + 1 < p.L; ++j) {
        h(j, j + 1) = -p.J;
        h(j + 1, j) = -p.J;
    }
    for (int j = 0; j < p.L; ++j) h(j, j) = p.eps_at(spin, j);
    return h;
}

QubitAssignment QubitAssignment::variant(int id, int L) {
    if (L != 8) throw std::invalid_argument("assignments are defined for L = 8");
    if (id < 0 || id > 15) throw std::invalid_argument("variant id must be in [0, 15]");
    const bool reverse = id & 1;
    const bool spin_exchange = id & 2;
    const bool hflip = id & 4;
    const bool lower = id & 8;

    // Horseshoe path through a 2x4 block, as (row, col) offsets.
    static constexpr int kPath[8][2] = {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 3}, {1, 2}, {1, 1}, {1, 0}};

    QubitAssignment a;
    a.variant_id = id;
    for (int spin = 0; spin < 2; ++spin) {
        a.site_to_physical[spin].resize(L);
        for (int site = 0; site < L; ++site) {
            int slot = reverse ? (L - 1 - site) : site;
            int row = kPath[slot][0];
            int col = kPath[slot][1];
            if (hflip) col = 3 - col;
            const int chain = (spin == kSpinUp) != spin_exchange ? 0 : 1;
            row += 2 * chain;
            col += lower ? 2 : 0;
            a.site_to_physical[spin][site] = 6 * row + col;
        }
    }
    return a;
}

std::vector<Moment> slater_prep_moments(const Eigen::MatrixXd& q_rows, int qubit_offset) {
    Eigen::MatrixXd q = q_rows;
    const int n = static_cast<int>(q.rows());
    const int l = static_cast<int>(q.cols());
    if (n < 0 || n > l) throw std::invalid_argument("slater_prep: need 0 <= N <= L");

    std::vector<Moment> moments;
    if (n == 0) return moments;

    // X gates put one particle on each of the first n sites.
    Moment xm;
    for (int i = 0; i < n; ++i) xm.gates.push_back(gate_x(qubit_offset + i));
    moments.push_back(std::move(xm));

    // Free row mixing: zero q[r][c] for c > l - n + r, so each row ends in a
    // staircase. Processed per column of the trailing block, top rows first.
    for (int k = n - 2; k >= 0; --k) {
        const int c = l - n + 1 + k;
        for (int r = 0; r <= k; ++r) {
            const double x = q(r + 1, c), y = q(r, c);
            if (std::abs(y) < 1e-14) continue;
            const double th = std::atan2(y, x);
            const double ct = std::cos(th), st = std::sin(th);
            const Eigen::VectorXd top = q.row(r), bot = q.row(r + 1);
            q.row(r) = ct * top - st * bot;
            q.row(r + 1) = st * top + ct * bot;
        }
    }

    // Right Givens eliminations, row r from column l-n+r down to r+1; the
    // reversed list is the execution order (a staggered ladder per row).
    struct Rot {
        int pair;
        double theta;
    };
    std::vector<Rot> elim;
    for (int r = 0; r < n; ++r) {
        for (int c = l - n + r; c > r; --c) {
            const double x = q(r, c - 1), y = q(r, c);
            double th = 0.0;
            if (std::abs(y) >= 1e-14) {
                th = std::atan2(y, x);
                const double ct = std::cos(th), st = std::sin(th);
                const Eigen::VectorXd ca = q.col(c - 1), cb = q.col(c);
                q.col(c - 1) = ct * ca + st * cb;
                q.col(c) = -st * ca + ct * cb;
            }
            elim.push_back({c - 1, th});
        }
    }

    // Greedy ASAP layering of the reversed eliminations.
    std::vector<std::vector<PlacedGate>> layers;
    std::vector<int> busy_until(l, 0);
    for (auto it = elim.rbegin(); it != elim.rend(); ++it) {
        if (std::abs(it->theta) < 1e-14) continue;
        const int p = it->pair;
        const int layer = std::max(busy_until[p], busy_until[p + 1]);
        if (layer >= static_cast<int>(layers.size())) layers.resize(layer + 1);
        layers[layer].push_back(gate_givens(-it->theta, qubit_offset + p, qubit_offset + p + 1));
        busy_until[p] = busy_until[p + 1] = layer + 1;
    }
    for (auto& lg : layers)
        if (!lg.empty()) moments.push_back(Moment{std::move(lg)});
    return moments;
}

namespace {

Eigen::MatrixXd lowest_orbitals(const Eigen::MatrixXd& h, int n) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    Eigen::MatrixXd q(n, h.rows());
    for (int k = 0; k < n; ++k) q.row(k) = es.eigenvectors().col(k);
    return q;
}

}  // namespace

Circuit build_initial_state_circuit(const HubbardParams& h0, int n_up, int n_dn) {
    h0.validate();
    if (n_up < 0 || n_up > h0.L || n_dn < 0 || n_dn > h0.L)
        throw std::invalid_argument("particle numbers must be in [0, L]");
    Circuit c;
    c.n_qubits = 2 * h0.L;
    const int ns[2] = {n_up, n_dn};
    std::array<std::vector<Moment>, 2> per_chain;
    for (int spin = 0; spin < 2; ++spin) {
        if (ns[spin] == 0) continue;
        const Eigen::MatrixXd q = lowest_orbitals(single_particle_hamiltonian(h0, spin), ns[spin]);
        per_chain[spin] = slater_prep_moments(q, spin * h0.L);
    }
    const std::size_t depth = std::max(per_chain[0].size(), per_chain[1].size());
    for (std::size_t k = 0; k < depth; ++k) {
        Moment m;
        for (int spin = 0; spin < 2; ++spin)
            if (k < per_chain[spin].size())
                m.gates.insert(m.gates.end(), per_chain[spin][k].gates.begin(), per_chain[spin][k].gates.end());
        if (!m.gates.empty()) c.moments.push_back(std::move(m));
    }
    c.validate();
    return c;
}

Circuit build_wavepacket_circuit(int L, int spin, double center, double width, double momentum) {
    if (width <= 0.0) throw std::invalid_argument("wavepacket width must be positive");
    Eigen::MatrixXd q(1, L);
    for (int j = 0; j < L; ++j) {
        const double d = (j + 1) - center;
        q(0, j) = std::exp(-d * d / (4.0 * width * width));
    }
    q.row(0).normalize();
    Circuit c;
    c.n_qubits = 2 * L;
    for (auto& m : slater_prep_moments(q, spin * L)) c.moments.push_back(std::move(m));
    if (momentum != 0.0) {
        Moment zm;
        for (int j = 0; j < L; ++j) zm.gates.push_back(gate_rz(momentum * (j + 1), spin * L + j));
        c.moments.push_back(std::move(zm));
    }
    c.validate();
    return c;
}

Circuit build_trotter_step(const HubbardParams& p, const TrotterOptions& opts) {
    p.validate();
    const int L = p.L;
    const double theta_hop = -p.tau * p.J;
    const double phi_int = p.tau * p.U;
    Circuit c;
    c.n_qubits = 2 * L;

    auto hop_moment = [&](int parity, double theta) {
        Moment m;
        for (int spin = 0; spin < 2; ++spin)
            for (int j = parity; j + 1 < L; j += 2)
                m.gates.push_back(gate_k(theta, logical_qubit(spin, j, L), logical_qubit(spin, j + 1, L)));
        return m;
    };
    auto echo_moment = [&](const std::vector<int>& busy_sites) {
        Moment m;
        std::vector<bool> busy(L, false);
        for (int s : busy_sites) busy[s] = true;
        for (int spin = 0; spin < 2; ++spin)
            for (int j = 0; j < L; ++j)
                if (!busy[j]) m.gates.push_back(gate_x(logical_qubit(spin, j, L)));
        return m;
    };
    auto cphase_moment = [&](const std::vector<int>& positions) {
        Moment m;
        for (int pos : positions)
            m.gates.push_back(gate_cphase(phi_int, logical_qubit(kSpinUp, pos, L), logical_qubit(kSpinDown, pos, L)));
        return m;
    };
    auto emit_interaction = [&](const std::vector<int>& positions) {
        if (opts.spin_echo) c.moments.push_back(echo_moment(positions));
        c.moments.push_back(cphase_moment(positions));
        if (opts.spin_echo) c.moments.push_back(echo_moment(positions));
    };

    // Stage 1: odd-bond hopping (sites are 0-indexed here, bonds (0,1),(2,3),...).
    c.moments.push_back(hop_moment(0, theta_hop));
    if (opts.hopping_only) {
        c.moments.push_back(hop_moment(1, theta_hop));
        c.validate();
        return c;
    }

    // Stage 2: interaction on odd sites (0-indexed even positions).
    std::vector<int> odd_positions;
    for (int j = 0; j < L; j += 2) odd_positions.push_back(j);
    emit_interaction(odd_positions);

    // Stage 3: reposition with iSWAPs on even bonds ((1,2),(3,4),... 0-indexed).
    Moment swap_m;
    std::vector<int> perm(L);
    std::iota(perm.begin(), perm.end(), 0);
    for (int j = 1; j + 1 < L; j += 2) {
        for (int spin = 0; spin < 2; ++spin)
            swap_m.gates.push_back(gate_iswap(logical_qubit(spin, j, L), logical_qubit(spin, j + 1, L)));
        std::swap(perm[j], perm[j + 1]);
    }
    c.moments.push_back(std::move(swap_m));

    // Stage 4: interaction on even sites, now sitting at swapped positions.
    std::vector<int> even_positions;
    for (int pos = 0; pos < L; ++pos)
        if (perm[pos] % 2 == 1) even_positions.push_back(pos);
    emit_interaction(even_positions);

    // Stage 5: even-bond hopping with the extra pi/2 undoing the iSWAPs.
    c.moments.push_back(hop_moment(1, theta_hop + M_PI / 2));
    c.validate();
    return c;
}

std::vector<double> DensityPair::charge() const {
    std::vector<double> v(up.size());
    for (std::size_t j = 0; j < up.size(); ++j) v[j] = up[j] + dn[j];
    return v;
}

std::vector<double> DensityPair::spin() const {
    std::vector<double> v(up.size());
    for (std::size_t j = 0; j < up.size(); ++j) v[j] = up[j] - dn[j];
    return v;
}

DensityPair densities_from_shots(const ShotTable& shots, int L) {
    if (shots.bitstrings.empty()) throw std::invalid_argument("densities_from_shots: empty shot table");
    DensityPair d;
    d.up.assign(L, 0.0);
    d.dn.assign(L, 0.0);
    for (const uint64_t bits : shots.bitstrings) {
        for (int j = 0; j < L; ++j) {
            if (bits & (uint64_t{1} << j)) d.up[j] += 1.0;
            if (bits & (uint64_t{1} << (L + j))) d.dn[j] += 1.0;
        }
    }
    const double inv = 1.0 / static_cast<double>(shots.shots());
    for (int j = 0; j < L; ++j) {
        d.up[j] *= inv;
        d.dn[j] *= inv;
    }
    return d;
}

DensityPair densities_from_state(const StateVector& state, int L) {
    DensityPair d;
    d.up.resize(L);
    d.dn.resize(L);
    for (int j = 0; j < L; ++j) {
        d.up[j] = state.number_expectation(j);
        d.dn[j] = state.number_expectation(L + j);
    }
    return d;
}

double spread(const std::vector<double>& rho, int L) {
    if (static_cast<int>(rho.size()) != L) throw std::invalid_argument("spread: density length mismatch");
    const double c = 0.5 * (L + 1);
    double k = 0.0;
    for (int j = 0; j < L; ++j) k += std::abs((j + 1) - c) * rho[j];
    return k;
}

std::vector<double> spread_rate(const std::vector<double>& kappa, const std::vector<double>& times) {
    if (kappa.size() != times.size() || kappa.size() < 2)
        throw std::invalid_argument("spread_rate: need >= 2 aligned points");
    const std::size_t n = kappa.size();
    std::vector<double> rate(n);
    rate[0] = (kappa[1] - kappa[0]) / (times[1] - times[0]);
    rate[n - 1] = (kappa[n - 1] - kappa[n - 2]) / (times[n - 1] - times[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i) rate[i] = (kappa[i + 1] - kappa[i - 1]) / (times[i + 1] - times[i - 1]);
    return rate;
}

void DensitySeries::compute_kappas(int L) {
    kappa_plus.resize(rho.size());
    kappa_minus.resize(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        kappa_plus[i] = spread(rho[i].charge(), L);
        kappa_minus[i] = spread(rho[i].spin(), L);
    }
}

}  // namespace fhsim
