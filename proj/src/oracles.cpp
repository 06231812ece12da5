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

#include "fhsim/oracles.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace fhsim::oracles {

namespace {

const std::complex<double> kI(0.0, 1.0);

std::vector<uint32_t> masks_with_weight(int L, int n) {
    std::vector<uint32_t> out;
    for (uint32_t m = 0; m < (uint32_t{1} << L); ++m)
        if (std::popcount(m) == n) out.push_back(m);
    return out;
}

// Per-spin sector matrix: hopping + local potentials + v_nn, over the masks.
Eigen::MatrixXd chain_hamiltonian(const HubbardParams& p, int spin, const std::vector<uint32_t>& masks,
                                  const std::vector<int>& index_of) {
    const long d = static_cast<long>(masks.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    for (long i = 0; i < d; ++i) {
        const uint32_t m = masks[i];
        double diag = 0.0;
        for (int j = 0; j < p.L; ++j) {
            if (m & (uint32_t{1} << j)) diag += p.eps_at(spin, j);
            if (j + 1 < p.L && (m & (uint32_t{1} << j)) && (m & (uint32_t{1} << (j + 1)))) diag += p.v_at(j);
        }
        h(i, i) = diag;
        for (int j = 0; j + 1 < p.L; ++j) {
            const uint32_t bj = uint32_t{1} << j;
            const uint32_t bk = uint32_t{1} << (j + 1);
            const bool occ_j = m & bj;
            const bool occ_k = m & bk;
            if (occ_j != occ_k) {
                const uint32_t m2 = m ^ bj ^ bk;
                const long i2 = index_of[m2];
                h(i, i2) += -p.J;  // adjacent hop, no string sign
            }
        }
    }
    return h;
}

std::vector<int> build_index(int L, const std::vector<uint32_t>& masks) {
    std::vector<int> idx(std::size_t{1} << L, -1);
    for (std::size_t i = 0; i < masks.size(); ++i) idx[masks[i]] = static_cast<int>(i);
    return idx;
}

}  // namespace

SectorBasis SectorBasis::make(int L, int n_up, int n_dn) {
    if (L < 1 || L > 16) throw std::invalid_argument("SectorBasis: L must be in [1, 16]");
    SectorBasis b;
    b.L = L;
    b.n_up = n_up;
    b.n_dn = n_dn;
    b.up_masks = masks_with_weight(L, n_up);
    b.dn_masks = masks_with_weight(L, n_dn);
    b.up_index = build_index(L, b.up_masks);
    b.dn_index = build_index(L, b.dn_masks);
    if (b.dim() > 1000000) throw std::invalid_argument("SectorBasis: dimension overflow");
    return b;
}

Eigen::MatrixXd sector_hamiltonian(const HubbardParams& p, const SectorBasis& basis) {
    const Eigen::MatrixXd hu = chain_hamiltonian(p, kSpinUp, basis.up_masks, basis.up_index);
    const Eigen::MatrixXd hd = chain_hamiltonian(p, kSpinDown, basis.dn_masks, basis.dn_index);
    const long du = static_cast<long>(basis.up_masks.size());
    const long dd = static_cast<long>(basis.dn_masks.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(du * dd, du * dd);
    for (long iu = 0; iu < du; ++iu)
        for (long ju = 0; ju < du; ++ju) {
            if (hu(iu, ju) == 0.0) continue;
            for (long id = 0; id < dd; ++id) h(basis.index(iu, id), basis.index(ju, id)) += hu(iu, ju);
        }
    for (long id = 0; id < dd; ++id)
        for (long jd = 0; jd < dd; ++jd) {
            if (hd(id, jd) == 0.0) continue;
            for (long iu = 0; iu < du; ++iu) h(basis.index(iu, id), basis.index(iu, jd)) += hd(id, jd);
        }
    if (p.U != 0.0) {
        for (long iu = 0; iu < du; ++iu)
            for (long id = 0; id < dd; ++id) {
                const int doubly = std::popcount(basis.up_masks[iu] & basis.dn_masks[id]);
                h(basis.index(iu, id), basis.index(iu, id)) += p.U * doubly;
            }
    }
    return h;
}

SectorState sector_ground_state(const HubbardParams& p, int n_up, int n_dn) {
    SectorState s;
    s.basis = SectorBasis::make(p.L, n_up, n_dn);
    const Eigen::MatrixXd h = sector_hamiltonian(p, s.basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    s.amps = es.eigenvectors().col(0).cast<std::complex<double>>();
    return s;
}

SectorState exact_evolve(const HubbardParams& p, const SectorState& psi0, double t) {
    const Eigen::MatrixXd h = sector_hamiltonian(p, psi0.basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const Eigen::VectorXcd coeffs = es.eigenvectors().adjoint().cast<std::complex<double>>() * psi0.amps;
    Eigen::VectorXcd rotated(coeffs.size());
    for (long k = 0; k < coeffs.size(); ++k)
        rotated(k) = coeffs(k) * std::exp(-kI * (es.eigenvalues()(k) * t));
    SectorState out;
    out.basis = psi0.basis;
    out.amps = es.eigenvectors().cast<std::complex<double>>() * rotated;
    return out;
}

double energy(const HubbardParams& p, const SectorState& psi) {
    const Eigen::MatrixXd h = sector_hamiltonian(p, psi.basis);
    const std::complex<double> e = psi.amps.adjoint() * (h * psi.amps);
    return e.real();
}

DensityPair densities(const SectorState& psi) {
    const SectorBasis& b = psi.basis;
    DensityPair d;
    d.up.assign(b.L, 0.0);
    d.dn.assign(b.L, 0.0);
    const long dd = static_cast<long>(b.dn_masks.size());
    for (long i = 0; i < psi.amps.size(); ++i) {
        const double w = std::norm(psi.amps(i));
        if (w == 0.0) continue;
        const uint32_t mu = b.up_masks[i / dd];
        const uint32_t md = b.dn_masks[i % dd];
        for (int j = 0; j < b.L; ++j) {
            if (mu & (uint32_t{1} << j)) d.up[j] += w;
            if (md & (uint32_t{1} << j)) d.dn[j] += w;
        }
    }
    return d;
}

namespace {

struct ChainPropagators {
    Eigen::MatrixXcd odd, even;  // exp(-i tau h_parity)
};

ChainPropagators chain_propagators(const HubbardParams& p, const std::vector<uint32_t>& masks,
                                   const std::vector<int>& index_of) {
    // Hopping-only sub-Hamiltonians restricted to odd/even bonds. Potentials
    // and v_nn are not part of the hopping stages.
    const long d = static_cast<long>(masks.size());
    Eigen::MatrixXd hodd = Eigen::MatrixXd::Zero(d, d), heven = Eigen::MatrixXd::Zero(d, d);
    for (long i = 0; i < d; ++i) {
        const uint32_t m = masks[i];
        for (int j = 0; j + 1 < p.L; ++j) {
            const uint32_t bj = uint32_t{1} << j;
            const uint32_t bk = uint32_t{1} << (j + 1);
            if (((m & bj) != 0) != ((m & bk) != 0)) {
                const long i2 = index_of[m ^ bj ^ bk];
                (j % 2 == 0 ? hodd : heven)(i, i2) += -p.J;
            }
        }
    }
    auto expm = [&](const Eigen::MatrixXd& h) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        Eigen::VectorXcd ph(es.eigenvalues().size());
        for (long k = 0; k < ph.size(); ++k) ph(k) = std::exp(-kI * (es.eigenvalues()(k) * p.tau));
        return (es.eigenvectors().cast<std::complex<double>>() * ph.asDiagonal() *
                es.eigenvectors().transpose().cast<std::complex<double>>())
            .eval();
    };
    ChainPropagators cp;
    cp.odd = expm(hodd);
    cp.even = expm(heven);
    return cp;
}

}  // namespace

SectorState trotterized_reference(const HubbardParams& p, const SectorState& psi0, int eta, bool hopping_only) {
    const SectorBasis& b = psi0.basis;
    const long du = static_cast<long>(b.up_masks.size());
    const long dd = static_cast<long>(b.dn_masks.size());
    const ChainPropagators up = chain_propagators(p, b.up_masks, b.up_index);
    const ChainPropagators dn = chain_propagators(p, b.dn_masks, b.dn_index);

    // U-stage phases: diag over (iu, id) with odd/even site masks.
    Eigen::VectorXcd u_odd(du * dd), u_even(du * dd);
    uint32_t odd_mask = 0, even_mask = 0;
    for (int j = 0; j < p.L; ++j) (j % 2 == 0 ? odd_mask : even_mask) |= uint32_t{1} << j;
    for (long iu = 0; iu < du; ++iu)
        for (long id = 0; id < dd; ++id) {
            const uint32_t both = b.up_masks[iu] & b.dn_masks[id];
            u_odd(b.index(iu, id)) = std::exp(-kI * (p.tau * p.U * std::popcount(both & odd_mask)));
            u_even(b.index(iu, id)) = std::exp(-kI * (p.tau * p.U * std::popcount(both & even_mask)));
        }

    Eigen::MatrixXcd m = Eigen::Map<const Eigen::MatrixXcd>(psi0.amps.data(), dd, du);
    // amps(index(iu,id)) = m(id, iu): column-major map puts dn fastest.
    for (int step = 0; step < eta; ++step) {
        m = (dn.odd * m).eval();
        m = (m * up.odd.transpose()).eval();
        if (!hopping_only) {
            for (long iu = 0; iu < du; ++iu)
                for (long id = 0; id < dd; ++id) m(id, iu) *= u_odd(b.index(iu, id));
            for (long iu = 0; iu < du; ++iu)
                for (long id = 0; id < dd; ++id) m(id, iu) *= u_even(b.index(iu, id));
        }
        m = (dn.even * m).eval();
        m = (m * up.even.transpose()).eval();
    }
    SectorState out;
    out.basis = b;
    out.amps = Eigen::Map<const Eigen::VectorXcd>(m.data(), du * dd);
    return out;
}

std::vector<double> free_propagator(const Eigen::MatrixXd& h_single, const Eigen::MatrixXd& orbitals, double t) {
    if ((h_single - h_single.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("free_propagator: h_single must be hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h_single);
    Eigen::VectorXcd ph(es.eigenvalues().size());
    for (long k = 0; k < ph.size(); ++k) ph(k) = std::exp(-kI * (es.eigenvalues()(k) * t));
    const Eigen::MatrixXcd u =
        es.eigenvectors().cast<std::complex<double>>() * ph.asDiagonal() *
        es.eigenvectors().transpose().cast<std::complex<double>>();
    const Eigen::MatrixXcd evolved = u * orbitals.cast<std::complex<double>>();
    std::vector<double> dens(h_single.rows(), 0.0);
    for (long j = 0; j < evolved.rows(); ++j)
        for (long k = 0; k < evolved.cols(); ++k) dens[j] += std::norm(evolved(j, k));
    return dens;
}

SectorState project_statevector(const StateVector& state, const SectorBasis& basis) {
    SectorState out;
    out.basis = basis;
    out.amps.resize(basis.dim());
    const long dd = static_cast<long>(basis.dn_masks.size());
    for (long iu = 0; iu < static_cast<long>(basis.up_masks.size()); ++iu)
        for (long id = 0; id < dd; ++id) {
            const uint64_t idx = basis.up_masks[iu] | (static_cast<uint64_t>(basis.dn_masks[id]) << basis.L);
            out.amps(basis.index(iu, id)) = state.amp(idx);
        }
    return out;
}

StateVector embed_statevector(const SectorState& psi) {
    StateVector s = StateVector::basis_state(2 * psi.basis.L, 0);
    auto& amps = s.amps();
    amps[0] = 0.0;
    const long dd = static_cast<long>(psi.basis.dn_masks.size());
    for (long i = 0; i < psi.amps.size(); ++i) {
        const uint64_t idx =
            psi.basis.up_masks[i / dd] | (static_cast<uint64_t>(psi.basis.dn_masks[i % dd]) << psi.basis.L);
        amps[idx] = psi.amps(i);
    }
    return s;
}

}  // namespace fhsim::oracles
