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

#include "fhsim/statevector.hpp"

#include <cmath>
#include <stdexcept>

#include "fhsim/kernels.hpp"

namespace fhsim {

namespace {

void check_qubit(int q, int n) {
    if (q < 0 || q >= n) throw std::out_of_range("qubit index out of range");
}

bool is_unitary(const Eigen::MatrixXcd& u, double tol) {
    const Eigen::MatrixXcd d = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff() < tol;
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw std::invalid_argument("n_qubits must be in [1, 24]");
    amps_.assign(std::size_t{1} << n_qubits, cxd(0.0, 0.0));
    amps_[0] = cxd(1.0, 0.0);
}

StateVector StateVector::basis_state(int n_qubits, uint64_t index) {
    StateVector s(n_qubits);
    s.amps_[0] = cxd(0.0, 0.0);
    s.amps_.at(index) = cxd(1.0, 0.0);
    return s;
}

void StateVector::apply_1q(const Eigen::Matrix2cd& u, int q) {
    check_qubit(q, n_qubits_);
    if (!is_unitary(u, 1e-10)) throw std::invalid_argument("apply_1q: matrix is not unitary");
    apply_1q_unchecked(u, q);
}

void StateVector::apply_1q_unchecked(const Eigen::Matrix2cd& m, int q) {
    const cxd u[4] = {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
    kernels::apply_1q(amps_.data(), amps_.size(), u, q);
}

void StateVector::apply_2q(const Eigen::Matrix4cd& u, int q1, int q2) {
    check_qubit(q1, n_qubits_);
    check_qubit(q2, n_qubits_);
    if (q1 == q2) throw std::invalid_argument("apply_2q: q1 == q2");
    if (!is_unitary(u, 1e-10)) throw std::invalid_argument("apply_2q: matrix is not unitary");
    cxd m[16];
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m[4 * r + c] = u(r, c);
    kernels::apply_2q(amps_.data(), amps_.size(), m, q1, q2);
}

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const cxd& a : amps_) s += std::norm(a);
    return s;
}

void StateVector::normalize() {
    const double n = std::sqrt(norm_sq());
    if (n == 0.0) throw std::runtime_error("cannot normalize zero state");
    const double inv = 1.0 / n;
    for (cxd& a : amps_) a *= inv;
}

double StateVector::number_expectation(int q) const {
    check_qubit(q, n_qubits_);
    const std::size_t bit = std::size_t{1} << q;
    double s = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (i & bit) s += std::norm(amps_[i]);
    return s;
}

std::vector<double> StateVector::marginal(const std::vector<int>& qubits) const {
    std::vector<double> out(std::size_t{1} << qubits.size(), 0.0);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        std::size_t key = 0;
        for (std::size_t k = 0; k < qubits.size(); ++k)
            if (i & (std::size_t{1} << qubits[k])) key |= std::size_t{1} << k;
        out[key] += std::norm(amps_[i]);
    }
    return out;
}

ShotTable StateVector::sample_shots(int shots, uint64_t seed) const {
    if (shots < 1) throw std::invalid_argument("sample_shots: shots must be >= 1");
    std::vector<double> cdf(amps_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        acc += std::norm(amps_[i]);
        cdf[i] = acc;
    }
    Rng rng(seed);
    ShotTable table;
    table.n_qubits = n_qubits_;
    table.seed = seed;
    table.bitstrings.reserve(shots);
    for (int s = 0; s < shots; ++s) table.bitstrings.push_back(rng.sample_cdf(cdf));
    return table;
}

void StateVector::apply_channel(const ChannelEvent& event, Rng& rng) {
    if (event.probability < 0.0 || event.probability > 1.0)
        throw std::invalid_argument("channel probability must be in [0, 1]");
    check_qubit(event.qubit, n_qubits_);
    switch (event.kind) {
        case ChannelEvent::Kind::dephasing:
            apply_dephasing(event.qubit, event.probability, rng);
            return;
        case ChannelEvent::Kind::amplitude_damping:
            apply_damping(event.qubit, event.probability, rng);
            return;
        case ChannelEvent::Kind::readout_flip:
            throw std::invalid_argument("readout_flip acts on classical bits at sampling time");
    }
}

void StateVector::apply_dephasing(int q, double p, Rng& rng) {
    if (p <= 0.0) {
        rng.bernoulli(0.0);  // keep the stream aligned
        return;
    }
    if (!rng.bernoulli(p)) return;
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t base = 0; base < amps_.size(); base += 2 * bit)
        for (std::size_t i = base; i < base + bit; ++i) amps_[i | bit] = -amps_[i | bit];
}

void StateVector::apply_damping(int q, double p, Rng& rng) {
    const std::size_t bit = std::size_t{1} << q;
    double occ = 0.0;
    for (std::size_t base = 0; base < amps_.size(); base += 2 * bit)
        for (std::size_t i = base; i < base + bit; ++i) occ += std::norm(amps_[i | bit]);
    if (rng.bernoulli(p * occ)) {
        // jump |1> -> |0>, renormalized by the jump weight
        const double inv = 1.0 / std::sqrt(occ);
        for (std::size_t base = 0; base < amps_.size(); base += 2 * bit)
            for (std::size_t i = base; i < base + bit; ++i) {
                amps_[i] = amps_[i | bit] * inv;
                amps_[i | bit] = cxd(0.0, 0.0);
            }
    } else if (p > 0.0) {
        // no-jump Kraus diag(1, sqrt(1-p)) with the analytic renormalization
        const double inv = 1.0 / std::sqrt(1.0 - p * occ);
        const double s1 = std::sqrt(1.0 - p) * inv;
        for (std::size_t base = 0; base < amps_.size(); base += 2 * bit)
            for (std::size_t i = base; i < base + bit; ++i) {
                amps_[i] *= inv;
                amps_[i | bit] *= s1;
            }
    }
}

}  // namespace fhsim
