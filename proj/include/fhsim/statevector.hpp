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

#ifndef FHSIM_STATEVECTOR_HPP
#define FHSIM_STATEVECTOR_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "fhsim/rng.hpp"

namespace fhsim {

using cxd = std::complex<double>;

inline constexpr int kMaxQubits = 24;

struct ShotTable {
    int n_qubits = 0;
    uint64_t seed = 0;
    std::vector<uint64_t> bitstrings;

    int shots() const { return static_cast<int>(bitstrings.size()); }
};

struct ChannelEvent {
    enum class Kind { amplitude_damping, dephasing, readout_flip };
    Kind kind;
    int qubit;
    double probability;  // in [0, 1]
};

// Dense statevector over n qubits, little-endian (qubit 0 = least significant
// bit of the amplitude index).
class StateVector {
  public:
    explicit StateVector(int n_qubits);
    static StateVector basis_state(int n_qubits, uint64_t index);

    int n_qubits() const { return n_qubits_; }
    std::size_t size() const { return amps_.size(); }
    const std::vector<cxd>& amps() const { return amps_; }
    std::vector<cxd>& amps() { return amps_; }
    cxd amp(uint64_t index) const { return amps_[index]; }

    // u must be unitary within 1e-10; throws std::invalid_argument otherwise.
    void apply_1q(const Eigen::Matrix2cd& u, int q);
    // Basis order |q1 q2> = |00>,|01>,|10>,|11>; q1 != q2.
    void apply_2q(const Eigen::Matrix4cd& u, int q1, int q2);

    // Same entry points without the unitarity check (used by channels).
    void apply_1q_unchecked(const Eigen::Matrix2cd& m, int q);

    double norm_sq() const;
    void normalize();

    // <n_q> = sum of |amp|^2 over bitstrings with bit q set.
    double number_expectation(int q) const;

    // Marginal distribution over a subset of qubits (for locality tests).
    std::vector<double> marginal(const std::vector<int>& qubits) const;

    ShotTable sample_shots(int shots, uint64_t seed) const;

    // Monte-Carlo trajectory step for amplitude_damping or dephasing.
    // readout_flip events are classical and are rejected here.
    void apply_channel(const ChannelEvent& event, Rng& rng);

    // Fused one/two-pass implementations of the same channels (identical
    // statistics, fewer sweeps over the amplitudes).
    void apply_damping(int q, double p, Rng& rng);
    void apply_dephasing(int q, double p, Rng& rng);

  private:
    int n_qubits_;
    std::vector<cxd> amps_;
};

}  // namespace fhsim

#endif  // FHSIM_STATEVECTOR_HPP
