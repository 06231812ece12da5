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

#ifndef FHSIM_KERNELS_HPP
#define FHSIM_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <string>

namespace fhsim::kernels {

using cxd = std::complex<double>;

enum class Backend { scalar, avx2 };

bool avx2_supported();

// Active backend is process-global. Defaults to the best supported one;
// overridable via set_backend() or the FHSIM_KERNEL env var (scalar|avx2).
Backend active_backend();
void set_backend(Backend b);
std::string backend_name(Backend b);

// Amplitude ordering is little-endian: qubit q is bit q of the state index.
// u is row-major; for apply_2q rows/columns are indexed by 2*bit(q1)+bit(q2),
// i.e. the basis order |q1 q2> = |00>,|01>,|10>,|11>.
void apply_1q(cxd* amps, std::size_t n_amps, const cxd u[4], int q);
void apply_2q(cxd* amps, std::size_t n_amps, const cxd u[16], int q1, int q2);

// Reference kernels, always available (used by the equivalence tests).
void apply_1q_scalar(cxd* amps, std::size_t n_amps, const cxd u[4], int q);
void apply_2q_scalar(cxd* amps, std::size_t n_amps, const cxd u[16], int q1, int q2);

// AVX2 kernels; calling these without CPU support is undefined.
void apply_1q_avx2(cxd* amps, std::size_t n_amps, const cxd u[4], int q);
void apply_2q_avx2(cxd* amps, std::size_t n_amps, const cxd u[16], int q1, int q2);

}  // namespace fhsim::kernels

#endif  // FHSIM_KERNELS_HPP
