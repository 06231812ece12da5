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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "fhsim/kernels.hpp"

namespace fhsim::kernels {

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

Backend pick_default() {
    if (const char* env = std::getenv("FHSIM_KERNEL")) {
        const std::string s(env);
        if (s == "scalar") return Backend::scalar;
        if (s == "avx2" && avx2_supported()) return Backend::avx2;
    }
    return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
    static std::atomic<Backend> b{pick_default()};
    return b;
}

}  // namespace

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_supported())
        throw std::runtime_error("avx2 kernels not supported on this CPU");
    backend_slot().store(b, std::memory_order_relaxed);
}

std::string backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

void apply_1q(cxd* amps, std::size_t n, const cxd u[4], int q) {
    if (active_backend() == Backend::avx2)
        apply_1q_avx2(amps, n, u, q);
    else
        apply_1q_scalar(amps, n, u, q);
}

void apply_2q(cxd* amps, std::size_t n, const cxd u[16], int q1, int q2) {
    if (active_backend() == Backend::avx2)
        apply_2q_avx2(amps, n, u, q1, q2);
    else
        apply_2q_scalar(amps, n, u, q1, q2);
}

}  // namespace fhsim::kernels
