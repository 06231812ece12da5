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

#include "fhsim/kernels.hpp"

#include <algorithm>

namespace fhsim::kernels {

void apply_1q_scalar(cxd* a, std::size_t n, const cxd u[4], int q) {
    const std::size_t bit = std::size_t{1} << q;
    const cxd u00 = u[0], u01 = u[1], u10 = u[2], u11 = u[3];
    for (std::size_t base = 0; base < n; base += 2 * bit) {
        for (std::size_t i = base; i < base + bit; ++i) {
            const cxd a0 = a[i];
            const cxd a1 = a[i | bit];
            a[i] = u00 * a0 + u01 * a1;
            a[i | bit] = u10 * a0 + u11 * a1;
        }
    }
}

void apply_2q_scalar(cxd* a, std::size_t n, const cxd u[16], int q1, int q2) {
    const std::size_t b1 = std::size_t{1} << q1;
    const std::size_t b2 = std::size_t{1} << q2;
    const std::size_t lo = std::min(b1, b2);
    const std::size_t hi = std::max(b1, b2);
    for (std::size_t blk = 0; blk < n; blk += 2 * hi) {
        for (std::size_t mid = blk; mid < blk + hi; mid += 2 * lo) {
            for (std::size_t i = mid; i < mid + lo; ++i) {
                const cxd a00 = a[i];
                const cxd a01 = a[i | b2];
                const cxd a10 = a[i | b1];
                const cxd a11 = a[i | b1 | b2];
                a[i] = u[0] * a00 + u[1] * a01 + u[2] * a10 + u[3] * a11;
                a[i | b2] = u[4] * a00 + u[5] * a01 + u[6] * a10 + u[7] * a11;
                a[i | b1] = u[8] * a00 + u[9] * a01 + u[10] * a10 + u[11] * a11;
                a[i | b1 | b2] = u[12] * a00 + u[13] * a01 + u[14] * a10 + u[15] * a11;
            }
        }
    }
}

}  // namespace fhsim::kernels
