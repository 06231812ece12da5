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

#ifndef FHSIM_RNG_HPP
#define FHSIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace fhsim {

// Mixing function used to derive independent child seeds (splitmix64 step).
inline uint64_t mix_seed(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t mix_seed(uint64_t a, uint64_t b) { return mix_seed(mix_seed(a) ^ b); }
inline uint64_t mix_seed(uint64_t a, uint64_t b, uint64_t c) { return mix_seed(mix_seed(a, b) ^ c); }

// Seedable PRNG wrapper around std::mt19937_64. The distributions are
// implemented here rather than with <random> adapters so that streams are
// bit-identical across standard libraries.
class Rng {
  public:
    explicit Rng(uint64_t seed) : engine_(mix_seed(seed)) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    // Marsaglia polar method; consumes a variable number of draws.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    // Index into a cumulative distribution (cdf ascending, back() ~ 1).
    template <class Vec>
    size_t sample_cdf(const Vec& cdf) {
        const double r = uniform() * cdf.back();
        size_t lo = 0, hi = cdf.size() - 1;
        while (lo < hi) {
            const size_t mid = (lo + hi) / 2;
            if (cdf[mid] <= r)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }

    Rng child(uint64_t stream) { return Rng(mix_seed(engine_(), stream)); }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Deterministic standard normal keyed by (seed, salt): query-order independent.
inline double keyed_normal(uint64_t seed, uint64_t salt) {
    Rng r(mix_seed(seed, salt));
    return r.normal();
}

}  // namespace fhsim

#endif  // FHSIM_RNG_HPP
