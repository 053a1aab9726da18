// Copyright 2026 The dsqcsim Authors
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

#pragma once

#include <cstddef>
#include <cstdint>

#include "dsqc/error.hpp"

namespace dsqc::qcore {

/// Seedable counter-based random stream (SplitMix64: a Weyl counter pushed
/// through a bit-mixing finalizer). Every stochastic operation in the library
/// takes one of these explicitly, so any simulation is a pure function of its
/// seed. `split(lane)` derives an independent child stream as a pure function
/// of (seed, lane); Monte-Carlo trials use one lane per trial.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : key_(seed) {}

    std::uint64_t next_u64() { return mix(key_ + kGamma * ++counter_); }

    /// Uniform in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). Rejection-sampled, so unbiased.
    std::size_t next_below(std::size_t bound) {
        if (bound == 0) {
            throw contract_error("RandomStream::next_below: bound must be positive");
        }
        const std::uint64_t b = bound;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
        for (;;) {
            std::uint64_t v = next_u64();
            if (v < limit) {
                return static_cast<std::size_t>(v % b);
            }
        }
    }

    /// Child stream for the given lane, independent of this stream's state.
    RandomStream split(std::uint64_t lane) const {
        return RandomStream(mix(key_ ^ mix(lane + kGamma)));
    }

  private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace dsqc::qcore
