// Copyright 2026 The permqc Authors
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

// The standard distributions are implementation-defined, so output files would
// differ between standard libraries. These helpers only depend on the raw
// mt19937_64 stream, which is fully specified.

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace permqc {

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(std::mt19937_64 &rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, bound). bound must be positive.
inline uint64_t uniform_below(std::mt19937_64 &rng, uint64_t bound) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

template <typename T>
void shuffle_in_place(std::span<T> items, std::mt19937_64 &rng) {
    for (size_t i = items.size(); i > 1; i--) {
        size_t j = uniform_below(rng, i);
        std::swap(items[i - 1], items[j]);
    }
}

/// Independent stream for (seed, index), e.g. one per Monte-Carlo sample.
inline std::mt19937_64 derived_rng(uint64_t seed, uint64_t index) {
    std::seed_seq seq{
        static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(index),
        static_cast<uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace permqc
