// Copyright 2026 The RBSV Authors
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

#ifndef RBSV_SEEDING_H
#define RBSV_SEEDING_H

#include <cstdint>

namespace rbsv {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of the random stream for repetition `rep` of sequence `j`. Each input
/// passes through its own mixing round, so swapping j and rep changes the seed.
inline uint64_t seed_plan(uint64_t master_seed, uint64_t j, uint64_t rep) {
    uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ splitmix64(j + 0x632BE59BD9B4E019ULL));
    h = splitmix64(h ^ splitmix64(rep + 0x85157AF5ULL * 0x9E3779B97F4A7C15ULL));
    return h;
}

/// Stream indices used with seed_plan.
inline constexpr uint64_t kSequenceStream = 0;
inline constexpr uint64_t kNoiseStream = 1;

}  // namespace rbsv

#endif
