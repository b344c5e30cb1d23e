// Copyright 2026 The bellsim Authors
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

#include "bellsim/random.hpp"

namespace bellsim {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

void philox_round(PhiloxCounter& ctr, const PhiloxKey& key) noexcept {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        philox_round(counter, key);
    }
    return counter;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    std::uint64_t z = x + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

PairStream::PairStream(std::uint64_t seed, std::uint64_t pair_index) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      pair_lo_(static_cast<std::uint32_t>(pair_index)),
      pair_hi_(static_cast<std::uint32_t>(pair_index >> 32)) {}

std::uint64_t PairStream::next_u64() noexcept {
    // one Philox block yields two words
    if (draws_ % 2 == 0) {
        const std::uint64_t block_index = draws_ / 2;
        const PhiloxCounter out = philox4x32_10(
            {static_cast<std::uint32_t>(block_index), static_cast<std::uint32_t>(block_index >> 32),
             pair_lo_, pair_hi_},
            key_);
        block_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
        block_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    }
    return block_[draws_++ % 2];
}

double PairStream::next_open_unit() noexcept {
    constexpr double kScale = 0x1.0p-53;
    return (static_cast<double>(next_u64() >> 11) + 0.5) * kScale;
}

bool PairStream::bernoulli(double p) noexcept { return next_open_unit() < p; }

}  // namespace bellsim
