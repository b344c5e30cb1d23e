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

#pragma once

#include <array>
#include <cstdint>

namespace bellsim {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3", SC 2011). A pure function of (counter, key).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// SplitMix64 finalizer; used to derive independent seeds from a base seed.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// The random stream owned by one photon pair.
///
/// Every draw is Philox4x32-10 keyed by the run seed with counter
/// (draw block, pair index), so the numbers a pair sees depend only on
/// (seed, pair_index, draw_counter). How the pair range is split among
/// workers cannot change them.
class PairStream {
  public:
    PairStream(std::uint64_t seed, std::uint64_t pair_index) noexcept;

    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double next_open_unit() noexcept;

    /// True with probability `p`. p <= 0 never fires, p >= 1 always fires.
    bool bernoulli(double p) noexcept;

    /// Number of 64-bit words consumed so far.
    std::uint64_t draw_counter() const noexcept { return draws_; }

  private:
    PhiloxKey key_;
    std::uint32_t pair_lo_;
    std::uint32_t pair_hi_;
    std::uint64_t draws_ = 0;
    std::array<std::uint64_t, 2> block_{};
};

}  // namespace bellsim
