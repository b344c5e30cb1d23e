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

#include <cstdint>
#include <stdexcept>
#include <variant>

#include "bellsim/angle.hpp"

namespace bellsim {

/// Raised when a statistic cannot be formed, e.g. a run with no coincidences
/// or a detection profile that never yields a coincidence.
class DegenerateStatistics : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Hidden plane shared by both photons of a realist pair.
struct ClassicalLambda {
    Angle lambda;
    friend bool operator==(const ClassicalLambda&, const ClassicalLambda&) = default;
};

/// A quantum pair before the first measurement: no polarization exists yet.
struct QuantumUncollapsed {
    friend bool operator==(const QuantumUncollapsed&, const QuantumUncollapsed&) = default;
};

/// A quantum pair after the first measurement fixed both planes.
struct QuantumCollapsed {
    Angle polarization;
    friend bool operator==(const QuantumCollapsed&, const QuantumCollapsed&) = default;
};

using PairState = std::variant<ClassicalLambda, QuantumUncollapsed, QuantumCollapsed>;

bool has_polarization(const PairState& state) noexcept;

/// Throws std::logic_error for QuantumUncollapsed.
Angle polarization_of(const PairState& state);

enum class ChannelOutcome : std::uint8_t { Plus, Minus, Undetected };

bool is_detected(ChannelOutcome outcome) noexcept;

/// +1 for Plus, -1 for Minus. Throws std::logic_error for Undetected.
int channel_sign(ChannelOutcome outcome);

ChannelOutcome flipped(ChannelOutcome outcome) noexcept;

/// Tallies of one run. Coincidences are the four n_xy cells; singles are
/// pairs detected on one arm only; n_null pairs were lost on both arms.
struct CountsTable {
    std::uint64_t n_pp = 0;
    std::uint64_t n_pm = 0;
    std::uint64_t n_mp = 0;
    std::uint64_t n_mm = 0;
    std::uint64_t singles_a = 0;
    std::uint64_t singles_b = 0;
    std::uint64_t n_null = 0;
    std::uint64_t n_total = 0;

    void record(ChannelOutcome a, ChannelOutcome b) noexcept;

    std::uint64_t coincidences() const noexcept { return n_pp + n_pm + n_mp + n_mm; }

    /// n_total equals the sum of every other cell.
    bool is_conserved() const noexcept;

    CountsTable& operator+=(const CountsTable& other) noexcept;
    friend CountsTable operator+(CountsTable lhs, const CountsTable& rhs) noexcept {
        lhs += rhs;
        return lhs;
    }
    friend bool operator==(const CountsTable&, const CountsTable&) = default;
};

/// Relabels Plus and Minus on arm B.
CountsTable swap_channels_b(const CountsTable& counts) noexcept;

/// Exchanges the roles of the two arms.
CountsTable transpose(const CountsTable& counts) noexcept;

struct CorrelationEstimate {
    double r = 0.0;
    std::uint64_t n_coincidences = 0;
    double standard_error = 0.0;
};

}  // namespace bellsim
