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
#include <optional>
#include <utility>
#include <variant>

#include "bellsim/angle.hpp"
#include "bellsim/detection.hpp"
#include "bellsim/random.hpp"
#include "bellsim/types.hpp"

namespace bellsim {

enum class Model : std::uint8_t { Classical, Quantum };

/// Every pair carries the same hidden plane.
struct FixedTheta {
    Angle theta;
    friend bool operator==(const FixedTheta&, const FixedTheta&) = default;
};

/// Hidden plane uniform on [0, pi).
struct UniformRandom {
    friend bool operator==(const UniformRandom&, const UniformRandom&) = default;
};

struct SourceSpec {
    std::variant<FixedTheta, UniformRandom> distribution = UniformRandom{};
    Model model = Model::Classical;

    /// A quantum pair has no plane before measurement, so FixedTheta with
    /// the quantum model throws std::invalid_argument.
    void validate() const;

    friend bool operator==(const SourceSpec&, const SourceSpec&) = default;
};

struct ExperimentConfig {
    SourceSpec source;
    Angle analyzer_a;
    Angle analyzer_b;
    std::uint64_t n_pairs = 1;
    std::uint64_t seed = 0;
    DetectionProfile detection_a;
    DetectionProfile detection_b;
    /// Survival probability of the first quantum photon, which has no
    /// polarization for a profile to act on.
    double quantum_baseline_eta = 1.0;

    void validate() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Throws std::invalid_argument for a quantum source.
Angle draw_lambda(const SourceSpec& source, PairStream& stream);

/// Malus' law: Plus with probability cos^2(malus_delta), otherwise Minus.
ChannelOutcome measure_classical(Angle lambda, Angle analyzer, PairStream& stream);

struct QuantumMeasurement {
    ChannelOutcome a = ChannelOutcome::Plus;
    ChannelOutcome b = ChannelOutcome::Plus;
    /// QuantumCollapsed onto the plane selected by the arm A outcome.
    PairState state = QuantumUncollapsed{};
};

/// Arm A gives Plus or Minus with probability 1/2 and collapses the pair
/// onto a (Plus) or a + pi/2 (Minus); arm B then obeys Malus' law.
QuantumMeasurement measure_quantum_pair(Angle a, Angle b, PairStream& stream);

/// Crosstalk first, then loss, both evaluated at the folded angle between
/// `polarization` and `analyzer`. Without a polarization the photon survives
/// with probability `baseline` and is never misrouted.
ChannelOutcome apply_detection(ChannelOutcome ideal, std::optional<Angle> polarization,
                               Angle analyzer, const DetectionProfile& profile, double baseline,
                               PairStream& stream);

/// Outcomes of pair `pair_index`; a pure function of (config, pair_index).
/// Throws std::out_of_range when pair_index >= n_pairs.
std::pair<ChannelOutcome, ChannelOutcome> run_pair(const ExperimentConfig& config,
                                                   std::uint64_t pair_index);

/// Tallies pairs [begin, end).
CountsTable run_range(const ExperimentConfig& config, std::uint64_t begin, std::uint64_t end);

/// Tallies every pair. `threads` only changes how the index range is split;
/// the result is identical for any value (0 means hardware concurrency).
CountsTable run_experiment(const ExperimentConfig& config, unsigned threads = 1);

}  // namespace bellsim
