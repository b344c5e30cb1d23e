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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bellsim/analytic.hpp"
#include "bellsim/detection.hpp"

namespace bellsim {

enum class ArmTarget : std::uint8_t { Both, A, B };

/// One searched parameter of the detection profile family: eta0, eps or p
/// for efficiency, c or q for crosstalk.
struct ParameterAxis {
    std::string name;
    ArmTarget arm = ArmTarget::Both;
    std::vector<double> values;

    /// `resolution` evenly spaced points from `min` to `max` inclusive.
    static ParameterAxis linear(std::string name, double min, double max, std::size_t resolution,
                                ArmTarget arm = ArmTarget::Both);

    friend bool operator==(const ParameterAxis&, const ParameterAxis&) = default;
};

/// Post-selected correlation at a = b for a uniformly random hidden plane.
struct MaxParallelR {
    Angle setting;
    friend bool operator==(const MaxParallelR&, const MaxParallelR&) = default;
};

struct MaxChsh {
    ChshSettings settings = ChshSettings::standard();
    friend bool operator==(const MaxChsh&, const MaxChsh&) = default;
};

/// Negative RMS distance between post-selected and quantum expectations.
struct MatchQuantumCurve {
    std::vector<std::pair<Angle, Angle>> grid;
    friend bool operator==(const MatchQuantumCurve&, const MatchQuantumCurve&) = default;
};

using SearchObjective = std::variant<MaxParallelR, MaxChsh, MatchQuantumCurve>;

std::string objective_name(const SearchObjective& objective);

struct SearchSpace {
    /// Family templates. The axes overwrite their named parameters; every
    /// other parameter keeps the template value.
    DetectionProfile profile_a;
    DetectionProfile profile_b;
    std::vector<ParameterAxis> axes;
    SearchObjective objective = MaxParallelR{};
    std::size_t quadrature_nodes = kDefaultQuadratureNodes;

    /// Throws std::invalid_argument for empty axes, unknown parameter names,
    /// or an empty objective grid.
    void validate() const;

    /// "p" for an axis on both arms, "a.p" / "b.p" for one arm.
    std::vector<std::string> parameter_labels() const;

    friend bool operator==(const SearchSpace&, const SearchSpace&) = default;
};

/// Writes `value` into the named parameter of `profile`'s current family.
/// Throws std::invalid_argument when the family has no such parameter.
void set_profile_parameter(DetectionProfile& profile, const std::string& name, double value);

/// Profiles of arms A and B at one grid point (one value per axis).
std::pair<DetectionProfile, DetectionProfile> profiles_at(const SearchSpace& space,
                                                          std::span<const double> params);

struct ObjectiveValue {
    double objective = 0.0;
    /// Coincidence probability averaged over lambda (and over settings).
    double efficiency = 0.0;
};

/// Quadrature evaluation, no sampling. Throws DegenerateStatistics when the
/// profiles never yield a coincidence.
ObjectiveValue objective_value(std::span<const double> params, const SearchSpace& space);

struct SearchPoint {
    std::vector<double> params;
    double objective = 0.0;
    double efficiency = 0.0;
    bool degenerate = false;
};

struct SearchReport {
    std::vector<std::string> parameter_labels;
    std::vector<double> best_params;
    double best_objective = 0.0;
    double best_efficiency = 0.0;
    /// Every grid point, last axis varying fastest.
    std::vector<SearchPoint> trace;
};

/// Exhaustive search of the Cartesian grid. Ties go to the lexicographically
/// smallest parameter tuple. The trace order does not depend on `threads`.
/// Throws DegenerateStatistics when every point is degenerate.
SearchReport grid_search(const SearchSpace& space, unsigned threads = 1);

struct MonteCarloConfirmation {
    double analytic = 0.0;
    double simulated = 0.0;
    double standard_error = 0.0;

    bool agrees_within(double sigmas) const;
};

/// Re-measures the objective at `params` with the realist Monte Carlo engine
/// (uniform hidden plane). Defined for MaxParallelR and MaxChsh.
MonteCarloConfirmation confirm_with_monte_carlo(const SearchSpace& space, std::span<const double> params,
                                                std::uint64_t n_pairs, std::uint64_t seed,
                                                unsigned threads = 1);

}  // namespace bellsim
