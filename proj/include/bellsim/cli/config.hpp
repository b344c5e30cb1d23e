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
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "bellsim/montecarlo.hpp"
#include "bellsim/search.hpp"

namespace bellsim::cli {

/// A configuration document that is malformed, incomplete or out of range.
/// The message starts with the offending key path.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class SweepAxis : std::uint8_t { Delta, Theta, Parameter };

struct SweepSpec {
    SweepAxis axis = SweepAxis::Delta;
    /// Parameter axis only: profile parameter name and the arm(s) it acts on.
    std::string parameter;
    ArmTarget arm = ArmTarget::Both;
    /// Radians for the angle axes; as given for a parameter axis.
    std::vector<double> values;

    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

/// Everything `simulate`, `sweep` and `chsh` read from a run document.
struct RunDocument {
    ExperimentConfig experiment;
    /// Second settings a', b' for `chsh`.
    std::optional<Angle> analyzer_a2;
    std::optional<Angle> analyzer_b2;
    std::optional<SweepSpec> sweep;

    friend bool operator==(const RunDocument&, const RunDocument&) = default;
};

struct SearchDocument {
    SearchSpace space;
    /// Pairs for the Monte Carlo run that confirms the optimum; none skips it.
    std::optional<std::uint64_t> confirm_pairs;
    std::uint64_t confirm_seed = 0;

    friend bool operator==(const SearchDocument&, const SearchDocument&) = default;
};

using ParsedConfig = std::variant<RunDocument, SearchDocument>;

/// Parses a JSON document. A top-level "search" key selects a search
/// document; anything else is a run document. Unknown keys are rejected.
ParsedConfig parse_config(std::string_view text);

RunDocument parse_run_document(std::string_view text);
SearchDocument parse_search_document(std::string_view text);

/// Canonical JSON form; parse_config(render(doc).dump()) reproduces doc.
nlohmann::json render(const RunDocument& document);
nlohmann::json render(const SearchDocument& document);

nlohmann::json render_profile(const DetectionProfile& profile);

}  // namespace bellsim::cli
