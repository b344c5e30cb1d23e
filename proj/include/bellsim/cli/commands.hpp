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
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellsim/cli/config.hpp"
#include "bellsim/estimator.hpp"
#include "bellsim/types.hpp"

namespace bellsim::cli {

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum ExitCode : int {
    kExitSuccess = 0,
    kExitFailure = 1,
    kExitConfigError = 2,
    kExitDegenerate = 3,
    kExitIoError = 4,
};

/// Shortest decimal text that reads back to exactly `value`.
std::string format_number(double value);

/// Header `n_pp,n_pm,n_mp,n_mm,singles_a,singles_b,n_null,n_total` and one row.
std::string counts_csv(const CountsTable& counts);

enum class AnalyticForm { Parallel, TwoAngle, Lhv, Quantum };

struct AnalyticRequest {
    AnalyticForm form = AnalyticForm::Parallel;
    /// Radians: theta (Parallel), theta1 (TwoAngle) or a - b (Lhv, Quantum).
    std::vector<double> grid;
    /// Second angle for the two-angle form.
    double theta2 = 0.0;
};

/// Two-column CSV of the chosen closed form. Throws ConfigError for an
/// empty grid.
std::string analytic_table(const AnalyticRequest& request);

struct SweepRow {
    double value = 0.0;
    /// Empty when the point produced no coincidences.
    std::optional<CorrelationEstimate> estimate;
    double coincidence_fraction = 0.0;
    std::uint64_t n_coincidences = 0;
};

/// Runs every point of `document.sweep` with the document's seed.
std::vector<SweepRow> run_sweep(const RunDocument& document, unsigned threads);

/// Long format: `axis,value,r,se,coincidence_fraction,n_coincidences`.
std::string sweep_csv(const std::string& axis_label, const std::vector<SweepRow>& rows);

std::string sweep_axis_label(const SweepSpec& sweep);

struct ChshRun {
    std::array<CountsTable, 4> counts;
    ChshResult result;
};

/// Four runs at ab, ab', a'b, a'b'; run i uses seed splitmix64(seed + i).
/// Throws ConfigError when a' or b' is missing.
ChshRun run_chsh(const RunDocument& document, unsigned threads);

/// Entry point of the `bellsim` tool. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bellsim::cli
