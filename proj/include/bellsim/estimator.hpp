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

#include "bellsim/types.hpp"

namespace bellsim {

/// Correlation of the coincidence cells,
///   r = (n_pp + n_mm - n_pm - n_mp) / (n_pp + n_mm + n_pm + n_mp),
/// with standard error sqrt((1 - r^2) / N). Singles and nulls do not enter.
/// Throws DegenerateStatistics when there are no coincidences.
CorrelationEstimate r_from_counts(const CountsTable& counts);

/// Share of emitted pairs that produced a coincidence. Throws
/// DegenerateStatistics for an empty run.
double coincidence_fraction(const CountsTable& counts);

/// Diagnostic: the same signed sum normalized by every emitted pair, so that
/// singles and nulls count as zero. Not the estimator used for r.
double per_pair_correlation(const CountsTable& counts);

struct ChshResult {
    double s = 0.0;
    /// ab, ab', a'b, a'b'.
    std::array<CorrelationEstimate, 4> per_setting{};
    /// Root-sum-square of the four per-setting errors.
    double standard_error = 0.0;
};

ChshResult chsh_from_runs(const CountsTable& c_ab, const CountsTable& c_ab2, const CountsTable& c_a2b,
                          const CountsTable& c_a2b2);

}  // namespace bellsim
