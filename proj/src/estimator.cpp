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

#include "bellsim/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "bellsim/analytic.hpp"

namespace bellsim {

CorrelationEstimate r_from_counts(const CountsTable& counts) {
    const std::uint64_t n = counts.coincidences();
    if (n == 0) {
        throw DegenerateStatistics("no coincidences: correlation is undefined");
    }
    const std::uint64_t agree = counts.n_pp + counts.n_mm;
    const std::uint64_t disagree = counts.n_pm + counts.n_mp;
    // difference in signed integers keeps the numerator exact
    const double numerator =
        static_cast<double>(static_cast<std::int64_t>(agree) - static_cast<std::int64_t>(disagree));
    const double r = std::clamp(numerator / static_cast<double>(n), -1.0, 1.0);
    return {r, n, std::sqrt(std::max(0.0, 1.0 - r * r) / static_cast<double>(n))};
}

double coincidence_fraction(const CountsTable& counts) {
    if (counts.n_total == 0) {
        throw DegenerateStatistics("empty run: coincidence fraction is undefined");
    }
    return static_cast<double>(counts.coincidences()) / static_cast<double>(counts.n_total);
}

double per_pair_correlation(const CountsTable& counts) {
    if (counts.n_total == 0) {
        throw DegenerateStatistics("empty run: correlation is undefined");
    }
    const auto agree = static_cast<std::int64_t>(counts.n_pp + counts.n_mm);
    const auto disagree = static_cast<std::int64_t>(counts.n_pm + counts.n_mp);
    return static_cast<double>(agree - disagree) / static_cast<double>(counts.n_total);
}

ChshResult chsh_from_runs(const CountsTable& c_ab, const CountsTable& c_ab2, const CountsTable& c_a2b,
                          const CountsTable& c_a2b2) {
    ChshResult out;
    out.per_setting = {r_from_counts(c_ab), r_from_counts(c_ab2), r_from_counts(c_a2b),
                       r_from_counts(c_a2b2)};
    out.s = chsh_s(out.per_setting[0].r, out.per_setting[1].r, out.per_setting[2].r,
                   out.per_setting[3].r);
    double variance = 0.0;
    for (const CorrelationEstimate& e : out.per_setting) {
        variance += e.standard_error * e.standard_error;
    }
    out.standard_error = std::sqrt(variance);
    return out;
}

}  // namespace bellsim
