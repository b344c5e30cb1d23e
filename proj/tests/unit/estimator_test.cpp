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

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "bellsim/analytic.hpp"
#include "bellsim/montecarlo.hpp"
#include "bellsim/random.hpp"

using namespace bellsim;

namespace {

CountsTable cells(std::uint64_t pp, std::uint64_t pm, std::uint64_t mp, std::uint64_t mm) {
    return {pp, pm, mp, mm, 0, 0, 0, pp + pm + mp + mm};
}

ChshResult simulated_chsh(Model model, std::uint64_t n, std::uint64_t seed) {
    const auto pairs = ChshSettings::standard().pairs();
    std::array<CountsTable, 4> runs;
    for (std::size_t i = 0; i < 4; ++i) {
        ExperimentConfig c;
        c.source = {UniformRandom{}, model};
        c.analyzer_a = pairs[i].first;
        c.analyzer_b = pairs[i].second;
        c.n_pairs = n;
        c.seed = splitmix64(seed + i);
        runs[i] = run_experiment(c);
    }
    return chsh_from_runs(runs[0], runs[1], runs[2], runs[3]);
}

}  // namespace

TEST(RFromCounts, examples) {
    EXPECT_EQ(r_from_counts(cells(50, 0, 0, 50)).r, 1.0);
    EXPECT_EQ(r_from_counts(cells(50, 0, 0, 50)).standard_error, 0.0);
    EXPECT_EQ(r_from_counts(cells(25, 25, 25, 25)).r, 0.0);
    const CorrelationEstimate e = r_from_counts(cells(60, 10, 10, 20));
    EXPECT_DOUBLE_EQ(e.r, 0.6);
    EXPECT_EQ(e.n_coincidences, 100u);
    EXPECT_DOUBLE_EQ(e.standard_error, std::sqrt((1.0 - 0.36) / 100.0));
}

TEST(RFromCounts, ignores_singles_and_nulls) {
    CountsTable c = cells(60, 10, 10, 20);
    c.singles_a = 1000;
    c.singles_b = 7;
    c.n_null = 123456;
    c.n_total += 1000 + 7 + 123456;
    EXPECT_DOUBLE_EQ(r_from_counts(c).r, 0.6);
}

TEST(RFromCounts, zero_coincidences_is_degenerate) {
    const CountsTable c{0, 0, 0, 0, 3, 4, 5, 12};
    EXPECT_THROW(r_from_counts(c), DegenerateStatistics);
}

TEST(RFromCounts, properties) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const CountsTable c = cells(rng() % 1000, rng() % 1000, rng() % 1000, 1 + rng() % 1000);
        const CorrelationEstimate e = r_from_counts(c);
        ASSERT_GE(e.r, -1.0);
        ASSERT_LE(e.r, 1.0);
        const std::uint64_t k = 1 + rng() % 50;
        ASSERT_EQ(r_from_counts(cells(c.n_pp * k, c.n_pm * k, c.n_mp * k, c.n_mm * k)).r, e.r);
        ASSERT_EQ(r_from_counts(swap_channels_b(c)).r, -e.r);
    }
}

TEST(CoincidenceFraction, examples) {
    EXPECT_EQ(coincidence_fraction(cells(1, 2, 3, 4)), 1.0);
    EXPECT_EQ(coincidence_fraction(CountsTable{0, 0, 0, 0, 0, 0, 9, 9}), 0.0);
    EXPECT_THROW(coincidence_fraction(CountsTable{}), DegenerateStatistics);

    ExperimentConfig c;
    c.n_pairs = 1000000;
    c.seed = 4;
    c.detection_a = c.detection_b = {UniformEfficiency{0.5}, NoCrosstalk{}};
    EXPECT_NEAR(coincidence_fraction(run_experiment(c)), 0.25, 0.002);
}

TEST(PerPairCorrelation, counts_losses_as_zero) {
    const CountsTable c{60, 10, 10, 20, 50, 50, 100, 300};
    EXPECT_DOUBLE_EQ(per_pair_correlation(c), 60.0 / 300.0);
}

TEST(ChshFromRuns, consistency_and_zero) {
    const CountsTable zero = cells(25, 25, 25, 25);
    const ChshResult z = chsh_from_runs(zero, zero, zero, zero);
    EXPECT_EQ(z.s, 0.0);
    EXPECT_DOUBLE_EQ(z.standard_error, std::sqrt(4.0 * 1.0 / 100.0));

    const ChshResult r = chsh_from_runs(cells(60, 10, 10, 20), cells(5, 40, 30, 25), cells(70, 3, 9, 18),
                                        cells(33, 33, 1, 33));
    EXPECT_NEAR(r.s, chsh_s(r.per_setting[0].r, r.per_setting[1].r, r.per_setting[2].r, r.per_setting[3].r),
                1e-12);
    EXPECT_THROW(chsh_from_runs(zero, zero, zero, CountsTable{0, 0, 0, 0, 1, 0, 0, 1}), DegenerateStatistics);
}

TEST(ChshFromRuns, simulated_models) {
    const ChshResult q = simulated_chsh(Model::Quantum, 1000000, 1);
    EXPECT_NEAR(q.s, 2.0 * std::sqrt(2.0), 0.02);
    const ChshResult c = simulated_chsh(Model::Classical, 1000000, 2);
    EXPECT_NEAR(c.s, std::sqrt(2.0), 0.02);
}
