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

#include "bellsim/search.hpp"

#include <cmath>
#include <stdexcept>

#include "gtest/gtest.h"

#include "bellsim/types.hpp"
#include "oracles.hpp"

using namespace bellsim;

namespace {

SearchSpace malus_space(std::vector<double> powers) {
    SearchSpace space;
    space.profile_a = space.profile_b = {MalusPowerEfficiency{1.0}, NoCrosstalk{}};
    space.axes = {ParameterAxis{"p", ArmTarget::Both, std::move(powers)}};
    space.objective = MaxParallelR{};
    return space;
}

SearchSpace sin_dip_space(std::vector<double> eps, std::vector<double> powers = {1.0}) {
    SearchSpace space;
    space.profile_a = space.profile_b = {SinDipEfficiency{0.0, 1.0}, NoCrosstalk{}};
    space.axes = {ParameterAxis{"eps", ArmTarget::Both, std::move(eps)},
                  ParameterAxis{"p", ArmTarget::Both, std::move(powers)}};
    return space;
}

}  // namespace

TEST(ObjectiveValue, fair_sampling_examples) {
    SearchSpace space = sin_dip_space({0.0});
    const std::vector<double> params{0.0, 1.0};
    EXPECT_NEAR(objective_value(params, space).objective, 0.5, 1e-12);
    EXPECT_NEAR(objective_value(params, space).efficiency, 1.0, 1e-12);
    space.objective = MaxChsh{};
    EXPECT_NEAR(objective_value(params, space).objective, std::sqrt(2.0), 1e-9);
}

TEST(ObjectiveValue, malus_power_eight) {
    const SearchSpace space = malus_space({8.0});
    const ObjectiveValue v = objective_value(std::vector<double>{8.0}, space);
    EXPECT_GT(v.objective, 0.9);
    EXPECT_NEAR(v.objective, oracle::malus_power_parallel_r(8.0), 1e-9);
    EXPECT_NEAR(v.efficiency, oracle::malus_power_efficiency(8.0), 1e-9);
}

TEST(ObjectiveValue, match_quantum_curve_for_fair_sampling) {
    SearchSpace space = sin_dip_space({0.0});
    MatchQuantumCurve curve;
    double expected = 0.0;
    for (int k = 0; k < 5; ++k) {
        const double delta = kPi * k / 8.0;
        curve.grid.emplace_back(Angle{}, Angle::from_radians(delta));
        expected += std::pow(0.5 * std::cos(2.0 * delta), 2);
    }
    space.objective = curve;
    EXPECT_NEAR(objective_value(std::vector<double>{0.0, 1.0}, space).objective, -std::sqrt(expected / 5.0),
                1e-9);
}

TEST(ObjectiveValue, degenerate_profile_throws) {
    SearchSpace space;
    space.axes = {ParameterAxis{"eta0", ArmTarget::Both, {0.0}}};
    EXPECT_THROW(objective_value(std::vector<double>{0.0}, space), DegenerateStatistics);
}

TEST(GridSearch, single_point_is_best) {
    const SearchReport report = grid_search(malus_space({2.0}));
    ASSERT_EQ(report.trace.size(), 1u);
    EXPECT_EQ(report.best_params, std::vector<double>{2.0});
    EXPECT_EQ(report.best_objective, report.trace[0].objective);
}

TEST(GridSearch, malus_power_trade_off) {
    const std::vector<double> powers{0.5, 1.0, 2.0, 4.0, 8.0};
    const SearchReport report = grid_search(malus_space(powers));
    ASSERT_EQ(report.trace.size(), powers.size());
    for (std::size_t i = 0; i < powers.size(); ++i) {
        EXPECT_NEAR(report.trace[i].objective, oracle::malus_power_parallel_r(powers[i]), 1e-9);
        EXPECT_NEAR(report.trace[i].efficiency, oracle::malus_power_efficiency(powers[i]), 1e-9);
        if (i > 0) {
            EXPECT_GT(report.trace[i].objective, report.trace[i - 1].objective);
            EXPECT_LT(report.trace[i].efficiency, report.trace[i - 1].efficiency);
        }
    }
    EXPECT_EQ(report.best_params, std::vector<double>{8.0});
    EXPECT_GE(report.best_objective, 0.9);
}

TEST(GridSearch, objective_and_efficiency_move_oppositely_along_p) {
    const SearchReport report = grid_search(SearchSpace{
        {MalusPowerEfficiency{1.0}, NoCrosstalk{}},
        {MalusPowerEfficiency{1.0}, NoCrosstalk{}},
        {ParameterAxis::linear("p", 0.25, 8.0, 32)},
        MaxParallelR{},
        kDefaultQuadratureNodes});
    for (std::size_t i = 1; i < report.trace.size(); ++i) {
        ASSERT_GE(report.trace[i].objective, report.trace[i - 1].objective - 1e-9);
        ASSERT_LE(report.trace[i].efficiency, report.trace[i - 1].efficiency + 1e-9);
    }
}

TEST(GridSearch, removing_bisector_pairs_raises_parallel_correlation) {
    const SearchReport report = grid_search(sin_dip_space({0.0, 1.0}));
    EXPECT_EQ(report.best_params, (std::vector<double>{1.0, 1.0}));
    EXPECT_GT(report.best_objective, 0.5);
}

TEST(GridSearch, uniform_efficiency_is_a_fixed_point) {
    SearchSpace space;
    space.axes = {ParameterAxis::linear("eta0", 0.05, 1.0, 20)};
    const SearchReport report = grid_search(space);
    for (const SearchPoint& point : report.trace) {
        ASSERT_NEAR(point.objective, 0.5, 1e-9);
    }
}

TEST(GridSearch, best_is_trace_maximum_and_ties_break_lexicographically) {
    // eps = 0 makes p irrelevant: all three points tie exactly.
    const SearchReport tie = grid_search(sin_dip_space({0.0}, {3.0, 1.0, 2.0}));
    EXPECT_EQ(tie.best_params, (std::vector<double>{0.0, 1.0}));

    const SearchReport report = grid_search(sin_dip_space({0.0, 0.3, 0.6, 1.0}, {0.5, 1.0, 4.0}));
    double max = -1e300;
    for (const SearchPoint& point : report.trace) {
        max = std::max(max, point.objective);
    }
    EXPECT_EQ(report.best_objective, max);
    // last axis varies fastest
    EXPECT_EQ(report.trace[1].params, (std::vector<double>{0.0, 1.0}));
    EXPECT_EQ(report.trace[3].params, (std::vector<double>{0.3, 0.5}));
}

TEST(GridSearch, trace_order_independent_of_threads) {
    const SearchSpace space = sin_dip_space({0.0, 0.5, 1.0}, {0.5, 2.0});
    const SearchReport one = grid_search(space, 1);
    const SearchReport four = grid_search(space, 4);
    ASSERT_EQ(one.trace.size(), four.trace.size());
    for (std::size_t i = 0; i < one.trace.size(); ++i) {
        ASSERT_EQ(one.trace[i].params, four.trace[i].params);
        ASSERT_EQ(one.trace[i].objective, four.trace[i].objective);
    }
}

TEST(GridSearch, degenerate_points) {
    SearchSpace space;
    space.axes = {ParameterAxis{"eta0", ArmTarget::Both, {0.0, 0.5}}};
    const SearchReport report = grid_search(space);
    EXPECT_TRUE(report.trace[0].degenerate);
    EXPECT_EQ(report.best_params, std::vector<double>{0.5});

    space.axes = {ParameterAxis{"eta0", ArmTarget::Both, {0.0}}};
    EXPECT_THROW(grid_search(space), DegenerateStatistics);
}

TEST(SearchSpace, validation) {
    SearchSpace space = malus_space({});
    EXPECT_THROW(space.validate(), std::invalid_argument);
    space.axes.clear();
    EXPECT_THROW(space.validate(), std::invalid_argument);
    space.axes = {ParameterAxis{"eps", ArmTarget::Both, {0.5}}};
    EXPECT_THROW(space.validate(), std::invalid_argument);
    EXPECT_THROW(ParameterAxis::linear("p", 1.0, 2.0, 1), std::invalid_argument);
    EXPECT_THROW(ParameterAxis::linear("p", 2.0, 1.0, 3), std::invalid_argument);
    space.axes = {ParameterAxis{"p", ArmTarget::Both, {1.0}}};
    space.objective = MatchQuantumCurve{};
    EXPECT_THROW(space.validate(), std::invalid_argument);
}

TEST(SearchSpace, asymmetric_axes) {
    SearchSpace space = malus_space({4.0});
    space.profile_b = DetectionProfile::ideal();
    space.axes[0].arm = ArmTarget::A;
    EXPECT_EQ(space.parameter_labels(), std::vector<std::string>{"a.p"});
    const auto [a, b] = profiles_at(space, std::vector<double>{4.0});
    EXPECT_EQ(std::get<MalusPowerEfficiency>(a.efficiency).p, 4.0);
    EXPECT_EQ(b, DetectionProfile::ideal());
    EXPECT_NO_THROW(grid_search(space));
}

TEST(Confirmation, malus_power_optimum_reproduced_by_monte_carlo) {
    const SearchSpace space = malus_space({0.5, 1.0, 2.0, 4.0, 8.0});
    const SearchReport report = grid_search(space);
    const MonteCarloConfirmation check = confirm_with_monte_carlo(space, report.best_params, 1000000, 3);
    EXPECT_EQ(check.analytic, report.best_objective);
    EXPECT_TRUE(check.agrees_within(3.0)) << check.simulated << " vs " << check.analytic;
}

TEST(Confirmation, chsh_objective_and_unsupported_curve) {
    SearchSpace space = sin_dip_space({0.5});
    space.objective = MaxChsh{};
    const std::vector<double> params{0.5, 1.0};
    const MonteCarloConfirmation check = confirm_with_monte_carlo(space, params, 300000, 8);
    EXPECT_TRUE(check.agrees_within(3.0)) << check.simulated << " vs " << check.analytic;
    space.objective = MatchQuantumCurve{{{Angle{}, Angle{}}}};
    EXPECT_THROW(confirm_with_monte_carlo(space, params, 1000, 1), std::invalid_argument);
}
