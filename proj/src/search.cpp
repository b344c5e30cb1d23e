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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "bellsim/estimator.hpp"
#include "bellsim/montecarlo.hpp"
#include "bellsim/random.hpp"
#include "bellsim/types.hpp"

namespace bellsim {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

std::vector<std::pair<Angle, Angle>> objective_settings(const SearchObjective& objective) {
    return std::visit(Overloaded{
                          [](const MaxParallelR& o) {
                              return std::vector<std::pair<Angle, Angle>>{{o.setting, o.setting}};
                          },
                          [](const MaxChsh& o) {
                              const auto p = o.settings.pairs();
                              return std::vector<std::pair<Angle, Angle>>(p.begin(), p.end());
                          },
                          [](const MatchQuantumCurve& o) { return o.grid; },
                      },
                      objective);
}

std::size_t grid_size(const std::vector<ParameterAxis>& axes) {
    std::size_t total = 1;
    for (const ParameterAxis& axis : axes) {
        total *= axis.values.size();
    }
    return total;
}

// Row-major decoding: the last axis varies fastest.
std::vector<double> grid_point(const std::vector<ParameterAxis>& axes, std::size_t flat) {
    std::vector<double> params(axes.size());
    for (std::size_t i = axes.size(); i-- > 0;) {
        const std::size_t n = axes[i].values.size();
        params[i] = axes[i].values[flat % n];
        flat /= n;
    }
    return params;
}

SearchPoint evaluate_point(const SearchSpace& space, std::vector<double> params) {
    SearchPoint point;
    point.params = std::move(params);
    try {
        const ObjectiveValue value = objective_value(point.params, space);
        point.objective = value.objective;
        point.efficiency = value.efficiency;
    } catch (const DegenerateStatistics&) {
        point.degenerate = true;
    }
    return point;
}

}  // namespace

ParameterAxis ParameterAxis::linear(std::string name, double min, double max, std::size_t resolution,
                                    ArmTarget arm) {
    if (resolution < 2) {
        throw std::invalid_argument("axis " + name + ": resolution must be at least 2");
    }
    if (!(min <= max)) {
        throw std::invalid_argument("axis " + name + ": min must not exceed max");
    }
    ParameterAxis axis{std::move(name), arm, {}};
    axis.values.reserve(resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(resolution - 1);
        axis.values.push_back(i + 1 == resolution ? max : min + t * (max - min));
    }
    return axis;
}

std::string objective_name(const SearchObjective& objective) {
    return std::visit(Overloaded{
                          [](const MaxParallelR&) { return std::string("max_parallel_r"); },
                          [](const MaxChsh&) { return std::string("max_chsh"); },
                          [](const MatchQuantumCurve&) { return std::string("match_quantum_curve"); },
                      },
                      objective);
}

void set_profile_parameter(DetectionProfile& profile, const std::string& name, double value) {
    bool applied = false;
    std::visit(Overloaded{
                   [&](UniformEfficiency& e) {
                       if (name == "eta0") {
                           e.eta0 = value;
                           applied = true;
                       }
                   },
                   [&](SinDipEfficiency& e) {
                       if (name == "eps") {
                           e.eps = value;
                           applied = true;
                       } else if (name == "p") {
                           e.p = value;
                           applied = true;
                       }
                   },
                   [&](MalusPowerEfficiency& e) {
                       if (name == "p") {
                           e.p = value;
                           applied = true;
                       }
                   },
               },
               profile.efficiency);
    std::visit(Overloaded{
                   [](NoCrosstalk&) {},
                   [&](UniformCrosstalk& x) {
                       if (name == "c") {
                           x.c = value;
                           applied = true;
                       }
                   },
                   [&](SinPeakCrosstalk& x) {
                       if (name == "c") {
                           x.c = value;
                           applied = true;
                       } else if (name == "q") {
                           x.q = value;
                           applied = true;
                       }
                   },
               },
               profile.crosstalk);
    if (!applied) {
        throw std::invalid_argument("parameter '" + name + "' does not belong to profile family " +
                                    efficiency_family_name(profile.efficiency) + "/" +
                                    crosstalk_family_name(profile.crosstalk));
    }
}

void SearchSpace::validate() const {
    if (axes.empty()) {
        throw std::invalid_argument("search space has no parameter axes");
    }
    for (const ParameterAxis& axis : axes) {
        if (axis.values.empty()) {
            throw std::invalid_argument("axis " + axis.name + " has no values");
        }
        // probe the name against the family templates
        DetectionProfile probe_a = profile_a;
        DetectionProfile probe_b = profile_b;
        if (axis.arm != ArmTarget::B) {
            set_profile_parameter(probe_a, axis.name, axis.values.front());
        }
        if (axis.arm != ArmTarget::A) {
            set_profile_parameter(probe_b, axis.name, axis.values.front());
        }
    }
    if (objective_settings(objective).empty()) {
        throw std::invalid_argument("objective has no analyzer settings");
    }
    if (quadrature_nodes < 4096) {
        throw std::invalid_argument("quadrature_nodes must be at least 4096");
    }
}

std::vector<std::string> SearchSpace::parameter_labels() const {
    std::vector<std::string> labels;
    labels.reserve(axes.size());
    for (const ParameterAxis& axis : axes) {
        switch (axis.arm) {
            case ArmTarget::Both:
                labels.push_back(axis.name);
                break;
            case ArmTarget::A:
                labels.push_back("a." + axis.name);
                break;
            case ArmTarget::B:
                labels.push_back("b." + axis.name);
                break;
        }
    }
    return labels;
}

std::pair<DetectionProfile, DetectionProfile> profiles_at(const SearchSpace& space,
                                                          std::span<const double> params) {
    if (params.size() != space.axes.size()) {
        throw std::invalid_argument("expected one parameter value per axis");
    }
    DetectionProfile a = space.profile_a;
    DetectionProfile b = space.profile_b;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const ParameterAxis& axis = space.axes[i];
        if (axis.arm != ArmTarget::B) {
            set_profile_parameter(a, axis.name, params[i]);
        }
        if (axis.arm != ArmTarget::A) {
            set_profile_parameter(b, axis.name, params[i]);
        }
    }
    a.validate();
    b.validate();
    return {a, b};
}

ObjectiveValue objective_value(std::span<const double> params, const SearchSpace& space) {
    const auto [det_a, det_b] = profiles_at(space, params);
    const auto settings = objective_settings(space.objective);

    std::vector<PostselectedMoments> moments;
    moments.reserve(settings.size());
    double efficiency = 0.0;
    for (const auto& [a, b] : settings) {
        moments.push_back(postselected_lhv_moments(a, b, det_a, det_b, space.quadrature_nodes));
        efficiency += moments.back().coincidence_probability;
    }
    efficiency /= static_cast<double>(settings.size());

    const double objective = std::visit(
        Overloaded{
            [&](const MaxParallelR&) { return moments.front().correlation; },
            [&](const MaxChsh&) {
                return chsh_s(moments[0].correlation, moments[1].correlation, moments[2].correlation,
                              moments[3].correlation);
            },
            [&](const MatchQuantumCurve&) {
                double sum = 0.0;
                for (std::size_t i = 0; i < settings.size(); ++i) {
                    const double gap =
                        moments[i].correlation - quantum_expectation(settings[i].first, settings[i].second);
                    sum += gap * gap;
                }
                return -std::sqrt(sum / static_cast<double>(settings.size()));
            },
        },
        space.objective);
    return {objective, efficiency};
}

SearchReport grid_search(const SearchSpace& space, unsigned threads) {
    space.validate();
    const std::size_t total = grid_size(space.axes);

    SearchReport report;
    report.parameter_labels = space.parameter_labels();
    report.trace.resize(total);

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    const std::size_t workers = std::min<std::size_t>(threads, total);
    if (workers <= 1) {
        for (std::size_t i = 0; i < total; ++i) {
            report.trace[i] = evaluate_point(space, grid_point(space.axes, i));
        }
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < total; i += workers) {
                    report.trace[i] = evaluate_point(space, grid_point(space.axes, i));
                }
            });
        }
    }

    const SearchPoint* best = nullptr;
    for (const SearchPoint& point : report.trace) {
        if (point.degenerate) {
            continue;
        }
        if (best == nullptr || point.objective > best->objective ||
            (point.objective == best->objective && point.params < best->params)) {
            best = &point;
        }
    }
    if (best == nullptr) {
        throw DegenerateStatistics("every grid point is degenerate");
    }
    report.best_params = best->params;
    report.best_objective = best->objective;
    report.best_efficiency = best->efficiency;
    return report;
}

bool MonteCarloConfirmation::agrees_within(double sigmas) const {
    return std::abs(simulated - analytic) <= sigmas * standard_error;
}

MonteCarloConfirmation confirm_with_monte_carlo(const SearchSpace& space, std::span<const double> params,
                                                std::uint64_t n_pairs, std::uint64_t seed,
                                                unsigned threads) {
    const auto [det_a, det_b] = profiles_at(space, params);

    ExperimentConfig config;
    config.source = {UniformRandom{}, Model::Classical};
    config.n_pairs = n_pairs;
    config.detection_a = det_a;
    config.detection_b = det_b;

    auto run_at = [&](Angle a, Angle b, std::uint64_t run_seed) {
        config.analyzer_a = a;
        config.analyzer_b = b;
        config.seed = run_seed;
        return run_experiment(config, threads);
    };

    MonteCarloConfirmation out;
    out.analytic = objective_value(params, space).objective;
    if (const auto* parallel = std::get_if<MaxParallelR>(&space.objective)) {
        const CorrelationEstimate estimate = r_from_counts(run_at(parallel->setting, parallel->setting, seed));
        out.simulated = estimate.r;
        out.standard_error = estimate.standard_error;
        return out;
    }
    if (const auto* chsh = std::get_if<MaxChsh>(&space.objective)) {
        const auto pairs = chsh->settings.pairs();
        std::array<CountsTable, 4> runs;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            runs[i] = run_at(pairs[i].first, pairs[i].second, splitmix64(seed + i));
        }
        const ChshResult result = chsh_from_runs(runs[0], runs[1], runs[2], runs[3]);
        out.simulated = result.s;
        out.standard_error = result.standard_error;
        return out;
    }
    throw std::invalid_argument("Monte Carlo confirmation supports max_parallel_r and max_chsh only");
}

}  // namespace bellsim
