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

#include "bellsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace bellsim {

namespace {

double cos_squared(double x) {
    const double c = std::cos(x);
    return c * c;
}

std::pair<ChannelOutcome, ChannelOutcome> classical_pair(const ExperimentConfig& config,
                                                         PairStream& stream) {
    const Angle lambda = draw_lambda(config.source, stream);
    const ChannelOutcome ideal_a = measure_classical(lambda, config.analyzer_a, stream);
    const ChannelOutcome ideal_b = measure_classical(lambda, config.analyzer_b, stream);
    return {apply_detection(ideal_a, lambda, config.analyzer_a, config.detection_a, 1.0, stream),
            apply_detection(ideal_b, lambda, config.analyzer_b, config.detection_b, 1.0, stream)};
}

std::pair<ChannelOutcome, ChannelOutcome> quantum_pair(const ExperimentConfig& config,
                                                       PairStream& stream) {
    const QuantumMeasurement ideal = measure_quantum_pair(config.analyzer_a, config.analyzer_b, stream);
    const ChannelOutcome a = apply_detection(ideal.a, std::nullopt, config.analyzer_a, config.detection_a,
                                             config.quantum_baseline_eta, stream);
    const ChannelOutcome b = apply_detection(ideal.b, polarization_of(ideal.state), config.analyzer_b,
                                             config.detection_b, 1.0, stream);
    return {a, b};
}

}  // namespace

void SourceSpec::validate() const {
    if (model == Model::Quantum && std::holds_alternative<FixedTheta>(distribution)) {
        throw std::invalid_argument("a fixed-theta source cannot be combined with the quantum model");
    }
}

void ExperimentConfig::validate() const {
    source.validate();
    if (n_pairs < 1) {
        throw std::invalid_argument("n_pairs must be at least 1");
    }
    detection_a.validate();
    detection_b.validate();
    if (!(quantum_baseline_eta >= 0.0 && quantum_baseline_eta <= 1.0)) {
        throw std::invalid_argument("quantum_baseline_eta must lie in [0, 1], got " +
                                    std::to_string(quantum_baseline_eta));
    }
}

Angle draw_lambda(const SourceSpec& source, PairStream& stream) {
    if (source.model != Model::Classical) {
        throw std::invalid_argument("draw_lambda: quantum pairs carry no hidden plane");
    }
    if (const auto* fixed = std::get_if<FixedTheta>(&source.distribution)) {
        return fixed->theta;
    }
    return Angle::from_radians(kPi * stream.next_open_unit());
}

ChannelOutcome measure_classical(Angle lambda, Angle analyzer, PairStream& stream) {
    return stream.bernoulli(cos_squared(malus_delta(lambda, analyzer))) ? ChannelOutcome::Plus
                                                                        : ChannelOutcome::Minus;
}

QuantumMeasurement measure_quantum_pair(Angle a, Angle b, PairStream& stream) {
    QuantumMeasurement out;
    out.a = stream.bernoulli(0.5) ? ChannelOutcome::Plus : ChannelOutcome::Minus;
    const Angle collapsed =
        out.a == ChannelOutcome::Plus ? a : Angle::from_radians(a.radians() + kHalfPi);
    out.state = QuantumCollapsed{collapsed};
    out.b = measure_classical(collapsed, b, stream);
    return out;
}

ChannelOutcome apply_detection(ChannelOutcome ideal, std::optional<Angle> polarization,
                               Angle analyzer, const DetectionProfile& profile, double baseline,
                               PairStream& stream) {
    if (!is_detected(ideal)) {
        throw std::invalid_argument("apply_detection needs a definite channel");
    }
    if (!polarization) {
        return stream.bernoulli(baseline) ? ideal : ChannelOutcome::Undetected;
    }
    const double folded = loss_delta(*polarization, analyzer);
    const ChannelOutcome routed = stream.bernoulli(profile.crosstalk_at(folded)) ? flipped(ideal) : ideal;
    return stream.bernoulli(profile.efficiency_at(folded)) ? routed : ChannelOutcome::Undetected;
}

std::pair<ChannelOutcome, ChannelOutcome> run_pair(const ExperimentConfig& config,
                                                   std::uint64_t pair_index) {
    if (pair_index >= config.n_pairs) {
        throw std::out_of_range("pair index " + std::to_string(pair_index) + " outside [0, " +
                                std::to_string(config.n_pairs) + ")");
    }
    PairStream stream(config.seed, pair_index);
    return config.source.model == Model::Classical ? classical_pair(config, stream)
                                                   : quantum_pair(config, stream);
}

CountsTable run_range(const ExperimentConfig& config, std::uint64_t begin, std::uint64_t end) {
    CountsTable counts;
    end = std::min(end, config.n_pairs);
    for (std::uint64_t i = begin; i < end; ++i) {
        const auto [a, b] = run_pair(config, i);
        counts.record(a, b);
    }
    return counts;
}

CountsTable run_experiment(const ExperimentConfig& config, unsigned threads) {
    config.validate();
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    const std::uint64_t workers = std::min<std::uint64_t>(threads, config.n_pairs);
    if (workers <= 1) {
        return run_range(config, 0, config.n_pairs);
    }

    std::vector<CountsTable> partial(workers);
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (config.n_pairs + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
        pool.emplace_back([&config, &partial, w, chunk] {
            partial[w] = run_range(config, w * chunk, (w + 1) * chunk);
        });
    }
    pool.clear();

    CountsTable total;
    for (const CountsTable& part : partial) {
        total += part;
    }
    return total;
}

}  // namespace bellsim
