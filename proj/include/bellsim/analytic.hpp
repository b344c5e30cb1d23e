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
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "bellsim/angle.hpp"
#include "bellsim/detection.hpp"

namespace bellsim {

inline constexpr std::size_t kDefaultQuadratureNodes = 8192;

/// Mean of `f` over one period [0, pi) by the periodic trapezoidal rule with
/// `nodes` equally spaced points. Throws std::invalid_argument for nodes == 0.
double average_over_period(const std::function<double(double)>& f,
                           std::size_t nodes = kDefaultQuadratureNodes);

/// Mean of the pi-periodic `f` over [0, pi) when `f` is smooth except at
/// `breakpoints` (radians, any order, reduced mod pi). Each smooth piece is
/// integrated by the trapezoidal rule after a tanh-sinh substitution, which
/// also copes with power-law behaviour at the piece ends. The `nodes` are
/// shared among the pieces. Throws std::invalid_argument for nodes == 0.
double average_over_period_piecewise(const std::function<double(double)>& f,
                                     std::vector<double> breakpoints,
                                     std::size_t nodes = kDefaultQuadratureNodes);

/// Realist pair correlation for analyzer offsets theta1, theta2 from the
/// hidden plane, written as the ratio of cos^2/sin^2 products.
double classical_r_two_angle(Angle theta1, Angle theta2);

/// cos^2(2 theta): the two-angle form at theta1 == theta2.
double classical_r_parallel(Angle theta);

/// Average of classical_r_parallel over a uniformly random hidden plane; 1/2.
double classical_r_total_uniform() noexcept;

/// Same average by trapezoidal quadrature.
double classical_r_total_quadrature(std::size_t nodes = kDefaultQuadratureNodes);

/// Average of classical_r_parallel over an explicit set of hidden planes.
/// Throws std::invalid_argument for an empty set.
double classical_r_total_over(std::span<const Angle> thetas);

/// Malus-law local hidden variable expectation, 1/2 cos 2(a - b).
double lhv_expectation(Angle a, Angle b);

/// The defining integral of lhv_expectation, by quadrature.
double lhv_expectation_quadrature(Angle a, Angle b, std::size_t nodes = kDefaultQuadratureNodes);

/// Collapse-model expectation, cos 2(a - b).
double quantum_expectation(Angle a, Angle b) noexcept;

struct PostselectedMoments {
    /// E(a, b) conditioned on both photons being detected.
    double correlation = 0.0;
    /// Probability that a pair yields a coincidence, averaged over lambda.
    double coincidence_probability = 0.0;
};

/// Realist model behind lossy, misrouting analyzers. Throws
/// DegenerateStatistics when coincidences are impossible for every lambda.
/// Integrates piecewise between the profile kinks at multiples of pi/4 from
/// either analyzer.
PostselectedMoments postselected_lhv_moments(Angle a, Angle b, const DetectionProfile& det_a,
                                             const DetectionProfile& det_b,
                                             std::size_t nodes = kDefaultQuadratureNodes);

double postselected_lhv_expectation(Angle a, Angle b, const DetectionProfile& det_a,
                                    const DetectionProfile& det_b,
                                    std::size_t nodes = kDefaultQuadratureNodes);

/// Analyzer angles of a CHSH experiment: a, a' on arm A and b, b' on arm B.
struct ChshSettings {
    Angle a;
    Angle a2;
    Angle b;
    Angle b2;

    /// (0, pi/4; pi/8, 3pi/8), the settings of maximal quantum violation.
    static ChshSettings standard();

    /// The four (arm A, arm B) pairs in the order ab, ab', a'b, a'b'.
    std::array<std::pair<Angle, Angle>, 4> pairs() const;

    friend bool operator==(const ChshSettings&, const ChshSettings&) = default;
};

/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
double chsh_s(double e_ab, double e_ab2, double e_a2b, double e_a2b2) noexcept;

double chsh_s(const ChshSettings& settings, const std::function<double(Angle, Angle)>& expectation);

/// Tabulated correlation values over a list of analyzer settings.
struct ExpectationCurve {
    std::vector<std::pair<Angle, Angle>> settings;
    std::vector<double> values;
};

ExpectationCurve tabulate(std::span<const std::pair<Angle, Angle>> settings,
                          const std::function<double(Angle, Angle)>& expectation);

}  // namespace bellsim
