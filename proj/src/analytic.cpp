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

#include "bellsim/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bellsim/types.hpp"

namespace bellsim {

namespace {

constexpr double kIdentityTolerance = 1e-12;
constexpr double kSelfCheckTolerance = 1e-9;
constexpr double kBreakpointMerge = 1e-14;
constexpr double kTanhSinhRange = 3.5;
constexpr std::size_t kMinNodesPerPiece = 64;

double square(double x) { return x * x; }

// The closed form of lhv_expectation is checked against its integral the
// first time it is used.
bool lhv_closed_form_verified() {
    static const bool verified = [] {
        constexpr int kSteps = 7;
        for (int i = 0; i < kSteps; ++i) {
            for (int j = 0; j < kSteps; ++j) {
                const Angle a = Angle::from_radians(kPi * i / kSteps);
                const Angle b = Angle::from_radians(kPi * j / kSteps + 0.1);
                const double closed = 0.5 * std::cos(2.0 * (a.radians() - b.radians()));
                if (std::abs(closed - lhv_expectation_quadrature(a, b, 4096)) > kSelfCheckTolerance) {
                    return false;
                }
            }
        }
        return true;
    }();
    return verified;
}

// Probability difference P(+, detected) - P(-, detected) for one arm, given
// the hidden plane.
double signed_detection(Angle lambda, Angle analyzer, const DetectionProfile& profile,
                        double& efficiency) {
    const double folded = loss_delta(lambda, analyzer);
    efficiency = profile.efficiency_at(folded);
    const double misroute = profile.crosstalk_at(folded);
    return efficiency * (1.0 - 2.0 * misroute) * std::cos(2.0 * malus_delta(lambda, analyzer));
}

}  // namespace

double average_over_period(const std::function<double(double)>& f, std::size_t nodes) {
    if (nodes == 0) {
        throw std::invalid_argument("quadrature needs at least one node");
    }
    const double step = kPi / static_cast<double>(nodes);
    double sum = 0.0;
    double compensation = 0.0;
    for (std::size_t k = 0; k < nodes; ++k) {
        const double term = f(step * static_cast<double>(k)) - compensation;
        const double next = sum + term;
        compensation = (next - sum) - term;
        sum = next;
    }
    return sum / static_cast<double>(nodes);
}

double average_over_period_piecewise(const std::function<double(double)>& f, std::vector<double> breakpoints,
                                     std::size_t nodes) {
    if (nodes == 0) {
        throw std::invalid_argument("quadrature needs at least one node");
    }
    for (double& x : breakpoints) {
        x = Angle::from_radians(x).radians();
    }
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end(),
                                  [](double x, double y) { return y - x < kBreakpointMerge; }),
                      breakpoints.end());
    if (breakpoints.size() > 1 && breakpoints.front() + kPi - breakpoints.back() < kBreakpointMerge) {
        breakpoints.pop_back();
    }
    if (breakpoints.empty()) {
        breakpoints.push_back(0.0);
    }

    // Midpoint trapezoid in t over [-T, T] for x = u + L s(t), with
    // s(t) = 1 / (1 + exp(-pi sinh t)).
    const std::size_t pieces = breakpoints.size();
    const std::size_t per_piece = std::max<std::size_t>(nodes / pieces, kMinNodesPerPiece);
    const double h = 2.0 * kTanhSinhRange / static_cast<double>(per_piece);
    double sum = 0.0;
    double compensation = 0.0;
    for (std::size_t i = 0; i < pieces; ++i) {
        const double u = breakpoints[i];
        const double length = (i + 1 < pieces ? breakpoints[i + 1] : breakpoints.front() + kPi) - u;
        for (std::size_t k = 0; k < per_piece; ++k) {
            const double t = -kTanhSinhRange + (static_cast<double>(k) + 0.5) * h;
            const double e = std::exp(-kPi * std::sinh(t));
            const double s = 1.0 / (1.0 + e);
            const double ds = kPi * std::cosh(t) * e * s * s;
            const double term = f(u + length * s) * length * ds * h - compensation;
            const double next = sum + term;
            compensation = (next - sum) - term;
            sum = next;
        }
    }
    return sum / kPi;
}

double classical_r_two_angle(Angle theta1, Angle theta2) {
    const double c1 = square(std::cos(theta1.radians()));
    const double s1 = square(std::sin(theta1.radians()));
    const double c2 = square(std::cos(theta2.radians()));
    const double s2 = square(std::sin(theta2.radians()));
    const double numerator = c1 * c2 + s1 * s2 - c1 * s2 - s1 * c2;
    const double denominator = c1 * c2 + s1 * s2 + c1 * s2 + s1 * c2;
    if (std::abs(denominator - 1.0) > kIdentityTolerance) {
        throw std::logic_error("two-angle denominator departed from 1: " + std::to_string(denominator));
    }
    return std::clamp(numerator / denominator, -1.0, 1.0);
}

double classical_r_parallel(Angle theta) { return square(std::cos(2.0 * theta.radians())); }

double classical_r_total_uniform() noexcept { return 0.5; }

double classical_r_total_quadrature(std::size_t nodes) {
    return average_over_period(
        [](double theta) { return classical_r_parallel(Angle::from_radians(theta)); }, nodes);
}

double classical_r_total_over(std::span<const Angle> thetas) {
    if (thetas.empty()) {
        throw std::invalid_argument("cannot average over an empty set of planes");
    }
    double sum = 0.0;
    for (const Angle theta : thetas) {
        sum += classical_r_parallel(theta);
    }
    return sum / static_cast<double>(thetas.size());
}

double lhv_expectation(Angle a, Angle b) {
    if (!lhv_closed_form_verified()) {
        throw std::logic_error("lhv_expectation closed form disagrees with quadrature");
    }
    return 0.5 * std::cos(2.0 * (a.radians() - b.radians()));
}

double lhv_expectation_quadrature(Angle a, Angle b, std::size_t nodes) {
    return average_over_period(
        [a, b](double x) {
            const Angle lambda = Angle::from_radians(x);
            const double da = malus_delta(lambda, a);
            const double db = malus_delta(lambda, b);
            const double side_a = square(std::cos(da)) - square(std::sin(da));
            const double side_b = square(std::cos(db)) - square(std::sin(db));
            return side_a * side_b;
        },
        nodes);
}

double quantum_expectation(Angle a, Angle b) noexcept {
    return std::cos(2.0 * (a.radians() - b.radians()));
}

PostselectedMoments postselected_lhv_moments(Angle a, Angle b, const DetectionProfile& det_a,
                                             const DetectionProfile& det_b, std::size_t nodes) {
    det_a.validate();
    det_b.validate();
    // Loss and crosstalk are folded at multiples of pi/4 from each analyzer.
    std::vector<double> kinks;
    for (int k = 0; k < 4; ++k) {
        kinks.push_back(a.radians() + k * kQuarterPi);
        kinks.push_back(b.radians() + k * kQuarterPi);
    }
    const double correlated = average_over_period_piecewise(
        [&](double x) {
            const Angle lambda = Angle::from_radians(x);
            double eta_a = 0.0;
            double eta_b = 0.0;
            return signed_detection(lambda, a, det_a, eta_a) * signed_detection(lambda, b, det_b, eta_b);
        },
        kinks, nodes);
    const double coincident = average_over_period_piecewise(
        [&](double x) {
            const Angle lambda = Angle::from_radians(x);
            return det_a.efficiency_at(loss_delta(lambda, a)) * det_b.efficiency_at(loss_delta(lambda, b));
        },
        kinks, nodes);
    if (!(coincident > 0.0)) {
        throw DegenerateStatistics("detection profiles never produce a coincidence");
    }
    return {std::clamp(correlated / coincident, -1.0, 1.0), coincident};
}

double postselected_lhv_expectation(Angle a, Angle b, const DetectionProfile& det_a,
                                    const DetectionProfile& det_b, std::size_t nodes) {
    return postselected_lhv_moments(a, b, det_a, det_b, nodes).correlation;
}

ChshSettings ChshSettings::standard() {
    return {Angle::from_radians(0.0), Angle::from_radians(kPi / 4.0), Angle::from_radians(kPi / 8.0),
            Angle::from_radians(3.0 * kPi / 8.0)};
}

std::array<std::pair<Angle, Angle>, 4> ChshSettings::pairs() const {
    return {{{a, b}, {a, b2}, {a2, b}, {a2, b2}}};
}

double chsh_s(double e_ab, double e_ab2, double e_a2b, double e_a2b2) noexcept {
    return e_ab - e_ab2 + e_a2b + e_a2b2;
}

double chsh_s(const ChshSettings& settings, const std::function<double(Angle, Angle)>& expectation) {
    const auto p = settings.pairs();
    return chsh_s(expectation(p[0].first, p[0].second), expectation(p[1].first, p[1].second),
                  expectation(p[2].first, p[2].second), expectation(p[3].first, p[3].second));
}

ExpectationCurve tabulate(std::span<const std::pair<Angle, Angle>> settings,
                          const std::function<double(Angle, Angle)>& expectation) {
    ExpectationCurve curve;
    curve.settings.assign(settings.begin(), settings.end());
    curve.values.reserve(settings.size());
    for (const auto& [a, b] : settings) {
        curve.values.push_back(std::clamp(expectation(a, b), -1.0, 1.0));
    }
    return curve;
}

}  // namespace bellsim
