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

#include "bellsim/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bellsim/angle.hpp"

namespace bellsim {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

// sin(2d') is non-negative on [0, pi/2]; clamp the rounding error near the ends.
double sin_two(double folded) { return std::max(0.0, std::sin(2.0 * folded)); }

void require_unit(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                    std::to_string(value));
    }
}

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(name) + " must be a positive finite number, got " +
                                    std::to_string(value));
    }
}

void require_crosstalk(double value) {
    if (!(value >= 0.0 && value <= 0.5)) {
        throw std::invalid_argument("c must lie in [0, 0.5], got " + std::to_string(value));
    }
}

}  // namespace

double DetectionProfile::efficiency_at(double folded) const {
    return std::visit(
        Overloaded{
            [](const UniformEfficiency& e) { return e.eta0; },
            [folded](const SinDipEfficiency& e) {
                return std::clamp(1.0 - e.eps * std::pow(sin_two(folded), e.p), 0.0, 1.0);
            },
            [folded](const MalusPowerEfficiency& e) {
                const double mirrored = folded <= kQuarterPi ? folded : kHalfPi - folded;
                // cos(2m) written as sin(pi/2 - 2m) so the bisector gives exactly 0
                const double c = std::max(0.0, std::sin(kHalfPi - 2.0 * mirrored));
                return std::pow(c, 2.0 * e.p);
            },
        },
        efficiency);
}

double DetectionProfile::crosstalk_at(double folded) const {
    return std::visit(Overloaded{
                          [](const NoCrosstalk&) { return 0.0; },
                          [](const UniformCrosstalk& x) { return x.c; },
                          [folded](const SinPeakCrosstalk& x) {
                              return x.c * std::pow(sin_two(folded), x.q);
                          },
                      },
                      crosstalk);
}

void DetectionProfile::validate() const {
    std::visit(Overloaded{
                   [](const UniformEfficiency& e) { require_unit(e.eta0, "eta0"); },
                   [](const SinDipEfficiency& e) {
                       require_unit(e.eps, "eps");
                       require_positive(e.p, "p");
                   },
                   [](const MalusPowerEfficiency& e) { require_positive(e.p, "p"); },
               },
               efficiency);
    std::visit(Overloaded{
                   [](const NoCrosstalk&) {},
                   [](const UniformCrosstalk& x) { require_crosstalk(x.c); },
                   [](const SinPeakCrosstalk& x) {
                       require_crosstalk(x.c);
                       require_positive(x.q, "q");
                   },
               },
               crosstalk);
}

std::string efficiency_family_name(const Efficiency& efficiency) {
    return std::visit(Overloaded{
                          [](const UniformEfficiency&) { return std::string("uniform"); },
                          [](const SinDipEfficiency&) { return std::string("sin_dip"); },
                          [](const MalusPowerEfficiency&) { return std::string("malus_power"); },
                      },
                      efficiency);
}

std::string crosstalk_family_name(const Crosstalk& crosstalk) {
    return std::visit(Overloaded{
                          [](const NoCrosstalk&) { return std::string("none"); },
                          [](const UniformCrosstalk&) { return std::string("uniform"); },
                          [](const SinPeakCrosstalk&) { return std::string("sin_peak"); },
                      },
                      crosstalk);
}

}  // namespace bellsim
