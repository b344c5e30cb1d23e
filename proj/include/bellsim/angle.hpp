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

#include <compare>
#include <numbers>

namespace bellsim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kQuarterPi = std::numbers::pi / 4.0;

/// A plane of polarization or an analyzer axis, stored in radians.
///
/// A plane is pi-periodic, so every Angle is held in its canonical form in
/// [0, pi). The only ways to build one go through canonicalization.
class Angle {
  public:
    constexpr Angle() = default;

    /// Throws std::invalid_argument when `radians` is not finite.
    static Angle from_radians(double radians);
    static Angle from_degrees(double degrees);

    constexpr double radians() const noexcept { return value_; }
    double degrees() const noexcept;

    friend constexpr bool operator==(Angle, Angle) = default;
    friend constexpr auto operator<=>(Angle, Angle) = default;

  private:
    explicit constexpr Angle(double canonical) : value_(canonical) {}

    double value_ = 0.0;
};

/// Reduces `x` modulo pi into [0, pi).
Angle canonicalize_angle(double x);

/// (lambda - analyzer) mod pi; the plane difference entering Malus' law.
double malus_delta(Angle lambda, Angle analyzer) noexcept;

/// malus_delta folded into [0, pi/2] by min(d, pi - d). Equals pi/4 when the
/// polarization plane bisects the two channel axes of the analyzer.
double loss_delta(Angle lambda, Angle analyzer) noexcept;

}  // namespace bellsim
