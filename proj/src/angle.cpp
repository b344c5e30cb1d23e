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

#include "bellsim/angle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bellsim {

namespace {

double reduce_mod_pi(double x) noexcept {
    double r = std::fmod(x, kPi);
    if (r < 0.0) {
        r += kPi;
    }
    // -tiny + pi rounds to pi
    if (r >= kPi) {
        r = 0.0;
    }
    return r;
}

}  // namespace

Angle Angle::from_radians(double radians) {
    if (!std::isfinite(radians)) {
        throw std::invalid_argument("angle must be finite, got " + std::to_string(radians));
    }
    return Angle(reduce_mod_pi(radians));
}

Angle Angle::from_degrees(double degrees) {
    if (!std::isfinite(degrees)) {
        throw std::invalid_argument("angle must be finite, got " + std::to_string(degrees));
    }
    return from_radians(degrees * (kPi / 180.0));
}

double Angle::degrees() const noexcept { return value_ * (180.0 / kPi); }

Angle canonicalize_angle(double x) { return Angle::from_radians(x); }

double malus_delta(Angle lambda, Angle analyzer) noexcept {
    return reduce_mod_pi(lambda.radians() - analyzer.radians());
}

double loss_delta(Angle lambda, Angle analyzer) noexcept {
    const double delta = malus_delta(lambda, analyzer);
    return std::min(delta, kPi - delta);
}

}  // namespace bellsim
