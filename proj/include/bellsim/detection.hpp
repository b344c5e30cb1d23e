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

#include <string>
#include <variant>

namespace bellsim {

// Efficiency families. Every function of the folded angle d' in [0, pi/2].

/// eta(d') = eta0.
struct UniformEfficiency {
    double eta0 = 1.0;
    friend bool operator==(const UniformEfficiency&, const UniformEfficiency&) = default;
};

/// eta(d') = 1 - eps * sin^p(2 d'); deepest loss at d' = pi/4.
struct SinDipEfficiency {
    double eps = 0.0;
    double p = 1.0;
    friend bool operator==(const SinDipEfficiency&, const SinDipEfficiency&) = default;
};

/// eta(d') = cos^(2p)(2 d') on [0, pi/4], mirrored onto [pi/4, pi/2].
/// One on the channel axes, zero on the bisector.
struct MalusPowerEfficiency {
    double p = 1.0;
    friend bool operator==(const MalusPowerEfficiency&, const MalusPowerEfficiency&) = default;
};

using Efficiency = std::variant<UniformEfficiency, SinDipEfficiency, MalusPowerEfficiency>;

// Crosstalk families: probability that a transmitted photon leaves by the
// wrong channel.

struct NoCrosstalk {
    friend bool operator==(const NoCrosstalk&, const NoCrosstalk&) = default;
};

/// x(d') = c.
struct UniformCrosstalk {
    double c = 0.0;
    friend bool operator==(const UniformCrosstalk&, const UniformCrosstalk&) = default;
};

/// x(d') = c * sin^q(2 d').
struct SinPeakCrosstalk {
    double c = 0.0;
    double q = 1.0;
    friend bool operator==(const SinPeakCrosstalk&, const SinPeakCrosstalk&) = default;
};

using Crosstalk = std::variant<NoCrosstalk, UniformCrosstalk, SinPeakCrosstalk>;

/// Polarization-dependent behaviour of one two-channel analyzer arm.
struct DetectionProfile {
    Efficiency efficiency = UniformEfficiency{};
    Crosstalk crosstalk = NoCrosstalk{};

    static DetectionProfile ideal() { return {}; }

    /// Survival probability at folded angle `folded` in [0, pi/2].
    double efficiency_at(double folded) const;
    /// Misrouting probability at folded angle `folded` in [0, pi/2].
    double crosstalk_at(double folded) const;

    /// Throws std::invalid_argument naming the offending parameter.
    void validate() const;

    friend bool operator==(const DetectionProfile&, const DetectionProfile&) = default;
};

std::string efficiency_family_name(const Efficiency& efficiency);
std::string crosstalk_family_name(const Crosstalk& crosstalk);

}  // namespace bellsim
