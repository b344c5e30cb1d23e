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
#include <vector>

#include "bellsim/detection.hpp"

namespace battery {

struct NamedProfile {
    std::string name;
    bellsim::DetectionProfile profile;
};

/// Twelve detection profiles covering every efficiency and crosstalk family.
inline std::vector<NamedProfile> profiles() {
    using namespace bellsim;
    return {
        {"ideal", DetectionProfile::ideal()},
        {"uniform(0.5)", {UniformEfficiency{0.5}, NoCrosstalk{}}},
        {"uniform(0.1)", {UniformEfficiency{0.1}, NoCrosstalk{}}},
        {"sin_dip(0.5,1)", {SinDipEfficiency{0.5, 1.0}, NoCrosstalk{}}},
        {"sin_dip(1,1)", {SinDipEfficiency{1.0, 1.0}, NoCrosstalk{}}},
        {"sin_dip(0.8,4)", {SinDipEfficiency{0.8, 4.0}, NoCrosstalk{}}},
        {"malus_power(0.5)", {MalusPowerEfficiency{0.5}, NoCrosstalk{}}},
        {"malus_power(2)", {MalusPowerEfficiency{2.0}, NoCrosstalk{}}},
        {"malus_power(8)", {MalusPowerEfficiency{8.0}, NoCrosstalk{}}},
        {"uniform+x(0.1)", {UniformEfficiency{1.0}, UniformCrosstalk{0.1}}},
        {"sin_dip(0.6,2)+peak(0.3,2)", {SinDipEfficiency{0.6, 2.0}, SinPeakCrosstalk{0.3, 2.0}}},
        {"malus_power(1)+peak(0.2,1)", {MalusPowerEfficiency{1.0}, SinPeakCrosstalk{0.2, 1.0}}},
    };
}

}  // namespace battery
