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

#include "bellsim/types.hpp"

namespace bellsim {

bool has_polarization(const PairState& state) noexcept {
    return !std::holds_alternative<QuantumUncollapsed>(state);
}

Angle polarization_of(const PairState& state) {
    if (const auto* classical = std::get_if<ClassicalLambda>(&state)) {
        return classical->lambda;
    }
    if (const auto* collapsed = std::get_if<QuantumCollapsed>(&state)) {
        return collapsed->polarization;
    }
    throw std::logic_error("an uncollapsed quantum pair has no polarization");
}

bool is_detected(ChannelOutcome outcome) noexcept { return outcome != ChannelOutcome::Undetected; }

int channel_sign(ChannelOutcome outcome) {
    switch (outcome) {
        case ChannelOutcome::Plus:
            return 1;
        case ChannelOutcome::Minus:
            return -1;
        case ChannelOutcome::Undetected:
            break;
    }
    throw std::logic_error("an undetected photon has no channel sign");
}

ChannelOutcome flipped(ChannelOutcome outcome) noexcept {
    switch (outcome) {
        case ChannelOutcome::Plus:
            return ChannelOutcome::Minus;
        case ChannelOutcome::Minus:
            return ChannelOutcome::Plus;
        case ChannelOutcome::Undetected:
            break;
    }
    return ChannelOutcome::Undetected;
}

void CountsTable::record(ChannelOutcome a, ChannelOutcome b) noexcept {
    ++n_total;
    const bool seen_a = is_detected(a);
    const bool seen_b = is_detected(b);
    if (seen_a && seen_b) {
        const bool plus_a = a == ChannelOutcome::Plus;
        const bool plus_b = b == ChannelOutcome::Plus;
        if (plus_a) {
            ++(plus_b ? n_pp : n_pm);
        } else {
            ++(plus_b ? n_mp : n_mm);
        }
    } else if (seen_a) {
        ++singles_a;
    } else if (seen_b) {
        ++singles_b;
    } else {
        ++n_null;
    }
}

bool CountsTable::is_conserved() const noexcept {
    return n_total == coincidences() + singles_a + singles_b + n_null;
}

CountsTable& CountsTable::operator+=(const CountsTable& other) noexcept {
    n_pp += other.n_pp;
    n_pm += other.n_pm;
    n_mp += other.n_mp;
    n_mm += other.n_mm;
    singles_a += other.singles_a;
    singles_b += other.singles_b;
    n_null += other.n_null;
    n_total += other.n_total;
    return *this;
}

CountsTable swap_channels_b(const CountsTable& counts) noexcept {
    CountsTable out = counts;
    out.n_pp = counts.n_pm;
    out.n_pm = counts.n_pp;
    out.n_mp = counts.n_mm;
    out.n_mm = counts.n_mp;
    return out;
}

CountsTable transpose(const CountsTable& counts) noexcept {
    CountsTable out = counts;
    out.n_pm = counts.n_mp;
    out.n_mp = counts.n_pm;
    out.singles_a = counts.singles_b;
    out.singles_b = counts.singles_a;
    return out;
}

}  // namespace bellsim
