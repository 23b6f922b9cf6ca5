// Copyright 2026 The qftdyn Authors
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

#ifndef QFTDYN_DD_HPP
#define QFTDYN_DD_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qftdyn/circuit.hpp"
#include "qftdyn/noise.hpp"
#include "qftdyn/schedule.hpp"

namespace qftdyn {

enum class DdKind { None, X2, XY4, UR, FcDd };

struct DdSequence {
    DdKind kind = DdKind::None;
    /// Pulse count of UR sequences (even, >= 2); unused otherwise.
    std::uint32_t order = 0;

    static DdSequence none() {
        return {};
    }
    static DdSequence x2() {
        return {DdKind::X2, 0};
    }
    static DdSequence xy4() {
        return {DdKind::XY4, 0};
    }
    static DdSequence ur(std::uint32_t p);
    static DdSequence fc_dd() {
        return {DdKind::FcDd, 0};
    }

    /// Accepts NONE, X2, XY4, URp / UR(p) and FC_DD (case-insensitive, '-' or '_').
    static DdSequence parse(std::string_view name);
    /// Canonical name: NONE, X2, XY4, UR10, FC_DD.
    std::string name() const;

    bool operator==(const DdSequence &) const = default;
};

/// Rotation-axis phases (radians, reduced to [0, 2pi)) of the p-pulse UR sequence.
std::vector<double> ur_phases(std::uint32_t p);

/// A pi pulse about the axis at angle `phase` from X in the XY plane.
struct PulseTiming {
    QubitId qubit;
    double center = 0.0;
    double phase = 0.0;
};

struct DdReport {
    Circuit circuit;
    std::vector<PulseTiming> pulses;
    /// One entry per window that could not hold its sequence, or per FC-DD degradation.
    std::vector<std::string> warnings;
    /// "UR10->XY4" style substitutions and how often they happened.
    std::map<std::string, std::size_t> fallbacks;
};

/// Materializes every idle window as DELAYs and fills it with `sequence`.
///
/// Pulses of an N-pulse sequence in a window [a, a + T] are centred at
/// a + (i - 1/2) T / N. Feed-forward windows never receive pulses. FC_DD pairs
/// each readout window with the feed-forward window that follows it: XY4 over
/// the first t_readout - t_ff, nothing for the next t_ff, then one X at each
/// end of the feed-forward window. The result carries metadata
/// schedule=alap and dd=<name>.
DdReport insert_dd_report(const Circuit &circuit, const TimingModel &timing, const DdSequence &sequence);

Circuit insert_dd(const Circuit &circuit, const TimingModel &timing, const DdSequence &sequence);

}  // namespace qftdyn

#endif
