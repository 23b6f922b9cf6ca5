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

#ifndef QFTDYN_SCHEDULE_HPP
#define QFTDYN_SCHEDULE_HPP

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qftdyn/circuit.hpp"
#include "qftdyn/noise.hpp"

namespace qftdyn {

/// Start and end time (ns) of every instruction.
struct Schedule {
    std::vector<double> start;
    std::vector<double> end;
    double makespan = 0.0;
};

/// As-late-as-possible list schedule in program order. Instructions on a
/// qubit do not overlap, a classically controlled instruction starts no
/// earlier than t_ff after the measurement it reads ends, and BARRIER aligns
/// every qubit.
Schedule schedule_alap(const Circuit &circuit, const TimingModel &timing);

enum class WindowKind { Plain, ReadoutConcurrent, FeedforwardConcurrent };

std::string_view window_kind_name(WindowKind kind);

struct IdleWindow {
    QubitId qubit;
    double start = 0.0;
    double duration = 0.0;
    WindowKind kind = WindowKind::Plain;
    /// Windows sharing a gap index on a qubit are contiguous pieces of one idle stretch.
    std::size_t gap = 0;
    /// Instruction that ends the idle stretch, if any.
    std::optional<std::size_t> next_instruction;

    double end() const {
        return start + duration;
    }
};

/// Idle stretches of every qubit under schedule_alap, split where another
/// qubit's readout or a feed-forward latency begins or ends. Explicit DELAYs
/// count as idle time. Feed-forward time takes precedence over readout.
std::vector<IdleWindow> find_idle_windows(const Circuit &circuit, const TimingModel &timing);

}  // namespace qftdyn

#endif
