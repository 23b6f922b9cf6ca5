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

#include "qftdyn/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qftdyn {

namespace {

constexpr double kTimeEpsilon = 1e-9;

struct Span {
    std::uint32_t qubit;
    double start;
    double end;

    bool contains(double t) const {
        return start < t && t < end;
    }
};

}  // namespace

Schedule schedule_alap(const Circuit &circuit, const TimingModel &timing) {
    require_valid(circuit);
    timing.validate();
    constexpr double kNone = -std::numeric_limits<double>::infinity();
    const auto &insts = circuit.instructions();

    // Times measured backwards from the end of the circuit.
    std::vector<double> qubit_back(circuit.n_qubits(), 0.0);
    std::vector<double> reader_back(circuit.n_clbits(), kNone);
    std::vector<double> writer_back(circuit.n_clbits(), kNone);
    std::vector<double> back_end(insts.size()), back_start(insts.size());

    for (std::size_t i = insts.size(); i-- > 0;) {
        const Instruction &inst = insts[i];
        if (inst.kind == GateKind::Barrier) {
            double top = *std::max_element(qubit_back.begin(), qubit_back.end());
            std::fill(qubit_back.begin(), qubit_back.end(), top);
            back_end[i] = back_start[i] = top;
            continue;
        }
        double e = 0.0;
        for (QubitId q : inst.qubits) {
            e = std::max(e, qubit_back[q.index]);
        }
        if (inst.clbit.has_value()) {
            std::uint32_t c = inst.clbit->index;
            e = std::max(e, writer_back[c]);
            if (inst.kind == GateKind::Measure) {
                e = std::max(e, reader_back[c] + timing.t_ff);
            }
        }
        double s = e + timing.duration_of(inst);
        back_end[i] = e;
        back_start[i] = s;
        for (QubitId q : inst.qubits) {
            qubit_back[q.index] = s;
        }
        if (inst.kind == GateKind::Measure) {
            reader_back[inst.clbit->index] = kNone;
            writer_back[inst.clbit->index] = e;
        } else if (is_classically_controlled(inst.kind)) {
            double &r = reader_back[inst.clbit->index];
            r = std::max(r, s);
        }
    }

    Schedule out;
    out.makespan = 0.0;
    for (double v : back_start) {
        out.makespan = std::max(out.makespan, v);
    }
    for (double v : qubit_back) {
        out.makespan = std::max(out.makespan, v);
    }
    out.start.resize(insts.size());
    out.end.resize(insts.size());
    for (std::size_t i = 0; i < insts.size(); ++i) {
        out.start[i] = out.makespan - back_start[i];
        out.end[i] = out.makespan - back_end[i];
    }
    return out;
}

std::string_view window_kind_name(WindowKind kind) {
    switch (kind) {
        case WindowKind::Plain:
            return "plain";
        case WindowKind::ReadoutConcurrent:
            return "readout_concurrent";
        case WindowKind::FeedforwardConcurrent:
            return "feedforward_concurrent";
    }
    return "?";
}

std::vector<IdleWindow> find_idle_windows(const Circuit &circuit, const TimingModel &timing) {
    const Schedule sched = schedule_alap(circuit, timing);
    const auto &insts = circuit.instructions();

    std::vector<Span> readout;
    std::vector<Span> feedforward;
    for (std::size_t i = 0; i < insts.size(); ++i) {
        if (insts[i].kind != GateKind::Measure) {
            continue;
        }
        readout.push_back({insts[i].qubits[0].index, sched.start[i], sched.end[i]});
        std::uint32_t c = insts[i].clbit->index;
        bool read_later = false;
        for (std::size_t j = i + 1; j < insts.size(); ++j) {
            if (!insts[j].clbit.has_value() || insts[j].clbit->index != c) {
                continue;
            }
            if (insts[j].kind == GateKind::Measure) {
                break;
            }
            read_later = true;
            break;
        }
        if (read_later && timing.t_ff > 0.0) {
            feedforward.push_back({insts[i].qubits[0].index, sched.end[i], sched.end[i] + timing.t_ff});
        }
    }

    std::vector<IdleWindow> windows;
    auto add_gap = [&](std::uint32_t q, std::size_t gap, double a, double b, std::optional<std::size_t> next) {
        std::vector<double> cuts = {a, b};
        for (const auto &span : readout) {
            if (span.qubit != q) {
                cuts.push_back(span.start);
                cuts.push_back(span.end);
            }
        }
        for (const auto &span : feedforward) {
            cuts.push_back(span.start);
            cuts.push_back(span.end);
        }
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            double x = std::max(a, cuts[k]);
            double y = std::min(b, cuts[k + 1]);
            if (y - x <= kTimeEpsilon) {
                continue;
            }
            double mid = (x + y) / 2;
            WindowKind kind = WindowKind::Plain;
            if (std::any_of(feedforward.begin(), feedforward.end(), [&](const Span &s) { return s.contains(mid); })) {
                kind = WindowKind::FeedforwardConcurrent;
            } else if (std::any_of(readout.begin(), readout.end(),
                                   [&](const Span &s) { return s.qubit != q && s.contains(mid); })) {
                kind = WindowKind::ReadoutConcurrent;
            }
            if (!windows.empty() && windows.back().qubit.index == q && windows.back().gap == gap &&
                windows.back().kind == kind && std::abs(windows.back().end() - x) <= kTimeEpsilon) {
                windows.back().duration = y - windows.back().start;
                continue;
            }
            windows.push_back({QubitId{q}, x, y - x, kind, gap, next});
        }
    };

    for (std::uint32_t q = 0; q < circuit.n_qubits(); ++q) {
        double idle_since = 0.0;
        std::optional<double> trailing_delay_end;
        std::size_t gap = 0;
        for (std::size_t i = 0; i < insts.size(); ++i) {
            const Instruction &inst = insts[i];
            if (inst.kind == GateKind::Barrier || !inst.touches(QubitId{q})) {
                continue;
            }
            if (inst.kind == GateKind::Delay) {
                trailing_delay_end = sched.end[i];
                continue;
            }
            trailing_delay_end.reset();
            if (sched.start[i] - idle_since > kTimeEpsilon) {
                add_gap(q, gap++, idle_since, sched.start[i], i);
            }
            idle_since = sched.end[i];
        }
        if (trailing_delay_end.has_value() && *trailing_delay_end - idle_since > kTimeEpsilon) {
            add_gap(q, gap++, idle_since, *trailing_delay_end, std::nullopt);
        }
    }
    return windows;
}

}  // namespace qftdyn
