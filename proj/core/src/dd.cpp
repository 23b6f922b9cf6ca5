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

#include "qftdyn/dd.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qftdyn {

namespace {

constexpr double kTimeEpsilon = 1e-9;
constexpr double kPi = std::numbers::pi;

struct Pattern {
    std::string name;
    std::vector<double> phases;
};

Pattern x2_pattern() {
    return {"X2", {0.0, 0.0}};
}

Pattern xy4_pattern() {
    return {"XY4", {0.0, kPi / 2, 0.0, kPi / 2}};
}

Pattern ur_pattern(std::uint32_t p) {
    return {"UR" + std::to_string(p), ur_phases(p)};
}

std::string format_ns(double t) {
    std::ostringstream ss;
    ss << t;
    return ss.str();
}

class Filler {
   public:
    Filler(const TimingModel &timing, const DdSequence &sequence, DdReport &report)
        : pulse_(timing.t_1q_gate), sequence_(sequence), report_(report) {}

    // Emits the instructions for one idle stretch of qubit q.
    std::vector<Instruction> gap(std::uint32_t q, const std::vector<IdleWindow> &segments) {
        q_ = q;
        out_.clear();
        cursor_ = segments.front().start;
        if (sequence_.kind == DdKind::FcDd) {
            feedforward_compensated(segments);
        } else {
            uniform(segments);
        }
        return std::move(out_);
    }

   private:
    void idle_until(double t) {
        if (t - cursor_ > kTimeEpsilon) {
            // Femtosecond grid keeps printed durations free of subtraction noise.
            out_.push_back(Instruction::delay(q_, std::round((t - cursor_) * 1e6) / 1e6));
        }
        cursor_ = std::max(cursor_, t);
    }

    void pulse(double center, double phase) {
        idle_until(center - pulse_ / 2);
        if (phase == 0.0) {
            out_.push_back(Instruction::x(q_));
        } else if (phase == kPi / 2) {
            out_.push_back(Instruction::y(q_));
        } else {
            out_.push_back(Instruction::rz(q_, Angle::from_radians(-phase)));
            out_.push_back(Instruction::x(q_));
            out_.push_back(Instruction::rz(q_, Angle::from_radians(phase)));
        }
        cursor_ = center + pulse_ / 2;
        report_.pulses.push_back({QubitId{q_}, center, phase});
    }

    bool fits(const Pattern &p, double length) const {
        return static_cast<double>(p.phases.size()) * pulse_ <= length + kTimeEpsilon;
    }

    void place(const Pattern &p, double a, double b) {
        const double step = (b - a) / static_cast<double>(p.phases.size());
        for (std::size_t i = 0; i < p.phases.size(); ++i) {
            pulse(a + (static_cast<double>(i) + 0.5) * step, p.phases[i]);
        }
        idle_until(b);
    }

    void warn_short(const Pattern &p, double a, double b) {
        std::ostringstream ss;
        ss << "q" << q_ << ": window [" << format_ns(a) << ", " << format_ns(b) << "] ns is too short for "
           << p.name << "; left as DELAY";
        report_.warnings.push_back(ss.str());
    }

    // Fills [a, b] with `p`, falling back for UR sequences by capacity.
    void fill(const Pattern &p, double a, double b) {
        if (b - a <= kTimeEpsilon) {
            idle_until(b);
            return;
        }
        if (fits(p, b - a)) {
            place(p, a, b);
            return;
        }
        if (p.name.rfind("UR", 0) == 0) {
            for (const Pattern &alt : {xy4_pattern(), x2_pattern()}) {
                if (fits(alt, b - a)) {
                    report_.fallbacks[p.name + "->" + alt.name] += 1;
                    place(alt, a, b);
                    return;
                }
            }
            report_.fallbacks[p.name + "->NONE"] += 1;
            idle_until(b);
            return;
        }
        warn_short(p, a, b);
        idle_until(b);
    }

    Pattern base_pattern() const {
        switch (sequence_.kind) {
            case DdKind::X2:
                return x2_pattern();
            case DdKind::XY4:
            case DdKind::FcDd:
                return xy4_pattern();
            case DdKind::UR:
                return ur_pattern(sequence_.order);
            case DdKind::None:
                break;
        }
        return {"NONE", {}};
    }

    void uniform(const std::vector<IdleWindow> &segments) {
        const Pattern p = base_pattern();
        double run_start = cursor_;
        for (const auto &seg : segments) {
            if (seg.kind != WindowKind::FeedforwardConcurrent) {
                continue;
            }
            if (!p.phases.empty()) {
                fill(p, run_start, seg.start);
            }
            idle_until(seg.end());
            run_start = seg.end();
        }
        if (!p.phases.empty()) {
            fill(p, run_start, segments.back().end());
        }
        idle_until(segments.back().end());
    }

    void feedforward_compensated(const std::vector<IdleWindow> &segments) {
        const Pattern xy4 = xy4_pattern();
        double run_start = cursor_;
        for (std::size_t j = 0; j < segments.size(); ++j) {
            const IdleWindow &seg = segments[j];
            if (seg.kind != WindowKind::FeedforwardConcurrent) {
                continue;
            }
            const double ff_start = seg.start;
            const double ff_length = seg.duration;
            const bool after_readout = j > 0 && segments[j - 1].kind == WindowKind::ReadoutConcurrent;
            if (!after_readout) {
                fill(xy4, run_start, ff_start);
                idle_until(seg.end());
                run_start = seg.end();
                continue;
            }
            // The first bracket pulse ends where feed-forward starts and the
            // second ends where it stops, so their centres are ff_length apart.
            const double first = ff_start - pulse_ / 2;
            const double second = first + ff_length;
            const double echo_start = first - ff_length;
            if (echo_start + kTimeEpsilon < run_start || 2 * pulse_ > ff_length + kTimeEpsilon) {
                std::ostringstream ss;
                ss << "q" << q_ << ": readout window [" << format_ns(segments[j - 1].start) << ", "
                   << format_ns(ff_start) << "] ns is shorter than the feed-forward time; FC_DD reduced to an X2 "
                   << "bracket";
                report_.warnings.push_back(ss.str());
                if (pulse_ <= ff_length + kTimeEpsilon) {
                    pulse(std::max(first, cursor_ + pulse_ / 2), 0.0);
                    pulse(second, 0.0);
                }
            } else {
                fill(xy4, run_start, echo_start);
                pulse(first, 0.0);
                pulse(second, 0.0);
            }
            idle_until(seg.end());
            run_start = seg.end();
        }
        fill(xy4, run_start, segments.back().end());
        idle_until(segments.back().end());
    }

    double pulse_;
    DdSequence sequence_;
    DdReport &report_;
    std::uint32_t q_ = 0;
    double cursor_ = 0.0;
    std::vector<Instruction> out_;
};

}  // namespace

DdSequence DdSequence::ur(std::uint32_t p) {
    if (p < 2 || p % 2 != 0) {
        throw std::invalid_argument("UR sequences need an even pulse count >= 2, got " + std::to_string(p));
    }
    return {DdKind::UR, p};
}

DdSequence DdSequence::parse(std::string_view name) {
    std::string key;
    for (char ch : name) {
        if (ch == '-') {
            ch = '_';
        }
        if (ch != '(' && ch != ')') {
            key.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
        }
    }
    if (key == "NONE") {
        return none();
    }
    if (key == "X2") {
        return x2();
    }
    if (key == "XY4") {
        return xy4();
    }
    if (key == "FC_DD" || key == "FCDD") {
        return fc_dd();
    }
    if (key.size() > 2 && key.rfind("UR", 0) == 0) {
        std::uint32_t p = 0;
        auto [ptr, ec] = std::from_chars(key.data() + 2, key.data() + key.size(), p);
        if (ec == std::errc{} && ptr == key.data() + key.size()) {
            return ur(p);
        }
    }
    throw std::invalid_argument("unknown DD sequence '" + std::string(name) +
                                "' (expected NONE, X2, XY4, URp or FC_DD)");
}

std::string DdSequence::name() const {
    switch (kind) {
        case DdKind::None:
            return "NONE";
        case DdKind::X2:
            return "X2";
        case DdKind::XY4:
            return "XY4";
        case DdKind::UR:
            return "UR" + std::to_string(order);
        case DdKind::FcDd:
            return "FC_DD";
    }
    return "?";
}

std::vector<double> ur_phases(std::uint32_t p) {
    if (p < 2 || p % 2 != 0) {
        throw std::invalid_argument("UR sequences need an even pulse count >= 2, got " + std::to_string(p));
    }
    // Phi = pi * num / den, kept as a fraction so reduction mod 2 pi is exact.
    std::int64_t num = 0;
    std::int64_t den = 1;
    if (p % 4 == 0) {
        num = 1;
        den = p / 4;
    } else {
        std::int64_t m = (p - 2) / 4;
        num = 2 * m;
        den = 2 * m + 1;
    }
    std::vector<double> phases(p);
    for (std::int64_t k = 1; k <= static_cast<std::int64_t>(p); ++k) {
        std::int64_t steps = (k - 1) * (k - 2) / 2;
        std::int64_t reduced = (steps * num) % (2 * den);
        phases[static_cast<std::size_t>(k - 1)] = kPi * static_cast<double>(reduced) / static_cast<double>(den);
    }
    return phases;
}

DdReport insert_dd_report(const Circuit &circuit, const TimingModel &timing, const DdSequence &sequence) {
    if (circuit.metadata_value("dd").has_value()) {
        throw std::invalid_argument("circuit already carries a DD schedule");
    }
    if (sequence.kind == DdKind::UR) {
        ur_phases(sequence.order);
    }
    const auto windows = find_idle_windows(circuit, timing);

    // Group contiguous windows by (qubit, gap); emit each group before the instruction ending it.
    std::map<std::size_t, std::vector<std::vector<IdleWindow>>> before;
    std::vector<std::vector<IdleWindow>> trailing;
    for (std::size_t k = 0; k < windows.size();) {
        std::size_t e = k;
        while (e < windows.size() && windows[e].qubit == windows[k].qubit && windows[e].gap == windows[k].gap) {
            ++e;
        }
        std::vector<IdleWindow> group(windows.begin() + static_cast<std::ptrdiff_t>(k),
                                      windows.begin() + static_cast<std::ptrdiff_t>(e));
        if (group.front().next_instruction.has_value()) {
            before[*group.front().next_instruction].push_back(std::move(group));
        } else {
            trailing.push_back(std::move(group));
        }
        k = e;
    }

    DdReport report;
    Filler filler(timing, sequence, report);
    Circuit out(circuit.n_qubits(), circuit.n_clbits());
    for (const auto &[key, value] : circuit.metadata()) {
        out.set_metadata(key, value);
    }
    auto emit = [&](const std::vector<IdleWindow> &group) {
        for (auto &inst : filler.gap(group.front().qubit.index, group)) {
            out.append(std::move(inst));
        }
    };
    for (std::size_t i = 0; i < circuit.size(); ++i) {
        if (auto it = before.find(i); it != before.end()) {
            for (const auto &group : it->second) {
                emit(group);
            }
        }
        if (circuit[i].kind != GateKind::Delay) {
            out.append(circuit[i]);
        }
    }
    for (const auto &group : trailing) {
        emit(group);
    }

    out.set_metadata("schedule", "alap");
    out.set_metadata("dd", sequence.name());
    if (!report.fallbacks.empty()) {
        std::string summary;
        for (const auto &[what, count] : report.fallbacks) {
            summary += (summary.empty() ? "" : ",") + what + ":" + std::to_string(count);
        }
        out.set_metadata("dd_fallbacks", summary);
    }
    report.circuit = std::move(out);
    return report;
}

Circuit insert_dd(const Circuit &circuit, const TimingModel &timing, const DdSequence &sequence) {
    return insert_dd_report(circuit, timing, sequence).circuit;
}

}  // namespace qftdyn
