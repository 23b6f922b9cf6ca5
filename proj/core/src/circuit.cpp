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

#include "qftdyn/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qftdyn {

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "H";
        case GateKind::X:
            return "X";
        case GateKind::Y:
            return "Y";
        case GateKind::Rz:
            return "RZ";
        case GateKind::CPhase:
            return "CPHASE";
        case GateKind::Measure:
            return "MEASURE";
        case GateKind::ClassicalRz:
            return "CLASSICAL_RZ";
        case GateKind::ClassicalX:
            return "CLASSICAL_X";
        case GateKind::Delay:
            return "DELAY";
        case GateKind::Barrier:
            return "BARRIER";
    }
    return "?";
}

bool is_physical_gate(GateKind kind) {
    switch (kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::ClassicalX:
        case GateKind::CPhase:
            return true;
        default:
            return false;
    }
}

bool is_virtual_gate(GateKind kind) {
    return kind == GateKind::Rz || kind == GateKind::ClassicalRz;
}

bool is_diagonal(GateKind kind) {
    switch (kind) {
        case GateKind::Rz:
        case GateKind::CPhase:
        case GateKind::ClassicalRz:
        case GateKind::Measure:
        case GateKind::Delay:
        case GateKind::Barrier:
            return true;
        default:
            return false;
    }
}

bool is_classically_controlled(GateKind kind) {
    return kind == GateKind::ClassicalRz || kind == GateKind::ClassicalX;
}

Instruction Instruction::h(std::uint32_t q) {
    return Instruction{GateKind::H, {QubitId{q}}, {}, {}, 0.0};
}

Instruction Instruction::x(std::uint32_t q) {
    return Instruction{GateKind::X, {QubitId{q}}, {}, {}, 0.0};
}

Instruction Instruction::y(std::uint32_t q) {
    return Instruction{GateKind::Y, {QubitId{q}}, {}, {}, 0.0};
}

Instruction Instruction::rz(std::uint32_t q, Angle angle) {
    return Instruction{GateKind::Rz, {QubitId{q}}, angle, {}, 0.0};
}

Instruction Instruction::cphase(std::uint32_t a, std::uint32_t b, Angle angle) {
    return Instruction{GateKind::CPhase, {QubitId{a}, QubitId{b}}, angle, {}, 0.0};
}

Instruction Instruction::measure(std::uint32_t q, std::uint32_t c) {
    return Instruction{GateKind::Measure, {QubitId{q}}, {}, ClbitId{c}, 0.0};
}

Instruction Instruction::classical_rz(std::uint32_t q, std::uint32_t condition, Angle angle) {
    return Instruction{GateKind::ClassicalRz, {QubitId{q}}, angle, ClbitId{condition}, 0.0};
}

Instruction Instruction::classical_x(std::uint32_t q, std::uint32_t condition) {
    return Instruction{GateKind::ClassicalX, {QubitId{q}}, {}, ClbitId{condition}, 0.0};
}

Instruction Instruction::delay(std::uint32_t q, double duration_ns) {
    return Instruction{GateKind::Delay, {QubitId{q}}, {}, {}, duration_ns};
}

Instruction Instruction::barrier() {
    return Instruction{GateKind::Barrier, {}, {}, {}, 0.0};
}

bool Instruction::touches(QubitId q) const {
    if (kind == GateKind::Barrier) {
        return true;
    }
    return std::find(qubits.begin(), qubits.end(), q) != qubits.end();
}

Circuit::Circuit(std::uint32_t n_qubits, std::uint32_t n_clbits) : n_qubits_(n_qubits), n_clbits_(n_clbits) {
}

std::optional<std::string> Circuit::metadata_value(const std::string &key) const {
    auto it = metadata_.find(key);
    if (it == metadata_.end()) {
        return std::nullopt;
    }
    return it->second;
}

Circuit &Circuit::append(Instruction instruction) {
    instructions_.push_back(std::move(instruction));
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    instructions_.insert(instructions_.end(), other.instructions_.begin(), other.instructions_.end());
    return *this;
}

Circuit &Circuit::set_metadata(std::string key, std::string value) {
    metadata_[std::move(key)] = std::move(value);
    return *this;
}

namespace {

std::size_t expected_operands(GateKind kind) {
    switch (kind) {
        case GateKind::CPhase:
            return 2;
        case GateKind::Barrier:
            return 0;
        default:
            return 1;
    }
}

}  // namespace

std::vector<Violation> validate(const Circuit &circuit) {
    std::vector<Violation> out;
    if (circuit.n_qubits() < 1) {
        out.push_back({std::nullopt, "circuit must declare at least one qubit"});
    }
    if (circuit.n_clbits() > 64) {
        out.push_back({std::nullopt, "at most 64 classical bits are supported"});
    }
    std::vector<bool> measured(circuit.n_qubits(), false);
    std::vector<bool> written(circuit.n_clbits(), false);
    auto add = [&](std::size_t i, std::string message) {
        out.push_back({i, std::move(message)});
    };

    for (std::size_t i = 0; i < circuit.size(); ++i) {
        const Instruction &inst = circuit[i];
        std::string name(gate_name(inst.kind));
        if (inst.qubits.size() != expected_operands(inst.kind)) {
            std::ostringstream ss;
            ss << name << " expects " << expected_operands(inst.kind) << " qubit operand(s), got "
               << inst.qubits.size();
            add(i, ss.str());
            continue;
        }
        bool operands_ok = true;
        for (std::size_t a = 0; a < inst.qubits.size(); ++a) {
            if (inst.qubits[a].index >= circuit.n_qubits()) {
                add(i, name + " operand q" + std::to_string(inst.qubits[a].index) + " out of range");
                operands_ok = false;
            }
            for (std::size_t b = a + 1; b < inst.qubits.size(); ++b) {
                if (inst.qubits[a] == inst.qubits[b]) {
                    add(i, name + " acts twice on q" + std::to_string(inst.qubits[a].index));
                    operands_ok = false;
                }
            }
        }
        if (!std::isfinite(inst.angle.radians())) {
            add(i, name + " angle is not finite");
        }
        if (inst.angle.dyadic().has_value()) {
            const auto &d = *inst.angle.dyadic();
            if (Angle::dyadic_pi(d.numerator, d.log2_denominator) != inst.angle) {
                add(i, name + " dyadic angle tag disagrees with its radian value");
            }
        }
        if (!std::isfinite(inst.duration_ns) || inst.duration_ns < 0) {
            add(i, name + " duration must be a finite non-negative number");
        }
        if (inst.kind != GateKind::Delay && inst.duration_ns != 0.0) {
            add(i, name + " carries a duration; only DELAY does");
        }
        bool needs_angle = inst.kind == GateKind::Rz || inst.kind == GateKind::CPhase || inst.kind == GateKind::ClassicalRz;
        if (!needs_angle && !inst.angle.is_zero()) {
            add(i, name + " does not take an angle");
        }

        bool needs_clbit = inst.kind == GateKind::Measure || is_classically_controlled(inst.kind);
        if (needs_clbit != inst.clbit.has_value()) {
            add(i, needs_clbit ? name + " requires a classical bit" : name + " does not take a classical bit");
        } else if (needs_clbit) {
            std::uint32_t c = inst.clbit->index;
            if (c >= circuit.n_clbits()) {
                add(i, name + " classical bit c" + std::to_string(c) + " out of range");
            } else if (is_classically_controlled(inst.kind) && !written[c]) {
                add(i, name + " is conditioned on c" + std::to_string(c) + " before any MEASURE writes it");
            } else if (inst.kind == GateKind::Measure) {
                written[c] = true;
            }
        }

        if (!operands_ok || inst.kind == GateKind::Barrier) {
            continue;
        }
        for (QubitId q : inst.qubits) {
            if (measured[q.index]) {
                add(i, name + " acts on q" + std::to_string(q.index) + " after it was measured");
            }
        }
        if (inst.kind == GateKind::Measure) {
            measured[inst.qubits[0].index] = true;
        }
    }
    return out;
}

void require_valid(const Circuit &circuit) {
    auto violations = validate(circuit);
    if (violations.empty()) {
        return;
    }
    const auto &v = violations.front();
    std::string where = v.instruction.has_value() ? "instruction " + std::to_string(*v.instruction) + ": " : "";
    throw std::invalid_argument("invalid circuit: " + where + v.message);
}

CircuitStats stats(const Circuit &circuit) {
    require_valid(circuit);
    CircuitStats s;
    s.total_idle_time_per_qubit.assign(circuit.n_qubits(), 0.0);

    const auto &insts = circuit.instructions();
    // Position of the last instruction reading each clbit, and of the last gate
    // that counts as "further quantum work".
    std::vector<std::ptrdiff_t> last_read(circuit.n_clbits(), -1);
    std::ptrdiff_t last_work = -1;
    for (std::size_t i = 0; i < insts.size(); ++i) {
        const auto &inst = insts[i];
        if (is_classically_controlled(inst.kind)) {
            last_read[inst.clbit->index] = static_cast<std::ptrdiff_t>(i);
        }
        if (inst.kind != GateKind::Measure && inst.kind != GateKind::Delay && inst.kind != GateKind::Barrier) {
            last_work = static_cast<std::ptrdiff_t>(i);
        }
    }

    std::vector<std::size_t> qubit_level(circuit.n_qubits(), 0);
    std::vector<std::size_t> clbit_level(circuit.n_clbits(), 0);
    for (std::size_t i = 0; i < insts.size(); ++i) {
        const auto &inst = insts[i];
        auto pos = static_cast<std::ptrdiff_t>(i);
        switch (inst.kind) {
            case GateKind::CPhase:
                s.two_qubit_gate_count += 1;
                break;
            case GateKind::Measure:
                if (last_read[inst.clbit->index] > pos || last_work > pos) {
                    s.mid_circuit_measurement_count += 1;
                } else {
                    s.terminal_measurement_count += 1;
                }
                break;
            case GateKind::Delay:
                s.total_idle_time_per_qubit[inst.qubits[0].index] += inst.duration_ns;
                break;
            default:
                break;
        }

        if (inst.kind == GateKind::Barrier) {
            std::size_t top = 0;
            for (auto level : qubit_level) {
                top = std::max(top, level);
            }
            std::fill(qubit_level.begin(), qubit_level.end(), top);
            continue;
        }
        std::size_t level = 0;
        for (QubitId q : inst.qubits) {
            level = std::max(level, qubit_level[q.index]);
        }
        if (inst.clbit.has_value()) {
            level = std::max(level, clbit_level[inst.clbit->index]);
        }
        level += 1;
        for (QubitId q : inst.qubits) {
            qubit_level[q.index] = level;
        }
        if (inst.kind == GateKind::Measure) {
            clbit_level[inst.clbit->index] = level;
        }
        s.depth = std::max(s.depth, level);
    }
    return s;
}

}  // namespace qftdyn
