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

#include "qftdyn/rewriter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>

#include "qftdyn/simulator.hpp"

namespace qftdyn {

namespace {

struct Slot {
    Instruction inst;
    // Index in the input circuit.
    std::size_t origin;
};

bool touches_clbit(const Instruction &inst, std::uint32_t c) {
    return inst.clbit.has_value() && inst.clbit->index == c;
}

std::optional<std::uint32_t> cphase_partner(const Instruction &inst, std::uint32_t q) {
    if (inst.kind != GateKind::CPhase) {
        return std::nullopt;
    }
    if (inst.qubits[0].index == q) {
        return inst.qubits[1].index;
    }
    if (inst.qubits[1].index == q) {
        return inst.qubits[0].index;
    }
    return std::nullopt;
}

// Tries to hoist the measurement at `m`. Returns true when the circuit changed.
bool hoist(std::vector<Slot> &slots, std::size_t m) {
    const Instruction measure = slots[m].inst;
    const std::uint32_t q = measure.qubits[0].index;
    const std::uint32_t c = measure.clbit->index;

    std::optional<std::size_t> last_use;
    bool crosses_cphase = false;
    for (std::size_t i = m; i-- > 0;) {
        const Instruction &inst = slots[i].inst;
        if (!inst.touches(QubitId{q}) || inst.kind == GateKind::Barrier) {
            continue;
        }
        if (cphase_partner(inst, q).has_value()) {
            crosses_cphase = true;
            continue;
        }
        last_use = i;
        break;
    }
    if (!crosses_cphase) {
        return false;
    }
    // With no earlier use the measurement moves to the front.
    const std::size_t target = last_use.has_value() ? *last_use + 1 : 0;
    for (std::size_t i = target; i < m; ++i) {
        if (touches_clbit(slots[i].inst, c)) {
            return false;
        }
    }

    Slot moved = slots[m];
    slots.erase(slots.begin() + static_cast<std::ptrdiff_t>(m));
    for (std::size_t i = target; i < m; ++i) {
        auto partner = cphase_partner(slots[i].inst, q);
        if (partner.has_value()) {
            slots[i].inst = Instruction::classical_rz(*partner, c, slots[i].inst.angle);
        }
    }
    slots.insert(slots.begin() + static_cast<std::ptrdiff_t>(target), moved);
    return true;
}

std::vector<StateVector> product_probes(std::uint32_t n) {
    std::mt19937_64 rng(0x5EEDF00Dull + n);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<StateVector> probes;
    for (std::size_t p = 0; p < kProductProbeCount; ++p) {
        std::vector<std::array<Amplitude, 2>> qubits(n);
        for (auto &amp : qubits) {
            double theta = std::acos(1.0 - 2.0 * unit(rng));
            double phi = 2 * std::numbers::pi * unit(rng);
            amp = {std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)};
        }
        probes.push_back(StateVector::product(qubits));
    }
    return probes;
}

}  // namespace

RewriteReport defer_measurement_rewrite(const Circuit &circuit) {
    require_valid(circuit);
    std::vector<bool> measured(circuit.n_qubits(), false);
    std::vector<Slot> slots;
    slots.reserve(circuit.size());
    for (std::size_t i = 0; i < circuit.size(); ++i) {
        const Instruction &inst = circuit[i];
        if (inst.kind == GateKind::Measure) {
            std::uint32_t q = inst.qubits[0].index;
            if (measured[q]) {
                throw std::invalid_argument("qubit q" + std::to_string(q) + " is measured more than once");
            }
            measured[q] = true;
        }
        slots.push_back({inst, i});
    }

    RewriteReport report;
    // Measurements are visited in input order; their positions shift as earlier ones move.
    for (std::size_t origin = 0; origin < circuit.size(); ++origin) {
        if (circuit[origin].kind != GateKind::Measure) {
            continue;
        }
        auto it = std::find_if(slots.begin(), slots.end(), [&](const Slot &s) { return s.origin == origin; });
        if (hoist(slots, static_cast<std::size_t>(it - slots.begin()))) {
            report.hoisted_measurements += 1;
        }
    }

    Circuit out(circuit.n_qubits(), circuit.n_clbits());
    for (const auto &[key, value] : circuit.metadata()) {
        out.set_metadata(key, value);
    }
    for (const auto &s : slots) {
        out.append(s.inst);
        if (s.inst.kind == GateKind::CPhase) {
            report.unconverted_gate_indices.push_back(s.origin);
        }
    }
    std::sort(report.unconverted_gate_indices.begin(), report.unconverted_gate_indices.end());

    CircuitStats before = stats(circuit);
    CircuitStats after = stats(out);
    report.removed_two_qubit_gates = before.two_qubit_gate_count - after.two_qubit_gate_count;
    report.added_mid_circuit_measurements =
        after.mid_circuit_measurement_count - before.mid_circuit_measurement_count;
    report.rewritten = std::move(out);
    return report;
}

double verify_equivalence(const Circuit &a, const Circuit &b, std::uint32_t n_max) {
    if (a.n_qubits() != b.n_qubits() || a.n_clbits() != b.n_clbits()) {
        throw std::invalid_argument("circuits differ in qubit or classical bit count");
    }
    const std::uint32_t n = a.n_qubits();
    if (n > n_max) {
        throw std::invalid_argument("equivalence check limited to " + std::to_string(n_max) + " qubits, got " +
                                    std::to_string(n));
    }
    ExactLimits limits;
    limits.max_qubits = std::max(n_max, n);
    limits.max_branches = std::uint64_t{1} << std::min<std::uint32_t>(62, std::max<std::uint32_t>(14, n + 4));

    double worst = 0.0;
    auto compare = [&](const StateVector &input) {
        worst = std::max(worst, total_variation_distance(run_exact(a, input, limits), run_exact(b, input, limits)));
    };
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
        compare(StateVector::basis(n, k));
    }
    for (const auto &probe : product_probes(n)) {
        compare(probe);
    }
    return worst;
}

}  // namespace qftdyn
