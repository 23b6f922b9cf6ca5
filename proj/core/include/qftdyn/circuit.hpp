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

#ifndef QFTDYN_CIRCUIT_HPP
#define QFTDYN_CIRCUIT_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qftdyn/angle.hpp"

namespace qftdyn {

// Bit ordering: qubit 0 (and clbit 0) is the most significant bit of every
// integer label used in this library. An outcome record over M clbits is the
// integer whose bit (M - 1 - c) holds clbit c.

struct QubitId {
    std::uint32_t index = 0;
    auto operator<=>(const QubitId &) const = default;
};

struct ClbitId {
    std::uint32_t index = 0;
    auto operator<=>(const ClbitId &) const = default;
};

enum class GateKind : std::uint8_t {
    H,
    X,
    Y,
    Rz,
    CPhase,
    Measure,
    ClassicalRz,
    ClassicalX,
    Delay,
    Barrier,
};

std::string_view gate_name(GateKind kind);

/// True for gates that take time and can carry gate noise (H, X, Y, CLASSICAL_X, CPHASE).
bool is_physical_gate(GateKind kind);
/// True for RZ and CLASSICAL_RZ, which are frame changes.
bool is_virtual_gate(GateKind kind);
/// True for instructions diagonal in the computational basis.
bool is_diagonal(GateKind kind);
bool is_classically_controlled(GateKind kind);

struct Instruction {
    GateKind kind = GateKind::Barrier;
    /// Empty for BARRIER, which spans every qubit.
    std::vector<QubitId> qubits;
    /// Rotation angle for RZ, CPHASE and CLASSICAL_RZ; zero otherwise.
    Angle angle;
    /// Target of MEASURE, condition of CLASSICAL_RZ / CLASSICAL_X.
    std::optional<ClbitId> clbit;
    /// Length of a DELAY in nanoseconds. Gate durations come from a TimingModel.
    double duration_ns = 0.0;

    bool operator==(const Instruction &) const = default;

    static Instruction h(std::uint32_t q);
    static Instruction x(std::uint32_t q);
    static Instruction y(std::uint32_t q);
    static Instruction rz(std::uint32_t q, Angle angle);
    static Instruction cphase(std::uint32_t a, std::uint32_t b, Angle angle);
    static Instruction measure(std::uint32_t q, std::uint32_t c);
    static Instruction classical_rz(std::uint32_t q, std::uint32_t condition, Angle angle);
    static Instruction classical_x(std::uint32_t q, std::uint32_t condition);
    static Instruction delay(std::uint32_t q, double duration_ns);
    static Instruction barrier();

    bool touches(QubitId q) const;
};

/// Ordered instruction list over `n_qubits` qubits and `n_clbits` classical bits.
class Circuit {
   public:
    explicit Circuit(std::uint32_t n_qubits = 1, std::uint32_t n_clbits = 0);

    std::uint32_t n_qubits() const {
        return n_qubits_;
    }
    std::uint32_t n_clbits() const {
        return n_clbits_;
    }
    const std::vector<Instruction> &instructions() const {
        return instructions_;
    }
    std::size_t size() const {
        return instructions_.size();
    }
    const Instruction &operator[](std::size_t i) const {
        return instructions_[i];
    }
    const std::map<std::string, std::string> &metadata() const {
        return metadata_;
    }
    std::optional<std::string> metadata_value(const std::string &key) const;

    Circuit &append(Instruction instruction);
    Circuit &append(const Circuit &other);
    Circuit &set_metadata(std::string key, std::string value);

    Circuit &h(std::uint32_t q) {
        return append(Instruction::h(q));
    }
    Circuit &x(std::uint32_t q) {
        return append(Instruction::x(q));
    }
    Circuit &y(std::uint32_t q) {
        return append(Instruction::y(q));
    }
    Circuit &rz(std::uint32_t q, Angle angle) {
        return append(Instruction::rz(q, angle));
    }
    Circuit &cphase(std::uint32_t a, std::uint32_t b, Angle angle) {
        return append(Instruction::cphase(a, b, angle));
    }
    Circuit &measure(std::uint32_t q, std::uint32_t c) {
        return append(Instruction::measure(q, c));
    }
    Circuit &classical_rz(std::uint32_t q, std::uint32_t condition, Angle angle) {
        return append(Instruction::classical_rz(q, condition, angle));
    }
    Circuit &classical_x(std::uint32_t q, std::uint32_t condition) {
        return append(Instruction::classical_x(q, condition));
    }
    Circuit &delay(std::uint32_t q, double duration_ns) {
        return append(Instruction::delay(q, duration_ns));
    }
    Circuit &barrier() {
        return append(Instruction::barrier());
    }

    /// Structural equality: counts, instructions and metadata.
    bool operator==(const Circuit &) const = default;

   private:
    std::uint32_t n_qubits_;
    std::uint32_t n_clbits_;
    std::vector<Instruction> instructions_;
    std::map<std::string, std::string> metadata_;
};

struct Violation {
    /// Offending instruction, or empty for circuit-level problems.
    std::optional<std::size_t> instruction;
    std::string message;

    bool operator==(const Violation &) const = default;
};

/// Every invariant violation in program order; empty when the circuit is valid.
std::vector<Violation> validate(const Circuit &circuit);

/// Throws std::invalid_argument describing the first violation, if any.
void require_valid(const Circuit &circuit);

struct CircuitStats {
    std::size_t two_qubit_gate_count = 0;
    std::size_t mid_circuit_measurement_count = 0;
    std::size_t terminal_measurement_count = 0;
    std::size_t depth = 0;
    /// Sum of explicit DELAY durations on each qubit, in ns.
    std::vector<double> total_idle_time_per_qubit;

    bool operator==(const CircuitStats &) const = default;
};

/// Instruction tally of a valid circuit.
///
/// A measurement counts as mid-circuit when a later instruction reads its
/// classical bit, or a later gate other than MEASURE / DELAY / BARRIER acts on
/// any qubit. Depth is the longest dependency chain through qubits and
/// classical bits, with BARRIER contributing no layer.
CircuitStats stats(const Circuit &circuit);

}  // namespace qftdyn

#endif
