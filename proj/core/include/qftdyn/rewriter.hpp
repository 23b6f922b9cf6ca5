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

#ifndef QFTDYN_REWRITER_HPP
#define QFTDYN_REWRITER_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qftdyn/circuit.hpp"

namespace qftdyn {

struct RewriteReport {
    Circuit rewritten;
    std::size_t removed_two_qubit_gates = 0;
    /// Change in the mid-circuit measurement count.
    std::size_t added_mid_circuit_measurements = 0;
    /// Measurements moved earlier by the pass.
    std::size_t hoisted_measurements = 0;
    /// Input indices of CPHASE gates left in the output.
    std::vector<std::size_t> unconverted_gate_indices;
};

/// Moves each measurement to just after the last non-CPHASE use of its qubit
/// and turns the CPHASE gates it passes into classically controlled RZ on the
/// partner qubit. Qubits are handled in program order of their measurements; a
/// qubit whose hoist would cross a use of its classical bit is left alone.
///
/// Throws std::invalid_argument for invalid circuits and qubits measured twice.
RewriteReport defer_measurement_rewrite(const Circuit &circuit);

/// Largest total-variation distance between the noiseless outcome
/// distributions of `a` and `b`, over every computational basis input and a
/// fixed set of pseudo-random product states.
double verify_equivalence(const Circuit &a, const Circuit &b, std::uint32_t n_max = 10);

/// Number of non-basis probe states used by verify_equivalence.
inline constexpr std::size_t kProductProbeCount = 8;

}  // namespace qftdyn

#endif
