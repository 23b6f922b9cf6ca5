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

#ifndef QFTDYN_QFT_HPP
#define QFTDYN_QFT_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "qftdyn/circuit.hpp"

namespace qftdyn {

/// Computational basis label k over n qubits, 0 <= k < 2^n.
class BasisLabel {
   public:
    BasisLabel(std::uint64_t k, std::uint32_t n);

    std::uint64_t k() const {
        return k_;
    }
    std::uint32_t n() const {
        return n_;
    }

   private:
    std::uint64_t k_;
    std::uint32_t n_;
};

enum class QftVariant { Unitary, Dynamic };

std::string_view variant_name(QftVariant variant);
QftVariant parse_variant(std::string_view name);

/// Classical bit receiving qubit q's QFT output bit. The unitary circuit has no
/// SWAP network, so output bit order is reversed relative to the qubits; both
/// variants absorb the reversal here, which makes the outcome record equal to
/// the DFT index k.
inline std::uint32_t qft_output_clbit(std::uint32_t n, std::uint32_t q) {
    return n - 1 - q;
}

/// Textbook QFT: H on q_j, then CPHASE(2pi/2^m) between q_j and q_{j+m-1} for m = 2..n-j.
Circuit build_unitary_qft(std::uint32_t n, bool with_measurement = true);

/// Semi-classical QFT+M: H and MEASURE on q_j, then CLASSICAL_RZ(2pi/2^(i-j+1)) on every
/// later q_i conditioned on q_j's outcome.
Circuit build_dynamic_qft(std::uint32_t n);

Circuit build_qft(QftVariant variant, std::uint32_t n);

/// Prepares QFT^dagger |k>: H on every qubit, then RZ(-2 pi k / 2^(q+1)) on qubit q
/// (angle reduced modulo 2 pi). Measurement free, so it can serve as an input state.
Circuit build_qft_dagger_state_prep(const BasisLabel &label);

/// Prepares the uniform superposition of basis states congruent to `offset`
/// modulo `period` using H on the high qubits and X on the low ones.
Circuit build_periodic_state_prep(std::uint32_t n, std::uint64_t offset, std::uint64_t period);

}  // namespace qftdyn

#endif
