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

#ifndef QFTDYN_STATEVECTOR_HPP
#define QFTDYN_STATEVECTOR_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qftdyn/circuit.hpp"

namespace qftdyn {

using Amplitude = std::complex<double>;

/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Mat2 = std::array<Amplitude, 4>;

Mat2 mat_identity();
Mat2 mat_h();
Mat2 mat_x();
Mat2 mat_y();
Mat2 mat_z();
/// diag(e^{-i theta/2}, e^{i theta/2}).
Mat2 mat_rz(double theta);
Mat2 mat_rx(double theta);
Mat2 mat_ry(double theta);
/// Pauli by index: 0 = I, 1 = X, 2 = Y, 3 = Z.
Mat2 mat_pauli(int index);
/// a * b (apply b first).
Mat2 mat_mul(const Mat2 &a, const Mat2 &b);

/// Pure n-qubit state. Qubit q is bit (n - 1 - q) of the basis index.
class StateVector {
   public:
    explicit StateVector(std::uint32_t n_qubits);

    static StateVector basis(std::uint32_t n_qubits, std::uint64_t k);
    /// Runs a measurement-free circuit noiselessly from |0...0>.
    static StateVector prepared(const Circuit &prep);
    /// Tensor product of single-qubit states, qubit 0 first.
    static StateVector product(std::span<const std::array<Amplitude, 2>> qubit_states);

    std::uint32_t n_qubits() const {
        return n_qubits_;
    }
    std::size_t dimension() const {
        return amplitudes_.size();
    }
    std::span<const Amplitude> amplitudes() const {
        return amplitudes_;
    }
    std::span<Amplitude> amplitudes() {
        return amplitudes_;
    }
    const Amplitude &operator[](std::size_t i) const {
        return amplitudes_[i];
    }

    std::uint64_t bit_of(std::uint32_t q) const {
        return std::uint64_t{1} << (n_qubits_ - 1 - q);
    }

    void apply_1q(std::uint32_t q, const Mat2 &m);
    void apply_diagonal_1q(std::uint32_t q, Amplitude d0, Amplitude d1);
    /// diag(1, 1, 1, e^{i theta}).
    void apply_cphase(std::uint32_t a, std::uint32_t b, double theta);

    double probability_one(std::uint32_t q) const;
    /// Projects qubit q onto `outcome` and rescales by 1/sqrt(probability).
    void collapse(std::uint32_t q, int outcome, double probability);
    /// Projects without rescaling.
    void project(std::uint32_t q, int outcome);
    double norm_squared() const;

    /// H, X, Y, RZ, CPHASE act; DELAY and BARRIER are identities. Measurement
    /// and classically controlled instructions throw.
    void apply_unitary(const Instruction &inst);

   private:
    std::uint32_t n_qubits_;
    std::vector<Amplitude> amplitudes_;
};

}  // namespace qftdyn

#endif
