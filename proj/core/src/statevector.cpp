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

#include "qftdyn/statevector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qftdyn {

namespace {

constexpr Amplitude kI{0.0, 1.0};

}  // namespace

Mat2 mat_identity() {
    return {1.0, 0.0, 0.0, 1.0};
}

Mat2 mat_h() {
    const double s = std::numbers::sqrt2 / 2;
    return {s, s, s, -s};
}

Mat2 mat_x() {
    return {0.0, 1.0, 1.0, 0.0};
}

Mat2 mat_y() {
    return {0.0, -kI, kI, 0.0};
}

Mat2 mat_z() {
    return {1.0, 0.0, 0.0, -1.0};
}

Mat2 mat_rz(double theta) {
    return {std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)};
}

Mat2 mat_rx(double theta) {
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    return {c, -kI * s, -kI * s, c};
}

Mat2 mat_ry(double theta) {
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    return {c, -s, s, c};
}

Mat2 mat_pauli(int index) {
    switch (index) {
        case 0:
            return mat_identity();
        case 1:
            return mat_x();
        case 2:
            return mat_y();
        case 3:
            return mat_z();
        default:
            throw std::invalid_argument("pauli index must be 0..3");
    }
}

Mat2 mat_mul(const Mat2 &a, const Mat2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

StateVector::StateVector(std::uint32_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 30) {
        throw std::invalid_argument("statevector supports 1..30 qubits");
    }
    amplitudes_.assign(std::size_t{1} << n_qubits, Amplitude{});
    amplitudes_[0] = 1.0;
}

StateVector StateVector::basis(std::uint32_t n_qubits, std::uint64_t k) {
    StateVector s(n_qubits);
    if (k >= s.dimension()) {
        throw std::invalid_argument("basis label out of range");
    }
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[k] = 1.0;
    return s;
}

StateVector StateVector::prepared(const Circuit &prep) {
    require_valid(prep);
    StateVector s(prep.n_qubits());
    for (const auto &inst : prep.instructions()) {
        s.apply_unitary(inst);
    }
    return s;
}

StateVector StateVector::product(std::span<const std::array<Amplitude, 2>> qubit_states) {
    auto n = static_cast<std::uint32_t>(qubit_states.size());
    StateVector s(n);
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        Amplitude a = 1.0;
        for (std::uint32_t q = 0; q < n; ++q) {
            a *= qubit_states[q][(i & s.bit_of(q)) ? 1 : 0];
        }
        s.amplitudes_[i] = a;
    }
    return s;
}

void StateVector::apply_1q(std::uint32_t q, const Mat2 &m) {
    const std::uint64_t bit = bit_of(q);
    const std::size_t dim = amplitudes_.size();
    for (std::size_t hi = 0; hi < dim; hi += 2 * bit) {
        for (std::size_t i = hi; i < hi + bit; ++i) {
            Amplitude a0 = amplitudes_[i];
            Amplitude a1 = amplitudes_[i + bit];
            amplitudes_[i] = m[0] * a0 + m[1] * a1;
            amplitudes_[i + bit] = m[2] * a0 + m[3] * a1;
        }
    }
}

void StateVector::apply_diagonal_1q(std::uint32_t q, Amplitude d0, Amplitude d1) {
    const std::uint64_t bit = bit_of(q);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        amplitudes_[i] *= (i & bit) ? d1 : d0;
    }
}

void StateVector::apply_cphase(std::uint32_t a, std::uint32_t b, double theta) {
    const std::uint64_t mask = bit_of(a) | bit_of(b);
    const Amplitude phase = std::polar(1.0, theta);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i & mask) == mask) {
            amplitudes_[i] *= phase;
        }
    }
}

double StateVector::probability_one(std::uint32_t q) const {
    const std::uint64_t bit = bit_of(q);
    double p = 0.0;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if (i & bit) {
            p += std::norm(amplitudes_[i]);
        }
    }
    return p;
}

void StateVector::project(std::uint32_t q, int outcome) {
    const std::uint64_t bit = bit_of(q);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        bool one = (i & bit) != 0;
        if (one != (outcome == 1)) {
            amplitudes_[i] = 0.0;
        }
    }
}

void StateVector::collapse(std::uint32_t q, int outcome, double probability) {
    if (!(probability > 0.0)) {
        throw std::invalid_argument("cannot collapse onto a zero-probability outcome");
    }
    const std::uint64_t bit = bit_of(q);
    const double scale = 1.0 / std::sqrt(probability);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        bool one = (i & bit) != 0;
        amplitudes_[i] = one == (outcome == 1) ? amplitudes_[i] * scale : Amplitude{};
    }
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

void StateVector::apply_unitary(const Instruction &inst) {
    switch (inst.kind) {
        case GateKind::H:
            apply_1q(inst.qubits[0].index, mat_h());
            break;
        case GateKind::X:
            apply_1q(inst.qubits[0].index, mat_x());
            break;
        case GateKind::Y:
            apply_1q(inst.qubits[0].index, mat_y());
            break;
        case GateKind::Rz: {
            double t = inst.angle.radians();
            apply_diagonal_1q(inst.qubits[0].index, std::polar(1.0, -t / 2), std::polar(1.0, t / 2));
            break;
        }
        case GateKind::CPhase:
            apply_cphase(inst.qubits[0].index, inst.qubits[1].index, inst.angle.radians());
            break;
        case GateKind::Delay:
        case GateKind::Barrier:
            break;
        default:
            throw std::invalid_argument(std::string(gate_name(inst.kind)) + " is not a unitary instruction");
    }
}

}  // namespace qftdyn
