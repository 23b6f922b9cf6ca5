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

#ifndef QFTDYN_DENSITY_MATRIX_HPP
#define QFTDYN_DENSITY_MATRIX_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "qftdyn/circuit.hpp"
#include "qftdyn/noise.hpp"
#include "qftdyn/simulator.hpp"
#include "qftdyn/statevector.hpp"

namespace qftdyn {

/// Operator on n qubits stored row-major; need not be Hermitian or unit-trace.
class DensityMatrix {
   public:
    /// The zero operator.
    explicit DensityMatrix(std::uint32_t n_qubits);

    static DensityMatrix from_state(const StateVector &state);
    static DensityMatrix basis(std::uint32_t n_qubits, std::uint64_t k);
    /// |i><j|.
    static DensityMatrix unit(std::uint32_t n_qubits, std::uint64_t i, std::uint64_t j);

    std::uint32_t n_qubits() const {
        return n_qubits_;
    }
    std::size_t dimension() const {
        return dim_;
    }
    Amplitude &operator()(std::size_t row, std::size_t col) {
        return data_[row * dim_ + col];
    }
    const Amplitude &operator()(std::size_t row, std::size_t col) const {
        return data_[row * dim_ + col];
    }
    Amplitude trace() const;

   private:
    std::uint32_t n_qubits_;
    std::size_t dim_;
    std::vector<Amplitude> data_;
};

struct DensityLimits {
    std::uint32_t max_qubits = 6;
    /// Largest number of qubits integrated by quadrature (see run_density_matrix).
    std::uint32_t max_quadrature_qubits = 3;
    std::uint32_t quadrature_points = 24;
};

/// Trace of the post-channel operator restricted to each outcome record.
/// Linear in `input`, so it also evolves non-Hermitian operator-basis elements.
std::map<std::uint64_t, Amplitude> evolve_operator(const Circuit &circuit, const DensityMatrix &input,
                                                  const NoiseModel &noise, const TimingModel &timing,
                                                  const DensityLimits &limits = {});

/// Exact noise-averaged outcome distribution including readout flips.
///
/// Quasi-static detuning is tracked as a signed idle time per qubit that
/// diagonal gates leave alone and X / Y pulses negate. The Gaussian average is
/// taken when a non-diagonal, non-flip gate (H, over-rotated pulse) needs the
/// qubit; qubits that need it more than once per shot are integrated by
/// Gauss-Hermite quadrature instead.
OutcomeDistribution run_density_matrix(const Circuit &circuit, const DensityMatrix &input, const NoiseModel &noise,
                                       const TimingModel &timing, const DensityLimits &limits = {});
OutcomeDistribution run_density_matrix(const Circuit &circuit, std::uint64_t basis_label, const NoiseModel &noise,
                                       const TimingModel &timing, const DensityLimits &limits = {});
OutcomeDistribution run_density_matrix(const Circuit &circuit, const StateVector &input, const NoiseModel &noise,
                                       const TimingModel &timing, const DensityLimits &limits = {});

/// Choi state (1/d) sum_ij |i><j| (x) E(|i><j|) of the measurement-terminated
/// channel. Row index = input * 2^n_clbits + record. At most 4 qubits.
Eigen::MatrixXcd choi_matrix(const Circuit &circuit, const NoiseModel &noise, const TimingModel &timing);

}  // namespace qftdyn

#endif
