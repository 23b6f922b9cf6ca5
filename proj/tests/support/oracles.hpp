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


#ifndef QFTDYN_TESTS_ORACLES_HPP
#define QFTDYN_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qftdyn/circuit.hpp"
#include "qftdyn/noise.hpp"

// Reference implementations written from the gate and noise definitions with
// dense matrices. They share no code with the engines under test.
namespace qftdyn::testing {

using Dense = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;

/// Matrix of one unitary instruction on n qubits; qubit 0 is the most significant index bit.
Dense gate_matrix(std::uint32_t n, const Instruction &inst, double over_rotation = 0.0);

/// Product of gate matrices of a measurement-free, control-free circuit (DELAY and BARRIER ignored).
Dense dense_unitary(const Circuit &circuit);

/// |sum_j exp(2 pi i j k / N) psi_j|^2 / N for every k.
std::vector<double> dft_probabilities(const Ket &input);

/// Amplitudes exp(-2 pi i j k / N) / sqrt(N): the state the forward transform maps to |k>.
Ket inverse_dft_basis(std::uint32_t n, std::uint64_t k);

/// Equal superposition of |offset + period * i> for every such label below 2^n.
Ket periodic_state(std::uint32_t n, std::uint64_t offset, std::uint64_t period);

/// Exact record distribution by full density-matrix evolution with every
/// qubit's quasi-static detuning fixed to `detunings` (rad/ns).
std::map<std::uint64_t, double> oracle_distribution_fixed(const Circuit &circuit, const Ket &input,
                                                          const NoiseModel &noise, const TimingModel &timing,
                                                          std::span<const double> detunings);

/// Same, averaged over Gaussian detunings with a `points`-node Gauss-Hermite
/// product rule on every qubit that idles.
std::map<std::uint64_t, double> oracle_distribution(const Circuit &circuit, const Ket &input, const NoiseModel &noise,
                                                    const TimingModel &timing, int points = 20);

/// Nodes and weights for E[f(Z)], Z ~ N(0, 1).
void normal_quadrature(int points, std::vector<double> &nodes, std::vector<double> &weights);

/// [(1/d) sum_k sqrt(Pr(k | inverse_dft_basis(k)))]^2 from the oracle.
double oracle_process_fidelity(const Circuit &channel, const NoiseModel &noise, const TimingModel &timing,
                               int points = 20);

/// Upper tail P[X >= x] of a chi-square variable with `dof` degrees of freedom.
double chi_square_survival(double x, double dof);

}  // namespace qftdyn::testing

#endif
