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

#include "qftdyn/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qftdyn {

namespace {

// Signed idle times below this (ns) count as fully refocused when deciding
// which qubits need quadrature.
constexpr double kRefocusedNs = 1e-9;

bool is_monomial(const Mat2 &m) {
    bool diagonal = m[1] == 0.0 && m[2] == 0.0;
    bool anti = m[0] == 0.0 && m[3] == 0.0;
    return diagonal || anti;
}

bool flips_frame(const Mat2 &m) {
    return m[0] == 0.0 && m[3] == 0.0;
}

// Operator over the qubits that have not been measured yet. Measured qubits
// are projected and traced out, which is exact because nothing acts on a
// qubit after its measurement.
class LiveOperator {
   public:
    explicit LiveOperator(const DensityMatrix &m) : live_(m.n_qubits()), dim_(m.dimension()) {
        position_.resize(m.n_qubits());
        for (std::uint32_t q = 0; q < m.n_qubits(); ++q) {
            position_[q] = static_cast<int>(q);
        }
        data_.resize(dim_ * dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                data_[i * dim_ + j] = m(i, j);
            }
        }
    }

    bool is_live(std::uint32_t q) const {
        return position_[q] >= 0;
    }

    std::size_t bit(std::uint32_t q) const {
        return std::size_t{1} << (live_ - 1 - static_cast<std::uint32_t>(position_[q]));
    }

    Amplitude &at(std::size_t i, std::size_t j) {
        return data_[i * dim_ + j];
    }

    void apply_1q(std::uint32_t q, const Mat2 &m) {
        const std::size_t b = bit(q);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (i & b) {
                continue;
            }
            for (std::size_t j = 0; j < dim_; ++j) {
                Amplitude r0 = at(i, j);
                Amplitude r1 = at(i | b, j);
                at(i, j) = m[0] * r0 + m[1] * r1;
                at(i | b, j) = m[2] * r0 + m[3] * r1;
            }
        }
        const Amplitude c00 = std::conj(m[0]), c01 = std::conj(m[1]);
        const Amplitude c10 = std::conj(m[2]), c11 = std::conj(m[3]);
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                if (j & b) {
                    continue;
                }
                Amplitude a0 = at(i, j);
                Amplitude a1 = at(i, j | b);
                at(i, j) = a0 * c00 + a1 * c01;
                at(i, j | b) = a0 * c10 + a1 * c11;
            }
        }
    }

    void apply_diagonal(std::uint32_t q, Amplitude d0, Amplitude d1) {
        const std::size_t b = bit(q);
        const Amplitude d[2] = {d0, d1};
        for (std::size_t i = 0; i < dim_; ++i) {
            Amplitude left = d[(i & b) ? 1 : 0];
            for (std::size_t j = 0; j < dim_; ++j) {
                at(i, j) *= left * std::conj(d[(j & b) ? 1 : 0]);
            }
        }
    }

    void apply_cphase(std::uint32_t a, std::uint32_t b, double theta) {
        const std::size_t mask = bit(a) | bit(b);
        const Amplitude phase = std::polar(1.0, theta);
        const Amplitude phase_conj = std::conj(phase);
        for (std::size_t i = 0; i < dim_; ++i) {
            bool row = (i & mask) == mask;
            for (std::size_t j = 0; j < dim_; ++j) {
                bool col = (j & mask) == mask;
                if (row != col) {
                    at(i, j) *= row ? phase : phase_conj;
                }
            }
        }
    }

    /// Multiplies coherences between |0> and |1> of qubit q by `factor`.
    void dephase(std::uint32_t q, double factor) {
        const std::size_t b = bit(q);
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                if ((i ^ j) & b) {
                    at(i, j) *= factor;
                }
            }
        }
    }

    /// rho -> (1 - p) rho + p Tr_S(rho) (x) I_S / 2^|S|.
    void depolarize(std::span<const std::uint32_t> qubits, double p) {
        std::size_t mask = 0;
        for (auto q : qubits) {
            mask |= bit(q);
        }
        std::vector<std::size_t> subsets;
        for (std::size_t s = mask;; s = (s - 1) & mask) {
            subsets.push_back(s);
            if (s == 0) {
                break;
            }
        }
        const double share = p / static_cast<double>(subsets.size());
        std::vector<Amplitude> old = data_;
        for (auto &v : data_) {
            v *= 1.0 - p;
        }
        for (std::size_t i = 0; i < dim_; ++i) {
            if (i & mask) {
                continue;
            }
            for (std::size_t j = 0; j < dim_; ++j) {
                if (j & mask) {
                    continue;
                }
                Amplitude sum = 0.0;
                for (auto s : subsets) {
                    sum += old[(i | s) * dim_ + (j | s)];
                }
                for (auto s : subsets) {
                    at(i | s, j | s) += share * sum;
                }
            }
        }
    }

    /// Projects qubit q onto `outcome` and traces it out.
    LiveOperator measure_out(std::uint32_t q, int outcome) const {
        LiveOperator out;
        out.live_ = live_ - 1;
        out.dim_ = dim_ / 2;
        out.position_ = position_;
        const int removed = position_[q];
        for (auto &p : out.position_) {
            if (p > removed) {
                p -= 1;
            }
        }
        out.position_[q] = -1;
        const std::uint32_t low_bits = live_ - 1 - static_cast<std::uint32_t>(removed);
        const std::size_t low_mask = (std::size_t{1} << low_bits) - 1;
        auto expand = [&](std::size_t k) {
            return ((k & ~low_mask) << 1) | (static_cast<std::size_t>(outcome) << low_bits) | (k & low_mask);
        };
        out.data_.resize(out.dim_ * out.dim_);
        for (std::size_t i = 0; i < out.dim_; ++i) {
            std::size_t oi = expand(i);
            for (std::size_t j = 0; j < out.dim_; ++j) {
                out.data_[i * out.dim_ + j] = data_[oi * dim_ + expand(j)];
            }
        }
        return out;
    }

    void scale_add(double self_weight, const LiveOperator &other, double other_weight) {
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] = self_weight * data_[k] + other_weight * other.data_[k];
        }
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Amplitude &a) { return a == 0.0; });
    }

    Amplitude trace() const {
        Amplitude t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            t += data_[i * dim_ + i];
        }
        return t;
    }

   private:
    LiveOperator() = default;

    std::uint32_t live_ = 0;
    std::size_t dim_ = 1;
    std::vector<int> position_;
    std::vector<Amplitude> data_;
};

struct Branch {
    std::uint64_t record = 0;
    // Signed idle time per qubit accumulated since the last flush.
    std::vector<double> signed_time;
    // Diagonal or anti-diagonal single-qubit gates not yet applied.
    std::vector<Mat2> pending;
    std::vector<bool> dirty;
    LiveOperator op;
};

// Qubits whose detuning must be integrated numerically: those whose coherence
// is exposed to a nonzero accumulated phase more than once.
std::vector<std::uint32_t> correlated_qubits(const Circuit &circuit, const NoiseModel &noise) {
    const std::uint32_t n = circuit.n_qubits();
    std::vector<double> s(n, 0.0);
    std::vector<bool> uncertain(n, false);
    std::vector<int> exposures(n, 0);
    const bool over_rotated = noise.pulse_over_rotation != 0.0;
    auto expose = [&](std::uint32_t q) {
        if (uncertain[q] || std::abs(s[q]) > kRefocusedNs) {
            exposures[q] += 1;
        }
        s[q] = 0.0;
        uncertain[q] = false;
    };
    for (const auto &inst : circuit.instructions()) {
        if (inst.qubits.empty()) {
            continue;
        }
        std::uint32_t q = inst.qubits[0].index;
        switch (inst.kind) {
            case GateKind::Delay:
                s[q] += inst.duration_ns;
                break;
            case GateKind::H:
                expose(q);
                break;
            case GateKind::X:
            case GateKind::Y:
                if (over_rotated) {
                    expose(q);
                } else {
                    s[q] = -s[q];
                }
                break;
            case GateKind::ClassicalX:
                if (over_rotated) {
                    expose(q);
                } else if (s[q] != 0.0) {
                    uncertain[q] = true;
                }
                break;
            case GateKind::Measure:
                s[q] = 0.0;
                uncertain[q] = false;
                break;
            default:
                break;
        }
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t q = 0; q < n; ++q) {
        if (exposures[q] > 1) {
            out.push_back(q);
        }
    }
    return out;
}

// Nodes and weights for E[f(nu)] with nu ~ N(0, sigma^2).
std::pair<std::vector<double>, std::vector<double>> gauss_hermite(std::uint32_t points, double sigma) {
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(points, points);
    for (std::uint32_t k = 1; k < points; ++k) {
        jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(k / 2.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    std::vector<double> nodes(points), weights(points);
    for (std::uint32_t i = 0; i < points; ++i) {
        nodes[i] = std::numbers::sqrt2 * sigma * solver.eigenvalues()(i);
        double v = solver.eigenvectors()(0, i);
        weights[i] = v * v;
    }
    return {nodes, weights};
}

class DensityRunner {
   public:
    DensityRunner(const Circuit &circuit, const NoiseModel &noise, std::vector<std::uint32_t> quadrature)
        : circuit_(circuit), noise_(noise), quadrature_(std::move(quadrature)) {
        const double eps = noise.pulse_over_rotation;
        x_pulse_ = eps == 0.0 ? mat_x() : mat_rx(std::numbers::pi + eps);
        y_pulse_ = eps == 0.0 ? mat_y() : mat_ry(std::numbers::pi + eps);
        fixed_.assign(circuit.n_qubits(), false);
        for (auto q : quadrature_) {
            fixed_[q] = true;
        }
    }

    /// One pass with the detunings of quadrature qubits fixed to `nu`.
    void run(const DensityMatrix &input, const std::vector<double> &nu, double weight,
             std::map<std::uint64_t, Amplitude> &out) {
        nu_ = nu;
        const std::uint32_t n = circuit_.n_qubits();
        std::vector<Branch> branches;
        branches.push_back(Branch{0, std::vector<double>(n, 0.0), std::vector<Mat2>(n, mat_identity()),
                                  std::vector<bool>(n, false), LiveOperator(input)});
        for (const auto &inst : circuit_.instructions()) {
            if (inst.kind == GateKind::Measure) {
                branches = measure(std::move(branches), inst);
                continue;
            }
            for (auto &b : branches) {
                apply(b, inst);
            }
        }
        for (const auto &b : branches) {
            out[b.record] += weight * b.op.trace();
        }
    }

   private:
    std::uint64_t mask(std::uint32_t c) const {
        return std::uint64_t{1} << (circuit_.n_clbits() - 1 - c);
    }

    void flush_pending(Branch &b, std::uint32_t q) const {
        if (b.dirty[q]) {
            b.op.apply_1q(q, b.pending[q]);
            b.dirty[q] = false;
        }
    }

    // Moves the accumulated idle phase of q into the operator.
    void flush_time(Branch &b, std::uint32_t q) const {
        double s = b.signed_time[q];
        b.signed_time[q] = 0.0;
        if (s == 0.0) {
            return;
        }
        if (fixed_[q]) {
            double phi = nu_[q] * s;
            b.op.apply_diagonal(q, std::polar(1.0, -phi / 2), std::polar(1.0, phi / 2));
        } else {
            double sigma = noise_.idle_detuning_sigma;
            b.op.dephase(q, std::exp(-sigma * sigma * s * s / 2));
        }
    }

    void push(Branch &b, std::uint32_t q, const Mat2 &g) const {
        if (!is_monomial(g)) {
            flush_pending(b, q);
            flush_time(b, q);
            b.op.apply_1q(q, g);
            return;
        }
        if (flips_frame(g)) {
            b.signed_time[q] = -b.signed_time[q];
        }
        b.pending[q] = b.dirty[q] ? mat_mul(g, b.pending[q]) : g;
        b.dirty[q] = true;
    }

    void depolarize_1q(Branch &b, std::uint32_t q) const {
        if (noise_.p1 > 0.0) {
            std::uint32_t qs[1] = {q};
            b.op.depolarize(qs, noise_.p1);
        }
    }

    void apply(Branch &b, const Instruction &inst) const {
        switch (inst.kind) {
            case GateKind::H:
                push(b, inst.qubits[0].index, mat_h());
                depolarize_1q(b, inst.qubits[0].index);
                break;
            case GateKind::X:
                push(b, inst.qubits[0].index, x_pulse_);
                depolarize_1q(b, inst.qubits[0].index);
                break;
            case GateKind::Y:
                push(b, inst.qubits[0].index, y_pulse_);
                depolarize_1q(b, inst.qubits[0].index);
                break;
            case GateKind::Rz:
                push(b, inst.qubits[0].index, mat_rz(inst.angle.radians()));
                break;
            case GateKind::ClassicalRz:
                if (b.record & mask(inst.clbit->index)) {
                    push(b, inst.qubits[0].index, mat_rz(inst.angle.radians()));
                }
                break;
            case GateKind::ClassicalX:
                if (b.record & mask(inst.clbit->index)) {
                    push(b, inst.qubits[0].index, x_pulse_);
                    depolarize_1q(b, inst.qubits[0].index);
                }
                break;
            case GateKind::CPhase: {
                std::uint32_t qs[2] = {inst.qubits[0].index, inst.qubits[1].index};
                flush_pending(b, qs[0]);
                flush_pending(b, qs[1]);
                b.op.apply_cphase(qs[0], qs[1], inst.angle.radians());
                if (noise_.p2 > 0.0) {
                    b.op.depolarize(qs, noise_.p2);
                }
                break;
            }
            case GateKind::Delay: {
                std::uint32_t q = inst.qubits[0].index;
                if (noise_.idle_detuning_sigma > 0.0) {
                    b.signed_time[q] += inst.duration_ns;
                }
                if (noise_.dephasing_rate > 0.0) {
                    b.op.dephase(q, std::exp(-noise_.dephasing_rate * inst.duration_ns));
                }
                break;
            }
            case GateKind::Measure:
            case GateKind::Barrier:
                break;
        }
    }

    std::vector<Branch> measure(std::vector<Branch> branches, const Instruction &inst) const {
        const std::uint32_t q = inst.qubits[0].index;
        const std::uint64_t bit = mask(inst.clbit->index);
        const double eps = noise_.eps_ro;
        std::vector<Branch> next;
        next.reserve(branches.size() * 2);
        for (auto &b : branches) {
            flush_pending(b, q);
            b.signed_time[q] = 0.0;
            LiveOperator outcome[2] = {b.op.measure_out(q, 0), b.op.measure_out(q, 1)};
            for (int r = 0; r < 2; ++r) {
                LiveOperator recorded = outcome[r];
                if (eps > 0.0) {
                    recorded.scale_add(1.0 - eps, outcome[1 - r], eps);
                }
                if (recorded.is_zero()) {
                    continue;
                }
                Branch child{r ? (b.record | bit) : (b.record & ~bit), b.signed_time, b.pending, b.dirty,
                             std::move(recorded)};
                next.push_back(std::move(child));
            }
        }
        return next;
    }

    const Circuit &circuit_;
    const NoiseModel &noise_;
    std::vector<std::uint32_t> quadrature_;
    std::vector<bool> fixed_;
    std::vector<double> nu_;
    Mat2 x_pulse_;
    Mat2 y_pulse_;
};

}  // namespace

DensityMatrix::DensityMatrix(std::uint32_t n_qubits) : n_qubits_(n_qubits), dim_(std::size_t{1} << n_qubits) {
    if (n_qubits < 1 || n_qubits > 14) {
        throw std::invalid_argument("density matrices support 1..14 qubits");
    }
    data_.assign(dim_ * dim_, Amplitude{});
}

DensityMatrix DensityMatrix::from_state(const StateVector &state) {
    DensityMatrix m(state.n_qubits());
    for (std::size_t i = 0; i < m.dim_; ++i) {
        for (std::size_t j = 0; j < m.dim_; ++j) {
            m(i, j) = state[i] * std::conj(state[j]);
        }
    }
    return m;
}

DensityMatrix DensityMatrix::basis(std::uint32_t n_qubits, std::uint64_t k) {
    return unit(n_qubits, k, k);
}

DensityMatrix DensityMatrix::unit(std::uint32_t n_qubits, std::uint64_t i, std::uint64_t j) {
    DensityMatrix m(n_qubits);
    if (i >= m.dim_ || j >= m.dim_) {
        throw std::invalid_argument("basis index out of range");
    }
    m(i, j) = 1.0;
    return m;
}

Amplitude DensityMatrix::trace() const {
    Amplitude t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

std::map<std::uint64_t, Amplitude> evolve_operator(const Circuit &circuit, const DensityMatrix &input,
                                                  const NoiseModel &noise, const TimingModel &timing,
                                                  const DensityLimits &limits) {
    require_valid(circuit);
    noise.validate();
    timing.validate();
    if (circuit.n_qubits() > limits.max_qubits) {
        throw std::invalid_argument("density-matrix simulation supports at most " +
                                    std::to_string(limits.max_qubits) + " qubits");
    }
    if (input.n_qubits() != circuit.n_qubits()) {
        throw std::invalid_argument("input operator has " + std::to_string(input.n_qubits()) +
                                    " qubits but the circuit has " + std::to_string(circuit.n_qubits()));
    }
    Circuit timed = noise.apply_idle_during_feedforward ? realize_feedforward_latency(circuit, timing) : circuit;

    std::vector<std::uint32_t> quadrature;
    if (noise.idle_detuning_sigma > 0.0) {
        quadrature = correlated_qubits(timed, noise);
    }
    if (quadrature.size() > limits.max_quadrature_qubits) {
        throw std::runtime_error("density-matrix engine: " + std::to_string(quadrature.size()) +
                                 " qubits see correlated detuning phases; at most " +
                                 std::to_string(limits.max_quadrature_qubits) + " are supported");
    }

    DensityRunner runner(timed, noise, quadrature);
    std::map<std::uint64_t, Amplitude> out;
    std::vector<double> nu(circuit.n_qubits(), 0.0);
    if (quadrature.empty()) {
        runner.run(input, nu, 1.0, out);
        return out;
    }
    auto [nodes, weights] = gauss_hermite(limits.quadrature_points, noise.idle_detuning_sigma);
    std::vector<std::uint32_t> index(quadrature.size(), 0);
    while (true) {
        double w = 1.0;
        for (std::size_t a = 0; a < quadrature.size(); ++a) {
            nu[quadrature[a]] = nodes[index[a]];
            w *= weights[index[a]];
        }
        runner.run(input, nu, w, out);
        std::size_t a = 0;
        while (a < index.size() && ++index[a] == nodes.size()) {
            index[a++] = 0;
        }
        if (a == index.size()) {
            break;
        }
    }
    return out;
}

OutcomeDistribution run_density_matrix(const Circuit &circuit, const DensityMatrix &input, const NoiseModel &noise,
                                       const TimingModel &timing, const DensityLimits &limits) {
    OutcomeDistribution d;
    d.n_bits = circuit.n_clbits();
    for (const auto &[record, value] : evolve_operator(circuit, input, noise, timing, limits)) {
        d.values[record] = value.real();
    }
    return d;
}

OutcomeDistribution run_density_matrix(const Circuit &circuit, std::uint64_t basis_label, const NoiseModel &noise,
                                       const TimingModel &timing, const DensityLimits &limits) {
    return run_density_matrix(circuit, DensityMatrix::basis(circuit.n_qubits(), basis_label), noise, timing, limits);
}

OutcomeDistribution run_density_matrix(const Circuit &circuit, const StateVector &input, const NoiseModel &noise,
                                       const TimingModel &timing, const DensityLimits &limits) {
    return run_density_matrix(circuit, DensityMatrix::from_state(input), noise, timing, limits);
}

Eigen::MatrixXcd choi_matrix(const Circuit &circuit, const NoiseModel &noise, const TimingModel &timing) {
    const std::uint32_t n = circuit.n_qubits();
    if (n > 4) {
        throw std::invalid_argument("Choi matrices are limited to 4 qubits");
    }
    const std::size_t d = std::size_t{1} << n;
    const std::size_t outputs = std::size_t{1} << circuit.n_clbits();
    Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d * outputs),
                                                   static_cast<Eigen::Index>(d * outputs));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            auto out = evolve_operator(circuit, DensityMatrix::unit(n, i, j), noise, timing);
            for (const auto &[record, value] : out) {
                auto row = static_cast<Eigen::Index>(i * outputs + record);
                auto col = static_cast<Eigen::Index>(j * outputs + record);
                choi(row, col) += value / static_cast<double>(d);
            }
        }
    }
    return choi;
}

}  // namespace qftdyn
