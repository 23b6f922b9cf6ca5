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


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qftdyn/density_matrix.hpp"
#include "qftdyn/qft.hpp"
#include "qftdyn/simulator.hpp"
#include "qftdyn/text_format.hpp"
#include "random_circuits.hpp"

namespace qftdyn {
namespace {

using testing::Ket;

Ket to_ket(const StateVector &s) {
    Ket v(static_cast<Eigen::Index>(s.amplitudes().size()));
    for (std::size_t i = 0; i < s.amplitudes().size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = s.amplitudes()[i];
    }
    return v;
}

Circuit echo_circuit(double t) {
    Circuit c(1, 1);
    c.h(0).delay(0, t).x(0).delay(0, t).x(0).h(0).measure(0, 0);
    return c;
}

NoiseModel random_noise(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    NoiseModel m;
    m.p1 = 0.05 * u(rng);
    m.p2 = 0.1 * u(rng);
    m.eps_ro = 0.05 * u(rng);
    m.idle_detuning_sigma = 1e-3 * u(rng);
    m.dephasing_rate = (rng() & 1) ? 2e-4 * u(rng) : 0.0;
    m.pulse_over_rotation = (rng() & 1) ? 0.1 * u(rng) : 0.0;
    return m;
}

TEST(Exact, UniformFromZeroState) {
    auto d = run_exact(build_unitary_qft(3), 0);
    for (std::uint64_t k = 0; k < 8; ++k) {
        EXPECT_NEAR(d.probability(k), 1.0 / 8, 1e-14);
    }
    EXPECT_TRUE(d.is_exact());
}

TEST(Exact, MeasureOne) {
    Circuit c(1, 1);
    c.measure(0, 0);
    EXPECT_DOUBLE_EQ(run_exact(c, 1).probability(1), 1.0);
}

TEST(Exact, SizeBounds) {
    EXPECT_THROW(run_exact(build_unitary_qft(15), 0), std::invalid_argument);
    ExactLimits tight;
    tight.max_branches = 4;
    // |1> spreads over every record, so all eight mid-circuit branches are live.
    EXPECT_THROW(run_exact(build_dynamic_qft(4), 1, tight), std::runtime_error);
    auto sharp = StateVector::prepared(build_qft_dagger_state_prep(BasisLabel(5, 4)));
    EXPECT_NO_THROW(run_exact(build_dynamic_qft(4), sharp, tight));
}

TEST(Exact, MatchesDenseOracleOnRandomCircuits) {
    std::mt19937_64 rng(3);
    TimingModel timing;
    for (int trial = 0; trial < 60; ++trial) {
        testing::RandomCircuitOptions o;
        o.n_qubits = 1 + static_cast<std::uint32_t>(rng() % 4);
        o.n_clbits = 1 + static_cast<std::uint32_t>(rng() % 3);
        o.length = 25;
        auto c = testing::random_circuit(rng, o);
        std::uint64_t k = rng() % (std::uint64_t{1} << o.n_qubits);
        std::vector<double> zero(o.n_qubits, 0.0);
        Ket in = Ket::Zero(Eigen::Index{1} << o.n_qubits);
        in(static_cast<Eigen::Index>(k)) = 1;
        auto want = testing::oracle_distribution_fixed(c, in, NoiseModel::noiseless(), timing, zero);
        auto got = run_exact(c, k);
        for (const auto &[r, p] : want) {
            EXPECT_NEAR(got.probability(r), p, 1e-12);
        }
        EXPECT_NEAR(got.total(), 1.0, 1e-12);
    }
}

TEST(StateVectorNorm, PreservedByEveryGate) {
    std::mt19937_64 rng(8);
    testing::RandomCircuitOptions o;
    o.n_qubits = 5;
    o.measurements = false;
    o.classical_control = false;
    o.length = 200;
    auto c = testing::random_circuit(rng, o);
    auto s = StateVector::prepared(build_periodic_state_prep(5, 1, 2));
    for (const auto &inst : c.instructions()) {
        s.apply_unitary(inst);
        ASSERT_NEAR(s.norm_squared(), 1.0, 1e-10);
    }
}

TEST(Trajectories, NoiselessPointMass) {
    auto prep = build_qft_dagger_state_prep(BasisLabel(3, 4));
    auto records = run_trajectories(build_dynamic_qft(4), prep, NoiseModel::noiseless(), TimingModel{}, 500, 1);
    ASSERT_EQ(records.size(), 500u);
    for (const auto &r : records) {
        EXPECT_EQ(r.bits, 3u);
    }
}

TEST(Trajectories, FullTwoQubitDepolarizingIsUniform) {
    NoiseModel noise;
    noise.p2 = 1.0;
    const std::uint64_t shots = 20000;
    auto records = run_trajectories(build_unitary_qft(2), 0, noise, TimingModel{}, shots, 9);
    auto dist = OutcomeDistribution::from_records(records, 2);
    for (std::uint64_t k = 0; k < 4; ++k) {
        double sd = std::sqrt(shots * 0.25 * 0.75);
        EXPECT_NEAR(dist.values[k], shots * 0.25, 5 * sd);
    }
}

TEST(Trajectories, EchoRefocusesEveryShot) {
    NoiseModel noise;
    noise.idle_detuning_sigma = 1e-3;
    auto records = run_trajectories(echo_circuit(1000), 0, noise, TimingModel{}, 2000, 4);
    for (const auto &r : records) {
        ASSERT_EQ(r.bits, 0u);
        ASSERT_EQ(r.detunings.size(), 1u);
    }
}

TEST(Trajectories, DeterministicAndThreadIndependent) {
    auto noise = NoiseModel::standard();
    noise.p1 = 0.01;
    auto c = build_dynamic_qft(4);
    auto a = run_trajectories(c, 5, noise, TimingModel{}, 3000, 42, 1);
    auto b = run_trajectories(c, 5, noise, TimingModel{}, 3000, 42, 4);
    auto again = run_trajectories(c, 5, noise, TimingModel{}, 3000, 42, 1);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, again);
    auto prefix = run_trajectories(c, 5, noise, TimingModel{}, 1000, 42, 1);
    EXPECT_TRUE(std::equal(prefix.begin(), prefix.end(), a.begin()));
    EXPECT_NE(run_trajectories(c, 5, noise, TimingModel{}, 3000, 43, 1), a);
}

TEST(Trajectories, SampledDetuningsHaveConfiguredSpread) {
    NoiseModel noise;
    noise.idle_detuning_sigma = 2e-3;
    auto records = run_trajectories(echo_circuit(10), 0, noise, TimingModel{}, 20000, 5);
    double sum2 = 0;
    for (const auto &r : records) {
        sum2 += r.detunings[0] * r.detunings[0];
    }
    EXPECT_NEAR(std::sqrt(sum2 / records.size()), 2e-3, 2e-3 * 0.03);
}

TEST(Trajectories, RejectsBadInput) {
    EXPECT_THROW(run_trajectories(build_unitary_qft(2), 0, NoiseModel{}, TimingModel{}, 0, 1), std::invalid_argument);
    NoiseModel bad;
    bad.p2 = 1.5;
    EXPECT_THROW(run_trajectories(build_unitary_qft(2), 0, bad, TimingModel{}, 10, 1), std::invalid_argument);
}

TEST(DensityMatrix, NoiselessMatchesExact) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        testing::RandomCircuitOptions o;
        o.n_qubits = 1 + static_cast<std::uint32_t>(rng() % 6);
        o.n_clbits = 1 + static_cast<std::uint32_t>(rng() % 4);
        o.length = 30;
        auto c = testing::random_circuit(rng, o);
        std::uint64_t k = rng() % (std::uint64_t{1} << o.n_qubits);
        auto a = run_exact(c, k);
        auto b = run_density_matrix(c, k, NoiseModel::noiseless(), TimingModel{});
        for (std::uint64_t r = 0; r < (std::uint64_t{1} << o.n_clbits); ++r) {
            EXPECT_NEAR(a.probability(r), b.probability(r), 1e-12);
        }
    }
}

TEST(DensityMatrix, EchoIsExact) {
    NoiseModel noise;
    noise.idle_detuning_sigma = 1e-3;
    auto d = run_density_matrix(echo_circuit(1500), 0, noise, TimingModel{});
    EXPECT_NEAR(d.probability(0), 1.0, 1e-14);
}

TEST(DensityMatrix, RamseyDecayFollowsGaussianFactor) {
    NoiseModel noise;
    noise.idle_detuning_sigma = 1e-3;
    Circuit c(1, 1);
    c.h(0).delay(0, 800).h(0).measure(0, 0);
    auto d = run_density_matrix(c, 0, noise, TimingModel{});
    double sigma_t = 1e-3 * 800;
    EXPECT_NEAR(d.probability(0), 0.5 * (1 + std::exp(-sigma_t * sigma_t / 2)), 1e-14);
}

TEST(DensityMatrix, MatchesDenseOracleUnderNoise) {
    std::mt19937_64 rng(31);
    TimingModel timing;
    timing.t_ff = 300;
    for (int trial = 0; trial < 40; ++trial) {
        testing::RandomCircuitOptions o;
        o.n_qubits = 1 + static_cast<std::uint32_t>(rng() % 3);
        o.n_clbits = 1 + static_cast<std::uint32_t>(rng() % 3);
        o.length = 18;
        auto c = testing::random_circuit(rng, o);
        auto noise = random_noise(rng);
        noise.apply_idle_during_feedforward = (trial % 3) != 0;
        auto prep = StateVector::prepared(build_periodic_state_prep(o.n_qubits, 0, 1));
        auto want = testing::oracle_distribution(c, to_ket(prep), noise, timing, 16);
        auto got = run_density_matrix(c, prep, noise, timing);
        for (const auto &[r, p] : want) {
            EXPECT_NEAR(got.probability(r), p, 1e-9) << print_text(c);
        }
    }
}

TEST(DensityMatrix, DdScheduledQftMatchesDenseOracle) {
    auto noise = NoiseModel::standard();
    noise.p1 = 0.003;
    noise.pulse_over_rotation = 0.05;
    for (auto variant : {QftVariant::Unitary, QftVariant::Dynamic}) {
        auto c = build_qft(variant, 3);
        auto in = StateVector::prepared(build_qft_dagger_state_prep(BasisLabel(6, 3)));
        auto want = testing::oracle_distribution(c, to_ket(in), noise, TimingModel{}, 20);
        auto got = run_density_matrix(c, in, noise, TimingModel{});
        for (const auto &[r, p] : want) {
            EXPECT_NEAR(got.probability(r), p, 1e-9);
        }
    }
}

TEST(DensityMatrix, SizeBound) {
    EXPECT_THROW(run_density_matrix(build_unitary_qft(7), 0, NoiseModel{}, TimingModel{}), std::invalid_argument);
}

// Chi-square goodness of fit of 1e5 trajectories against the exact distribution.
void expect_trajectories_fit(const Circuit &c, std::uint64_t k, const NoiseModel &noise, const TimingModel &timing,
                             std::uint64_t seed) {
    const std::uint64_t shots = 100000;
    auto exact = run_density_matrix(c, k, noise, timing);
    auto sampled = OutcomeDistribution::from_records(run_trajectories(c, k, noise, timing, shots, seed), c.n_clbits());
    double chi2 = 0;
    int cells = 0;
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << c.n_clbits()); ++r) {
        double expected = exact.probability(r) * shots;
        double observed = sampled.values.contains(r) ? sampled.values.at(r) : 0.0;
        if (expected < 1e-9) {
            EXPECT_EQ(observed, 0.0);
            continue;
        }
        EXPECT_LT(std::abs(observed - expected), 4 * std::sqrt(expected * (1 - exact.probability(r))) + 1)
            << r;
        chi2 += (observed - expected) * (observed - expected) / expected;
        ++cells;
    }
    if (cells > 1) {
        EXPECT_GT(testing::chi_square_survival(chi2, cells - 1), 0.001) << chi2 << " over " << cells;
    }
}

TEST(CrossCheck, DepolarizedUnitaryQft) {
    NoiseModel noise;
    noise.p2 = 0.05;
    expect_trajectories_fit(build_unitary_qft(3), 5, noise, TimingModel{}, 1);
}

TEST(CrossCheck, RandomNoisyCircuits) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 6; ++trial) {
        testing::RandomCircuitOptions o;
        o.n_qubits = 2 + static_cast<std::uint32_t>(rng() % 2);
        o.n_clbits = 3;
        o.length = 20;
        auto c = testing::random_circuit(rng, o);
        expect_trajectories_fit(c, rng() % 4, random_noise(rng), TimingModel{}, 100 + trial);
    }
}

TEST(CrossCheck, StandardNoiseDynamicQft) {
    auto noise = NoiseModel::standard();
    noise.dephasing_rate = 1e-5;
    expect_trajectories_fit(build_dynamic_qft(4), 9, noise, TimingModel{}, 2);
}

TEST(Choi, IdealSingleQubitSpectrum) {
    auto rho = choi_matrix(build_unitary_qft(1), NoiseModel::noiseless(), TimingModel{});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(2.0 * rho);
    auto ev = es.eigenvalues();
    EXPECT_NEAR(ev(0), 0.0, 1e-12);
    EXPECT_NEAR(ev(1), 0.0, 1e-12);
    EXPECT_NEAR(ev(2), 1.0, 1e-12);
    EXPECT_NEAR(ev(3), 1.0, 1e-12);
}

TEST(Choi, IdentityThenMeasure) {
    Circuit c(1, 1);
    c.measure(0, 0);
    auto rho = choi_matrix(c, NoiseModel::noiseless(), TimingModel{});
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(4, 4);
    want(0, 0) = 0.5;
    want(3, 3) = 0.5;
    EXPECT_LT((rho - want).norm(), 1e-14);
}

TEST(Choi, FullyDepolarizingSingleQubit) {
    auto rho = choi_matrix(build_unitary_qft(1), NoiseModel::fully_depolarizing(), TimingModel{});
    EXPECT_LT((rho - Eigen::MatrixXcd::Identity(4, 4) / 4.0).norm(), 1e-14);
}

TEST(Choi, IdealIsScaledProjectorAndBlocksAreOrthogonal) {
    for (std::uint32_t n = 1; n <= 3; ++n) {
        const double d = std::pow(2.0, n);
        for (auto variant : {QftVariant::Unitary, QftVariant::Dynamic}) {
            auto rho = choi_matrix(build_qft(variant, n), NoiseModel::noiseless(), TimingModel{});
            EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
            EXPECT_LT((rho * rho - rho / d).norm(), 1e-12);
            // sigma_k lives in the record-k diagonal block.
            const auto dim = static_cast<Eigen::Index>(d);
            std::vector<Eigen::MatrixXcd> sigma;
            for (Eigen::Index k = 0; k < dim; ++k) {
                Eigen::MatrixXcd s(dim, dim);
                for (Eigen::Index i = 0; i < dim; ++i) {
                    for (Eigen::Index j = 0; j < dim; ++j) {
                        s(i, j) = d * rho(i * dim + k, j * dim + k);
                    }
                }
                sigma.push_back(s);
            }
            for (Eigen::Index k = 0; k < dim; ++k) {
                for (Eigen::Index l = 0; l < dim; ++l) {
                    double overlap = (sigma[k] * sigma[l]).trace().real();
                    EXPECT_NEAR(overlap, k == l ? 1.0 : 0.0, 1e-10);
                }
            }
        }
    }
}

TEST(Choi, NoisyIsPositiveWithUnitTrace) {
    auto noise = NoiseModel::standard();
    noise.p1 = 0.02;
    auto rho = choi_matrix(build_dynamic_qft(3), noise, TimingModel{});
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-9);
    EXPECT_LT((rho - rho.adjoint()).norm(), 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-9);
    EXPECT_THROW(choi_matrix(build_unitary_qft(5), noise, TimingModel{}), std::invalid_argument);
}

}  // namespace
}  // namespace qftdyn
