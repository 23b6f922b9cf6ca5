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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "qftdyn/certify.hpp"
#include "qftdyn/mitigation.hpp"

namespace qftdyn {
namespace {

NoiseModel random_noise(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    NoiseModel noise;
    noise.p1 = 0.05 * u(rng);
    noise.p2 = 0.1 * u(rng);
    noise.eps_ro = 0.08 * u(rng);
    noise.idle_detuning_sigma = 1e-3 * u(rng);
    noise.dephasing_rate = 2e-4 * u(rng);
    noise.pulse_over_rotation = 0.1 * (u(rng) - 0.5);
    return noise;
}

ShotGroup group_with_counts(std::uint64_t expected, std::initializer_list<std::pair<std::uint64_t, int>> counts) {
    ShotGroup g;
    g.expected = expected;
    for (auto [bits, count] : counts) {
        for (int i = 0; i < count; ++i) {
            g.records.push_back(ShotRecord{bits, {}});
        }
    }
    return g;
}

TEST(ProcessFidelity, NoiselessChannelsAreUnit) {
    for (std::uint32_t n = 1; n <= 6; ++n) {
        for (auto variant : {QftVariant::Unitary, QftVariant::Dynamic}) {
            auto channel = make_qft_channel(variant, n, DdSequence::none(), NoiseModel::noiseless(), TimingModel{});
            EXPECT_NEAR(exact_process_fidelity(channel), 1.0, 1e-10) << n;
        }
    }
}

TEST(ProcessFidelity, FullDepolarizingGivesUniformFloor) {
    for (std::uint32_t n = 1; n <= 6; ++n) {
        auto channel =
            make_qft_channel(QftVariant::Unitary, n, DdSequence::none(), NoiseModel::fully_depolarizing(), TimingModel{});
        EXPECT_NEAR(exact_process_fidelity(channel), 1.0 / static_cast<double>(1u << n), 1e-10) << n;
    }
}

TEST(ProcessFidelity, MatchesChoiStateFidelity) {
    std::mt19937_64 rng(101);
    for (std::uint32_t n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < (n < 3 ? 4 : 1); ++trial) {
            auto noise = random_noise(rng);
            for (auto variant : {QftVariant::Unitary, QftVariant::Dynamic}) {
                auto dd = trial % 2 ? DdSequence::xy4() : DdSequence::none();
                auto channel = make_qft_channel(variant, n, dd, noise, TimingModel{});
                double exact = exact_process_fidelity(channel);
                double choi = choi_uhlmann_fidelity(ideal_version(channel), channel);
                EXPECT_NEAR(exact, choi, 1e-8) << "n=" << n << " trial=" << trial;
            }
        }
    }
}

TEST(ProcessFidelity, MatchesDenseOracle) {
    std::mt19937_64 rng(202);
    for (std::uint32_t n = 1; n <= 3; ++n) {
        auto noise = random_noise(rng);
        auto channel = make_qft_channel(QftVariant::Dynamic, n, DdSequence::none(), noise, TimingModel{});
        EXPECT_NEAR(exact_process_fidelity(channel),
                    testing::oracle_process_fidelity(channel.circuit, noise, channel.timing), 1e-8);
    }
}

TEST(ProcessFidelity, SizeLimits) {
    auto big = make_qft_channel(QftVariant::Unitary, 7, DdSequence::none(), NoiseModel::noiseless(), TimingModel{});
    EXPECT_THROW(exact_process_fidelity(big), std::invalid_argument);
    auto five = make_qft_channel(QftVariant::Unitary, 5, DdSequence::none(), NoiseModel::noiseless(), TimingModel{});
    EXPECT_THROW(choi_uhlmann_fidelity(five, five), std::invalid_argument);
}

TEST(Uhlmann, SimpleStates) {
    Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(2, 2);
    zero(0, 0) = 1;
    Eigen::MatrixXcd plus = Eigen::MatrixXcd::Constant(2, 2, 0.5);
    Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
    EXPECT_NEAR(uhlmann_fidelity(zero, zero), 1.0, 1e-12);
    EXPECT_NEAR(uhlmann_fidelity(zero, plus), 0.5, 1e-12);
    EXPECT_NEAR(uhlmann_fidelity(zero, mixed), 0.5, 1e-12);
    EXPECT_NEAR(uhlmann_fidelity(mixed, mixed), 1.0, 1e-12);
    Eigen::MatrixXcd bad = -zero;
    EXPECT_THROW(psd_sqrt(bad), std::runtime_error);
}

TEST(Estimators, EqualProbabilities) {
    std::vector<double> p(12, 0.64);
    EXPECT_NEAR(naive_fidelity(p), 0.64, 1e-12);
    EXPECT_NEAR(bias_corrected_fidelity(p), 0.64, 1e-12);
    for (std::size_t m : {2, 3, 7, 20}) {
        std::vector<double> exact(m, 0.5625);
        EXPECT_EQ(bias_corrected_fidelity(exact), 0.5625) << m;
    }
    EXPECT_THROW(bias_corrected_fidelity(std::vector<double>{0.5}), std::invalid_argument);
}

TEST(Estimators, BiasCorrectionIsUnbiasedOverPairs) {
    // For distinct i != j the estimator averages sqrt(p_i p_j).
    std::vector<double> p{0.9, 0.4, 0.1};
    double pairs = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (i != j) {
                pairs += std::sqrt(p[i] * p[j]);
            }
        }
    }
    EXPECT_NEAR(bias_corrected_fidelity(p), pairs / 6.0, 1e-12);
}

TEST(Mitigation, IdentityLeavesCounts) {
    OutcomeDistribution d{2, 100, {{0, 60}, {3, 40}}};
    auto out = mitigate_readout(d, ConfusionModel::identity(2));
    EXPECT_NEAR(out.probability(0), 0.6, 1e-12);
    EXPECT_NEAR(out.probability(3), 0.4, 1e-12);
}

TEST(Mitigation, SingleBitInversion) {
    OutcomeDistribution d{1, 0, {{0, 0.86}, {1, 0.14}}};
    auto model = ConfusionModel::symmetric(1, 0.1);
    auto out = mitigate_readout(d, model);
    EXPECT_NEAR(out.probability(0), 0.95, 1e-12);
    EXPECT_NEAR(out.probability(1), 0.05, 1e-12);
    EXPECT_NEAR(mitigated_probability(d, model, 0), 0.95, 1e-12);
}

TEST(Mitigation, RoundTripThreeBits) {
    ConfusionModel model;
    model.matrices = {{0.9, 0.2, 0.1, 0.8}, {0.97, 0.05, 0.03, 0.95}, {0.85, 0.1, 0.15, 0.9}};
    OutcomeDistribution truth{3, 0, {{1, 0.5}, {6, 0.3}, {7, 0.2}}};
    auto noisy = apply_confusion(truth, model);
    for (std::uint64_t x = 0; x < 8; ++x) {
        EXPECT_NEAR(mitigated_probability(noisy, model, x), truth.probability(x), 1e-12) << x;
    }
    auto back = mitigate_readout(noisy, model);
    for (std::uint64_t x = 0; x < 8; ++x) {
        EXPECT_NEAR(back.probability(x), truth.probability(x), 1e-12) << x;
    }
}

TEST(Mitigation, RejectsBadModels) {
    OutcomeDistribution d{1, 0, {{0, 1.0}}};
    EXPECT_THROW(mitigate_readout(d, ConfusionModel::symmetric(1, 0.5)), std::invalid_argument);
    EXPECT_THROW(mitigate_readout(d, ConfusionModel::identity(2)), std::invalid_argument);
    ConfusionModel broken;
    broken.matrices = {{0.9, 0.1, 0.2, 0.9}};
    EXPECT_THROW(broken.validate(), std::invalid_argument);
}

TEST(Plurality, StrictMajorityOnly) {
    std::vector<ShotGroup> groups{
        group_with_counts(2, {{2, 6}, {1, 4}}),
        group_with_counts(1, {{1, 5}, {3, 5}}),
        group_with_counts(0, {{3, 7}, {0, 3}}),
        group_with_counts(3, {{3, 2}, {0, 1}, {1, 1}, {2, 1}}),
    };
    EXPECT_DOUBLE_EQ(plurality_vote_success(groups), 0.5);
    EXPECT_THROW(plurality_vote_success(std::vector<ShotGroup>{}), std::invalid_argument);
}

TEST(Sampling, DistinctSortedAndSeeded) {
    for (std::uint32_t n : {3u, 8u, 20u}) {
        std::uint32_t m = std::min<std::uint32_t>(20, 1u << n);
        auto labels = sample_inputs(n, m, 5);
        ASSERT_EQ(labels.size(), m);
        EXPECT_TRUE(std::is_sorted(labels.begin(), labels.end()));
        EXPECT_EQ(std::set<std::uint64_t>(labels.begin(), labels.end()).size(), m);
        EXPECT_LT(labels.back(), std::uint64_t{1} << n);
        EXPECT_EQ(labels, sample_inputs(n, m, 5));
    }
    EXPECT_NE(sample_inputs(20, 20, 5), sample_inputs(20, 20, 6));
    EXPECT_THROW(sample_inputs(4, 17, 1), std::invalid_argument);
    EXPECT_EQ(sample_inputs(4, 40, 1, true).size(), 40u);
    auto everything = sample_inputs(3, 8, 9);
    EXPECT_EQ(everything, (std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7}));
}

TEST(Sampling, EstimateTracksExactValue) {
    auto noise = NoiseModel::standard();
    noise.p2 = 0.02;
    auto channel = make_qft_channel(QftVariant::Unitary, 3, DdSequence::none(), noise, TimingModel{});
    const double exact = exact_process_fidelity(channel);
    for (std::uint64_t seed : {1, 2, 3}) {
        SamplingOptions options;
        options.m = 8;
        options.shots = 3000;
        options.seed = seed;
        options.bootstrap_resamples = 300;
        auto est = sampled_process_fidelity(channel, options);
        EXPECT_GT(est.std_error, 0.0);
        EXPECT_LT(std::abs(est.bias_corrected_raw - exact), 4 * est.std_error) << seed;
        EXPECT_LE(est.ci_low, est.bias_corrected);
        EXPECT_GE(est.ci_high, est.bias_corrected);
        EXPECT_EQ(est.inputs.size(), 8u);
        EXPECT_EQ(est.shots_per_bitstring, 3000u);
    }
}

TEST(Sampling, MitigationRecoversReadoutLoss) {
    NoiseModel noise;
    noise.eps_ro = 0.1;
    auto channel = make_qft_channel(QftVariant::Unitary, 3, DdSequence::none(), noise, TimingModel{});
    SamplingOptions options;
    options.m = 8;
    options.shots = 4000;
    options.bootstrap_resamples = 100;
    auto raw = sampled_process_fidelity(channel, options);
    options.mitigate = true;
    auto fixed = sampled_process_fidelity(channel, options);
    EXPECT_NEAR(raw.bias_corrected, std::pow(0.9, 3), 0.03);
    EXPECT_GT(fixed.bias_corrected, 0.97);
}

TEST(Sampling, Deterministic) {
    auto channel =
        make_qft_channel(QftVariant::Dynamic, 4, DdSequence::fc_dd(), NoiseModel::standard(), TimingModel{});
    SamplingOptions options;
    options.m = 6;
    options.shots = 200;
    options.seed = 11;
    options.bootstrap_resamples = 50;
    auto a = sampled_process_fidelity(channel, options);
    options.threads = 1;
    auto b = sampled_process_fidelity(channel, options);
    EXPECT_EQ(a.probabilities, b.probabilities);
    EXPECT_EQ(a.ci_low, b.ci_low);
    EXPECT_EQ(a.ci_high, b.ci_high);
    options.m = 1;
    EXPECT_THROW(sampled_process_fidelity(channel, options), std::invalid_argument);
}

TEST(DdEffectiveness, OneRowPerSequence) {
    auto noise = NoiseModel::standard();
    std::vector<DdSequence> seqs{DdSequence::none(), DdSequence::fc_dd()};
    SamplingOptions options;
    options.m = 4;
    options.shots = 300;
    options.bootstrap_resamples = 20;
    auto rows = dd_effectiveness(build_dynamic_qft(3), TimingModel{}, noise, seqs, options);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].sequence, DdSequence::none());
    EXPECT_GT(rows[1].estimate.bias_corrected, rows[0].estimate.bias_corrected);
}

}  // namespace
}  // namespace qftdyn
