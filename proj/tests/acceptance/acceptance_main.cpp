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


// Runs every acceptance check and prints one PASS / FAIL line per check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"
#include "oracles.hpp"
#include "qftdyn/certify.hpp"
#include "qftdyn/dd.hpp"
#include "qftdyn/density_matrix.hpp"
#include "qftdyn/qft.hpp"
#include "qftdyn/rewriter.hpp"
#include "qftdyn/simulator.hpp"
#include "qftdyn/text_format.hpp"
#include "random_circuits.hpp"

namespace {

using namespace qftdyn;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char *pattern, auto... values) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), pattern, values...);
    return buf;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

NoiseModel random_noise(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    NoiseModel noise;
    noise.p1 = 0.05 * u(rng);
    noise.p2 = 0.1 * u(rng);
    noise.eps_ro = 0.1 * u(rng);
    noise.idle_detuning_sigma = 1e-3 * u(rng);
    noise.dephasing_rate = 2e-4 * u(rng);
    noise.pulse_over_rotation = 0.2 * (u(rng) - 0.5);
    return noise;
}

Outcome deferred_measurement_equivalence() {
    auto start = Clock::now();
    double worst = 0.0;
    for (std::uint32_t n = 1; n <= 8; ++n) {
        worst = std::max(worst, verify_equivalence(build_unitary_qft(n), build_dynamic_qft(n)));
    }
    double elapsed = seconds_since(start);
    return {worst < 1e-10 && elapsed < 120, fmt("max deviation %.3g over n=1..8 in %.1f s", worst, elapsed)};
}

Outcome exact_matches_choi() {
    auto start = Clock::now();
    std::mt19937_64 rng(2024);
    const DdSequence sequences[] = {DdSequence::none(), DdSequence::x2(), DdSequence::xy4(), DdSequence::ur(6),
                                    DdSequence::fc_dd()};
    double worst = 0.0;
    int configs = 0;
    for (std::uint32_t n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 12; ++trial) {
            auto variant = trial % 2 ? QftVariant::Dynamic : QftVariant::Unitary;
            auto channel = make_qft_channel(variant, n, sequences[trial % 5], random_noise(rng), TimingModel{});
            double exact = exact_process_fidelity(channel);
            double choi = choi_uhlmann_fidelity(ideal_version(channel), channel);
            worst = std::max(worst, std::abs(exact - choi));
            configs += 1;
        }
    }
    double elapsed = seconds_since(start);
    return {worst < 1e-8 && elapsed < 300,
            fmt("max |exact - choi| %.3g over %d noisy channels in %.1f s", worst, configs, elapsed)};
}

Outcome analytic_anchors() {
    double worst_ideal = 0.0, worst_depolarized = 0.0;
    for (std::uint32_t n = 1; n <= 6; ++n) {
        for (auto variant : {QftVariant::Unitary, QftVariant::Dynamic}) {
            auto ideal = make_qft_channel(variant, n, DdSequence::none(), NoiseModel::noiseless(), TimingModel{});
            worst_ideal = std::max(worst_ideal, std::abs(exact_process_fidelity(ideal) - 1.0));
            auto mixed =
                make_qft_channel(variant, n, DdSequence::none(), NoiseModel::fully_depolarizing(), TimingModel{});
            worst_depolarized = std::max(
                worst_depolarized, std::abs(exact_process_fidelity(mixed) - 1.0 / static_cast<double>(1u << n)));
        }
    }
    // Values whose square roots are exact binary fractions keep the arithmetic exact.
    bool estimator_exact = true;
    for (double p : {0.0, 0.25, 0.5625, 1.0}) {
        for (std::size_t m : {2, 4, 16}) {
            std::vector<double> probs(m, p);
            estimator_exact = estimator_exact && bias_corrected_fidelity(probs) == p;
        }
    }
    return {worst_ideal < 1e-10 && worst_depolarized < 1e-9 && estimator_exact,
            fmt("noiseless dev %.2g, depolarized dev %.2g, equal-p estimator exact: %s", worst_ideal,
                worst_depolarized, estimator_exact ? "yes" : "no")};
}

Outcome estimator_convergence() {
    NoiseModel noise;
    noise.p2 = 0.01;
    auto channel = make_qft_channel(QftVariant::Unitary, 4, DdSequence::none(), noise, TimingModel{});
    const double exact = exact_process_fidelity(channel);
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        SamplingOptions options;
        options.m = 16;
        options.shots = 4096;
        options.seed = seed;
        auto est = sampled_process_fidelity(channel, options);
        if (std::abs(est.bias_corrected_raw - exact) <= 3 * est.std_error) {
            hits += 1;
        }
    }
    return {hits >= 47, fmt("%d/50 seeds within 3 sigma of exact %.6f", hits, exact)};
}

Outcome echo_exactness() {
    const double sigma = 1e-3;
    NoiseModel noise;
    noise.idle_detuning_sigma = sigma;
    std::mt19937_64 rng(5);
    std::normal_distribution<double> draw(0.0, sigma);
    double worst_amplitude = 0.0;
    std::size_t wrong_shots = 0, shots = 0;
    double bare_min = 1.0;
    for (double t : {200.0, 1244.0, 5000.0}) {
        Circuit bare(2, 2);
        bare.h(0).h(1).delay(0, t).delay(1, t).h(0).h(1).measure(0, 0).measure(1, 1);
        Circuit echoed = insert_dd(bare, TimingModel{}, DdSequence::x2());
        testing::Ket input = testing::Ket::Zero(4);
        input(0) = 1;
        for (int draw_index = 0; draw_index < 200; ++draw_index) {
            double nu[2] = {draw(rng), draw(rng)};
            auto echoed_dist = testing::oracle_distribution_fixed(echoed, input, noise, TimingModel{}, nu);
            worst_amplitude = std::max(worst_amplitude, std::abs(1.0 - echoed_dist[0]));
            auto bare_dist = testing::oracle_distribution_fixed(bare, input, noise, TimingModel{}, nu);
            bare_min = std::min(bare_min, bare_dist[0]);
        }
        for (const auto &r : run_trajectories(echoed, 0, noise, TimingModel{}, 5000, 77)) {
            wrong_shots += r.bits != 0;
            shots += 1;
        }
    }
    return {wrong_shots == 0 && worst_amplitude < 1e-12 && bare_min < 0.99,
            fmt("%zu/%zu shots wrong, max |1 - Pr(correct)| %.2g per drawn detuning (unechoed min %.3f)",
                wrong_shots, shots, worst_amplitude, bare_min)};
}

Outcome dd_benefit_ordering() {
    auto start = Clock::now();
    const NoiseModel noise = NoiseModel::standard();
    const TimingModel timing;
    bool ok = std::abs(timing.t_readout() - 1244) < 1e-9 && std::abs(timing.t_ff - 653) < 1e-9;
    std::ostringstream detail;
    for (std::uint32_t n : {4u, 6u, 8u}) {
        SamplingOptions options;
        options.m = 20;
        options.shots = 2000;
        options.seed = 7;
        options.mitigate = true;
        options.with_replacement = options.m > (1u << n);
        auto estimate = [&](QftVariant v, DdSequence dd) {
            return sampled_process_fidelity(make_qft_channel(v, n, dd, noise, timing), options);
        };
        auto dyn_fc = estimate(QftVariant::Dynamic, DdSequence::fc_dd());
        auto dyn_none = estimate(QftVariant::Dynamic, DdSequence::none());
        auto uni_ur = estimate(QftVariant::Unitary, DdSequence::ur(10));
        auto uni_none = estimate(QftVariant::Unitary, DdSequence::none());
        auto above = [](const FidelityEstimate &a, const FidelityEstimate &b) {
            return a.bias_corrected > b.bias_corrected && a.ci_low > b.ci_high;
        };
        ok = ok && above(dyn_fc, dyn_none) && above(uni_ur, uni_none) && above(dyn_fc, uni_ur);
        detail << fmt("n=%u dyn[FC %.3f, none %.3f] uni[UR10 %.3f, none %.3f]; ", n, dyn_fc.bias_corrected,
                      dyn_none.bias_corrected, uni_ur.bias_corrected, uni_none.bias_corrected);
    }
    double elapsed = seconds_since(start);
    detail << fmt("%.1f s", elapsed);
    return {ok && elapsed < 900, detail.str()};
}

Outcome periodic_demo() {
    const std::uint32_t n = 10;
    Circuit prep = build_periodic_state_prep(n, 3, 4);
    auto ideal = run_exact(build_unitary_qft(n), StateVector::prepared(prep));
    bool ideal_ok = ideal.values.size() == 4;
    for (std::uint64_t peak : {0, 256, 512, 768}) {
        ideal_ok = ideal_ok && std::abs(ideal.probability(peak) - 0.25) < 1e-10;
    }
    const NoiseModel noise = NoiseModel::standard();
    const TimingModel timing;
    auto sampled = [&](QftVariant v, DdSequence dd) {
        Circuit c = insert_dd(build_qft(v, n), timing, dd);
        return OutcomeDistribution::from_records(run_trajectories(c, prep, noise, timing, 8000, 3), n);
    };
    double tv_uni = total_variation_distance(sampled(QftVariant::Unitary, DdSequence::ur(10)), ideal);
    double tv_dyn = total_variation_distance(sampled(QftVariant::Dynamic, DdSequence::fc_dd()), ideal);
    return {ideal_ok && tv_dyn < tv_uni,
            fmt("ideal peaks at {0,256,512,768}: %s; TV dynamic %.4f vs unitary %.4f", ideal_ok ? "yes" : "no",
                tv_dyn, tv_uni)};
}

Outcome resource_scaling() {
    for (std::uint32_t n = 1; n <= 24; ++n) {
        auto u = stats(build_unitary_qft(n));
        auto d = stats(build_dynamic_qft(n));
        if (u.two_qubit_gate_count != n * (n - 1) / 2 || d.two_qubit_gate_count != 0 ||
            u.mid_circuit_measurement_count != 0 || d.mid_circuit_measurement_count != n - 1) {
            return {false, fmt("mismatch at n=%u", n)};
        }
    }
    return {true, "gate and measurement counts match for n=1..24"};
}

Outcome plurality_contrast() {
    auto noise = NoiseModel::standard();
    noise.eps_ro = 0.2;
    auto channel = make_qft_channel(QftVariant::Dynamic, 4, DdSequence::fc_dd(), noise, TimingModel{});
    auto inputs = sample_inputs(4, 16, 9);
    auto groups = run_channel_groups(channel, inputs, 2000, 9);
    auto est = estimate_from_groups(groups, 4, nullptr, 1000, 9);
    double plurality = plurality_vote_success(groups);
    return {est.bias_corrected < 0.5 && plurality == 1.0,
            fmt("readout flip 0.2, unmitigated F %.3f [%.3f, %.3f] with plurality success %.2f", est.bias_corrected,
                est.ci_low, est.ci_high, plurality)};
}

Outcome determinism_and_round_trip() {
    namespace fs = std::filesystem;
    fs::path root = fs::temp_directory_path() / "qftdyn_acceptance";
    fs::remove_all(root);
    std::ostringstream sink;
    bool identical = true;
    for (const char *command : {"fidelity-sweep", "periodic-demo"}) {
        std::string csv[2];
        for (int run = 0; run < 2; ++run) {
            fs::path dir = root / (std::string(command) + std::to_string(run));
            std::vector<std::string> args{command, "--n", "4", "--shots", "500", "--seed", "42", "--out", dir.string()};
            if (std::string(command) == "fidelity-sweep") {
                args.insert(args.end(), {"--m", "6", "--bootstrap", "100", "--threads", run ? "1" : "0"});
            }
            if (qftdyn::tools::run_cli(args, sink, sink) != 0) {
                return {false, std::string(command) + " failed: " + sink.str()};
            }
            std::string name = std::string(command) == "fidelity-sweep" ? "fidelity_sweep.csv" : "periodic_demo.csv";
            std::ifstream in(dir / name, std::ios::binary);
            std::stringstream ss;
            ss << in.rdbuf();
            csv[run] = ss.str();
        }
        identical = identical && !csv[0].empty() && csv[0] == csv[1];
    }
    fs::remove_all(root);

    std::mt19937_64 rng(10);
    int round_trips = 0;
    for (int i = 0; i < 600; ++i) {
        testing::RandomCircuitOptions o;
        o.n_qubits = 1 + i % 5;
        o.n_clbits = i % 4;
        o.length = 5 + i % 40;
        o.metadata = i % 3 == 0;
        Circuit c = testing::random_circuit(rng, o);
        std::string text = print_text(c);
        Circuit back = parse_text(text);
        if (back == c && print_text(back) == text) {
            round_trips += 1;
        }
    }
    return {identical && round_trips == 600,
            fmt("CSV byte-identical: %s; %d/600 circuits round-trip", identical ? "yes" : "no", round_trips)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<Outcome()>>> checks{
        {"deferred-measurement equivalence", deferred_measurement_equivalence},
        {"exact vs Choi-state fidelity", exact_matches_choi},
        {"analytic anchors", analytic_anchors},
        {"estimator convergence", estimator_convergence},
        {"echo exactness", echo_exactness},
        {"DD benefit ordering", dd_benefit_ordering},
        {"periodic-state demo", periodic_demo},
        {"resource scaling", resource_scaling},
        {"plurality-vote contrast", plurality_contrast},
        {"determinism and round-trip", determinism_and_round_trip},
    };
    int failures = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        Outcome outcome;
        try {
            outcome = checks[i].second();
        } catch (const std::exception &e) {
            outcome = {false, std::string("threw: ") + e.what()};
        }
        failures += !outcome.pass;
        std::cout << "[" << (outcome.pass ? "PASS" : "FAIL") << "] " << (i + 1) << ". " << checks[i].first << ": "
                  << outcome.detail << std::endl;
    }
    std::cout << (checks.size() - failures) << "/" << checks.size() << " acceptance checks passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
