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


#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "qftdyn/certify.hpp"
#include "qftdyn/rewriter.hpp"
#include "qftdyn/text_format.hpp"
#include "qftdyn/version.hpp"
#include "report.hpp"

namespace qftdyn::tools {

using nlohmann::json;

namespace {

std::string join_path(const std::string &dir, const std::string &name) {
    return (std::filesystem::path(dir) / name).string();
}

void progress(const RunContext &context, const std::string &message) {
    if (context.log != nullptr) {
        *context.log << message << '\n';
    }
}

SamplingOptions sampling_options(const ExperimentConfig &config, const RunContext &context) {
    SamplingOptions o;
    o.m = config.m;
    o.shots = config.shots;
    o.seed = config.seed;
    o.mitigate = config.mitigate;
    o.bootstrap_resamples = config.bootstrap_resamples;
    o.threads = context.threads;
    return o;
}

// Distinct inputs run out when m exceeds 2^n.
SamplingOptions with_replacement_if_needed(SamplingOptions o, std::uint32_t n) {
    o.with_replacement = o.m > (std::uint64_t{1} << n);
    return o;
}

json provenance(const ExperimentConfig &config) {
    return {{"version", std::string(version())}, {"config_hash", config_hash(config)},
            {"config", config_to_json(config)}};
}

struct Point {
    std::uint32_t n;
    QftVariant variant;
    DdSequence dd;
};

// Rows in the order n, variant, dd as configured.
std::vector<Point> sweep_points(const ExperimentConfig &config) {
    std::vector<Point> points;
    for (auto n : config.n_range) {
        for (auto variant : config.variant) {
            for (const auto &name : config.dd) {
                points.push_back({n, variant, resolve_dd(name, variant)});
            }
        }
    }
    return points;
}

std::string series_key(QftVariant variant, const DdSequence &dd) {
    return std::string(variant_name(variant)) + " " + dd.name();
}

std::vector<ChartSeries> chart_series(const std::vector<Point> &points, const std::vector<FidelityEstimate> &rows) {
    std::vector<ChartSeries> series;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto key = series_key(points[i].variant, points[i].dd);
        auto [it, inserted] = index.emplace(key, series.size());
        if (inserted) {
            series.push_back({key, {}, {}, {}, {}});
        }
        auto &s = series[it->second];
        s.x.push_back(points[i].n);
        s.y.push_back(rows[i].bias_corrected);
        s.low.push_back(rows[i].ci_low);
        s.high.push_back(rows[i].ci_high);
    }
    return series;
}

}  // namespace

std::vector<std::string> cmd_fidelity_sweep(const ExperimentConfig &config, const RunContext &context) {
    config.validate();
    const auto points = sweep_points(config);
    const auto options = sampling_options(config, context);
    std::vector<FidelityEstimate> rows;
    for (const auto &p : points) {
        progress(context, "fidelity-sweep n=" + std::to_string(p.n) + " " + series_key(p.variant, p.dd));
        auto channel = make_qft_channel(p.variant, p.n, p.dd, config.noise, config.timing);
        rows.push_back(sampled_process_fidelity(channel, with_replacement_if_needed(options, p.n)));
    }

    std::ostringstream csv;
    csv << provenance_header(config);
    csv << "n,variant,dd,m,shots,point,bias_corrected,ci_low,ci_high,std_error\n";
    json sidecar = provenance(config);
    sidecar["rows"] = json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto &p = points[i];
        const auto &r = rows[i];
        csv << p.n << ',' << variant_name(p.variant) << ',' << p.dd.name() << ',' << r.m << ','
            << r.shots_per_bitstring << ',' << format_number(r.point) << ',' << format_number(r.bias_corrected)
            << ',' << format_number(r.ci_low) << ',' << format_number(r.ci_high) << ','
            << format_number(r.std_error) << '\n';
        sidecar["rows"].push_back({{"n", p.n},
                                   {"variant", std::string(variant_name(p.variant))},
                                   {"dd", p.dd.name()},
                                   {"m", r.m},
                                   {"shots", r.shots_per_bitstring},
                                   {"point", r.point},
                                   {"bias_corrected", r.bias_corrected},
                                   {"ci_low", r.ci_low},
                                   {"ci_high", r.ci_high},
                                   {"std_error", r.std_error},
                                   {"inputs", r.inputs},
                                   {"seed", config.seed}});
    }

    std::vector<std::string> written;
    written.push_back(join_path(config.output, "fidelity_sweep.csv"));
    write_file(written.back(), csv.str());
    written.push_back(join_path(config.output, "fidelity_sweep.json"));
    write_file(written.back(), sidecar.dump(2) + "\n");
    if (config.svg) {
        written.push_back(join_path(config.output, "fidelity_sweep.svg"));
        write_file(written.back(), svg_line_chart("QFT+M process fidelity", "qubits", "process fidelity",
                                                  chart_series(points, rows)));
    }
    return written;
}

std::vector<std::string> cmd_periodic_demo(const ExperimentConfig &config, const RunContext &context) {
    config.validate();
    const auto &pc = config.periodic;
    const std::uint32_t n = pc.n;
    const std::uint64_t outcomes = std::uint64_t{1} << n;
    Circuit prep = build_periodic_state_prep(n, pc.offset, pc.period);

    progress(context, "periodic-demo ideal");
    OutcomeDistribution ideal = run_exact(build_unitary_qft(n), StateVector::prepared(prep));

    struct Noisy {
        QftVariant variant;
        DdSequence dd;
        OutcomeDistribution distribution;
        double tvd = 0.0;
    };
    std::vector<Noisy> noisy;
    for (auto variant : {QftVariant::Unitary, QftVariant::Dynamic}) {
        DdSequence dd = resolve_dd(config.dd.front(), variant);
        progress(context, "periodic-demo " + series_key(variant, dd));
        auto channel = make_qft_channel(variant, n, dd, config.noise, config.timing);
        auto records = run_trajectories(channel.circuit, prep, channel.noise, channel.timing, config.shots,
                                        config.seed, context.threads);
        auto dist = OutcomeDistribution::from_records(records, n);
        if (config.mitigate && config.noise.eps_ro > 0) {
            dist = mitigate_readout(dist, ConfusionModel::symmetric(n, config.noise.eps_ro));
        }
        double tvd = total_variation_distance(ideal, dist);
        noisy.push_back({variant, dd, std::move(dist), tvd});
    }

    std::ostringstream csv;
    csv << provenance_header(config);
    csv << "# tvd_unitary " << format_number(noisy[0].tvd) << "\n# tvd_dynamic " << format_number(noisy[1].tvd)
        << '\n';
    csv << "outcome,bitstring,ideal,unitary,dynamic\n";
    std::vector<ChartSeries> series{{"ideal", {}, {}, {}, {}},
                                    {series_key(noisy[0].variant, noisy[0].dd), {}, {}, {}, {}},
                                    {series_key(noisy[1].variant, noisy[1].dd), {}, {}, {}, {}}};
    for (std::uint64_t k = 0; k < outcomes; ++k) {
        double pi = ideal.probability(k);
        double pu = noisy[0].distribution.probability(k);
        double pd = noisy[1].distribution.probability(k);
        csv << k << ',' << bitstring(k, n) << ',' << format_number(pi) << ',' << format_number(pu) << ','
            << format_number(pd) << '\n';
        series[0].y.push_back(pi);
        series[1].y.push_back(pu);
        series[2].y.push_back(pd);
    }

    json sidecar = provenance(config);
    sidecar["n"] = n;
    sidecar["offset"] = pc.offset;
    sidecar["period"] = pc.period;
    sidecar["shots"] = config.shots;
    sidecar["seed"] = config.seed;
    sidecar["tvd"] = {{"unitary", noisy[0].tvd}, {"dynamic", noisy[1].tvd}};
    sidecar["dd"] = {{"unitary", noisy[0].dd.name()}, {"dynamic", noisy[1].dd.name()}};
    json peaks = json::array();
    for (const auto &[k, p] : ideal.values) {
        if (p > 1e-12) {
            peaks.push_back({{"outcome", k}, {"probability", p}});
        }
    }
    sidecar["ideal_peaks"] = peaks;

    std::vector<std::string> written;
    written.push_back(join_path(config.output, "periodic_demo.csv"));
    write_file(written.back(), csv.str());
    written.push_back(join_path(config.output, "periodic_demo.json"));
    write_file(written.back(), sidecar.dump(2) + "\n");
    if (config.svg) {
        written.push_back(join_path(config.output, "periodic_demo.svg"));
        write_file(written.back(), svg_histogram("QFT of a periodic state", "outcome", series));
    }
    return written;
}

std::vector<std::string> cmd_plurality(const ExperimentConfig &config, const RunContext &context) {
    config.validate();
    const auto points = sweep_points(config);
    std::ostringstream csv;
    csv << provenance_header(config);
    csv << "n,variant,dd,m,shots,plurality_success,point,bias_corrected\n";
    json sidecar = provenance(config);
    sidecar["rows"] = json::array();
    for (const auto &p : points) {
        progress(context, "plurality n=" + std::to_string(p.n) + " " + series_key(p.variant, p.dd));
        auto channel = make_qft_channel(p.variant, p.n, p.dd, config.noise, config.timing);
        const bool replace = config.m > (std::uint64_t{1} << p.n);
        auto inputs = sample_inputs(p.n, config.m, config.seed, replace);
        auto groups = run_channel_groups(channel, inputs, config.shots, config.seed, context.threads);
        double success = plurality_vote_success(groups);
        std::optional<ConfusionModel> confusion;
        if (config.mitigate) {
            confusion = ConfusionModel::symmetric(p.n, config.noise.eps_ro);
        }
        auto est = estimate_from_groups(groups, p.n, confusion ? &*confusion : nullptr, config.bootstrap_resamples,
                                        config.seed);
        csv << p.n << ',' << variant_name(p.variant) << ',' << p.dd.name() << ',' << config.m << ','
            << config.shots << ',' << format_number(success) << ',' << format_number(est.point) << ','
            << format_number(est.bias_corrected) << '\n';
        sidecar["rows"].push_back({{"n", p.n},
                                   {"variant", std::string(variant_name(p.variant))},
                                   {"dd", p.dd.name()},
                                   {"m", config.m},
                                   {"shots", config.shots},
                                   {"plurality_success", success},
                                   {"point", est.point},
                                   {"bias_corrected", est.bias_corrected},
                                   {"ci_low", est.ci_low},
                                   {"ci_high", est.ci_high},
                                   {"seed", config.seed}});
    }
    std::vector<std::string> written;
    written.push_back(join_path(config.output, "plurality.csv"));
    write_file(written.back(), csv.str());
    written.push_back(join_path(config.output, "plurality.json"));
    write_file(written.back(), sidecar.dump(2) + "\n");
    return written;
}

std::vector<std::string> cmd_dd_table(const ExperimentConfig &config, const RunContext &context) {
    config.validate();
    // The default table compares every sequence family.
    std::vector<std::string> names = config.dd;
    if (names.size() == 1 && (names[0] == "auto" || names[0] == "AUTO")) {
        names = {"NONE", "X2", "XY4", "UR4", "UR6", "UR8", "UR10", "FC_DD"};
    }
    const auto options = sampling_options(config, context);
    std::ostringstream csv;
    csv << provenance_header(config);
    csv << "n,variant,dd,pulses,fallbacks,warnings,point,bias_corrected,ci_low,ci_high\n";
    json sidecar = provenance(config);
    sidecar["rows"] = json::array();
    for (auto n : config.n_range) {
        for (auto variant : config.variant) {
            Circuit circuit = build_qft(variant, n);
            for (const auto &name : names) {
                DdSequence dd = resolve_dd(name, variant);
                progress(context, "dd-table n=" + std::to_string(n) + " " + series_key(variant, dd));
                auto report = insert_dd_report(circuit, config.timing, dd);
                std::size_t fallbacks = 0;
                for (const auto &[key, count] : report.fallbacks) {
                    fallbacks += count;
                }
                std::vector<DdSequence> one{dd};
                auto row = dd_effectiveness(circuit, config.timing, config.noise, one,
                                            with_replacement_if_needed(options, n))
                               .front();
                const auto &e = row.estimate;
                csv << n << ',' << variant_name(variant) << ',' << dd.name() << ',' << report.pulses.size() << ','
                    << fallbacks << ',' << report.warnings.size() << ',' << format_number(e.point) << ','
                    << format_number(e.bias_corrected) << ',' << format_number(e.ci_low) << ','
                    << format_number(e.ci_high) << '\n';
                sidecar["rows"].push_back({{"n", n},
                                           {"variant", std::string(variant_name(variant))},
                                           {"dd", dd.name()},
                                           {"pulses", report.pulses.size()},
                                           {"fallbacks", report.fallbacks},
                                           {"warnings", report.warnings},
                                           {"m", e.m},
                                           {"shots", e.shots_per_bitstring},
                                           {"point", e.point},
                                           {"bias_corrected", e.bias_corrected},
                                           {"ci_low", e.ci_low},
                                           {"ci_high", e.ci_high},
                                           {"seed", config.seed}});
            }
        }
    }
    std::vector<std::string> written;
    written.push_back(join_path(config.output, "dd_table.csv"));
    write_file(written.back(), csv.str());
    written.push_back(join_path(config.output, "dd_table.json"));
    write_file(written.back(), sidecar.dump(2) + "\n");
    return written;
}

RewriteSummary cmd_rewrite(const std::string &input_path, const std::string &output_path, bool verify) {
    std::ifstream in(input_path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + input_path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    Circuit circuit = parse_text(buffer.str());
    auto report = defer_measurement_rewrite(circuit);
    RewriteSummary summary;
    summary.rewritten = report.hoisted_measurements > 0;
    summary.hoisted_measurements = report.hoisted_measurements;
    summary.removed_two_qubit_gates = report.removed_two_qubit_gates;
    summary.added_mid_circuit_measurements = report.added_mid_circuit_measurements;
    summary.unconverted_gate_indices = report.unconverted_gate_indices;
    if (verify) {
        summary.max_deviation = verify_equivalence(circuit, report.rewritten);
    }
    write_file(output_path, print_text(report.rewritten));
    return summary;
}

}  // namespace qftdyn::tools
