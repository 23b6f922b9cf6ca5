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


#include "app.hpp"

#include <CLI11.hpp>
#include <optional>

#include "commands.hpp"
#include "qftdyn/certify.hpp"
#include "qftdyn/text_format.hpp"
#include "qftdyn/version.hpp"
#include "report.hpp"

namespace qftdyn::tools {

namespace {

// Flags shared by the experiment subcommands; unset flags leave the config alone.
struct Overrides {
    std::string config_path;
    std::optional<std::string> variant;
    std::optional<std::string> n;
    std::optional<std::string> dd;
    std::optional<std::uint64_t> shots;
    std::optional<std::uint32_t> m;
    std::optional<std::uint64_t> seed;
    std::optional<double> p1;
    std::optional<double> p2;
    std::optional<double> ro;
    std::optional<double> sigma;
    std::optional<double> readout;
    std::optional<double> ff;
    std::optional<std::string> out;
    bool svg = false;
    bool no_mitigate = false;
    std::optional<std::uint32_t> bootstrap;
    std::optional<std::uint64_t> offset;
    std::optional<std::uint64_t> period;
    unsigned threads = 0;
};

void add_experiment_flags(CLI::App *cmd, Overrides &o, bool periodic) {
    cmd->add_option("--config", o.config_path, "JSON experiment config");
    cmd->add_option("--variant", o.variant, "unitary, dynamic or both");
    cmd->add_option("--n", o.n, periodic ? "qubit count" : "qubit counts, e.g. 2..8 or 4,6,8");
    cmd->add_option("--dd", o.dd, "DD sequence(s): auto, NONE, X2, XY4, URp, FC_DD");
    cmd->add_option("--shots", o.shots, "shots per input");
    cmd->add_option("--m", o.m, "number of sampled inputs");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--noise-p1", o.p1, "single-qubit depolarizing probability");
    cmd->add_option("--noise-p2", o.p2, "two-qubit depolarizing probability");
    cmd->add_option("--noise-ro", o.ro, "readout flip probability");
    cmd->add_option("--noise-sigma", o.sigma, "quasi-static detuning sigma (rad/ns)");
    cmd->add_option("--timing-readout", o.readout, "readout duration (ns)");
    cmd->add_option("--timing-ff", o.ff, "feed-forward latency (ns)");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_flag("--svg", o.svg, "also write an SVG chart");
    cmd->add_flag("--no-mitigate", o.no_mitigate, "skip readout mitigation");
    cmd->add_option("--bootstrap", o.bootstrap, "bootstrap resamples");
    cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    if (periodic) {
        cmd->add_option("--offset", o.offset, "first populated basis state");
        cmd->add_option("--period", o.period, "spacing of populated basis states");
    }
}

ExperimentConfig build_config(const Overrides &o, bool periodic) {
    ExperimentConfig c;
    if (!o.config_path.empty()) {
        c = load_config_file(o.config_path, c);
    }
    if (o.variant) {
        c.variant = parse_variant_list(*o.variant);
    }
    if (o.n) {
        if (periodic) {
            auto ns = parse_n_list(*o.n, "periodic.n");
            if (ns.size() != 1) {
                throw ConfigError("periodic.n", "expects a single qubit count");
            }
            c.periodic.n = ns[0];
        } else {
            c.n_range = parse_n_list(*o.n);
        }
    }
    if (o.dd) {
        c.dd = split_list(*o.dd);
    }
    if (o.shots) {
        c.shots = *o.shots;
    }
    if (o.m) {
        c.m = *o.m;
    }
    if (o.seed) {
        c.seed = *o.seed;
    }
    if (o.p1) {
        c.noise.p1 = *o.p1;
    }
    if (o.p2) {
        c.noise.p2 = *o.p2;
    }
    if (o.ro) {
        c.noise.eps_ro = *o.ro;
    }
    if (o.sigma) {
        c.noise.idle_detuning_sigma = *o.sigma;
    }
    if (o.readout) {
        try {
            c.timing.set_readout(*o.readout);
        } catch (const std::invalid_argument &e) {
            throw ConfigError("timing.t_readout", e.what());
        }
    }
    if (o.ff) {
        c.timing.t_ff = *o.ff;
    }
    if (o.out) {
        c.output = *o.out;
    }
    if (o.svg) {
        c.svg = true;
    }
    if (o.no_mitigate) {
        c.mitigate = false;
    }
    if (o.bootstrap) {
        c.bootstrap_resamples = *o.bootstrap;
    }
    if (o.offset) {
        c.periodic.offset = *o.offset;
    }
    if (o.period) {
        c.periodic.period = *o.period;
    }
    c.validate();
    return c;
}

void list_files(std::ostream &out, const std::vector<std::string> &files) {
    for (const auto &f : files) {
        out << "wrote " << f << '\n';
    }
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Dynamic-circuit QFT simulation and certification toolkit", "qftdyn"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    Overrides sweep_o, periodic_o, plurality_o, table_o;
    auto *sweep = app.add_subcommand("fidelity-sweep", "Sampled process fidelity per qubit count");
    add_experiment_flags(sweep, sweep_o, false);
    auto *periodic = app.add_subcommand("periodic-demo", "Outcome histograms for a periodic input state");
    add_experiment_flags(periodic, periodic_o, true);
    auto *plurality = app.add_subcommand("plurality", "Plurality-vote success next to process fidelity");
    add_experiment_flags(plurality, plurality_o, false);
    auto *table = app.add_subcommand("dd-table", "Process fidelity for each DD sequence");
    add_experiment_flags(table, table_o, false);

    std::string rewrite_in, rewrite_out;
    bool rewrite_verify = false;
    auto *rewrite = app.add_subcommand("rewrite", "Defer measurements of a circuit file into feed-forward");
    rewrite->add_option("input", rewrite_in, "circuit file")->required();
    rewrite->add_option("output", rewrite_out, "destination file")->required();
    rewrite->add_flag("--verify", rewrite_verify, "compare outcome distributions before and after");

    std::string emit_variant = "unitary";
    std::uint32_t emit_n = 3;
    std::string emit_dd;
    double emit_readout = -1, emit_ff = -1;
    auto *emit = app.add_subcommand("emit", "Print a QFT circuit, optionally scheduled with DD");
    emit->add_option("--variant", emit_variant, "unitary or dynamic");
    emit->add_option("--n", emit_n, "qubit count");
    emit->add_option("--dd", emit_dd, "schedule and insert this DD sequence");
    emit->add_option("--timing-readout", emit_readout, "readout duration (ns)");
    emit->add_option("--timing-ff", emit_ff, "feed-forward latency (ns)");

    std::vector<std::string> argv_storage{"qftdyn"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &a : argv_storage) {
        argv.push_back(a.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        RunContext context;
        context.log = &err;
        if (sweep->parsed()) {
            auto c = build_config(sweep_o, false);
            context.threads = sweep_o.threads;
            list_files(out, cmd_fidelity_sweep(c, context));
        } else if (periodic->parsed()) {
            auto c = build_config(periodic_o, true);
            context.threads = periodic_o.threads;
            list_files(out, cmd_periodic_demo(c, context));
        } else if (plurality->parsed()) {
            auto c = build_config(plurality_o, false);
            context.threads = plurality_o.threads;
            list_files(out, cmd_plurality(c, context));
        } else if (table->parsed()) {
            auto c = build_config(table_o, false);
            context.threads = table_o.threads;
            list_files(out, cmd_dd_table(c, context));
        } else if (rewrite->parsed()) {
            RewriteSummary s;
            try {
                s = cmd_rewrite(rewrite_in, rewrite_out, rewrite_verify);
            } catch (const ParseError &e) {
                err << rewrite_in << ": " << e.what() << '\n';
                return kExitConfigError;
            }
            out << "rewritten: " << (s.rewritten ? "yes" : "no") << '\n';
            out << "removed_two_qubit_gates: " << s.removed_two_qubit_gates << '\n';
            out << "added_mid_circuit_measurements: " << s.added_mid_circuit_measurements << '\n';
            out << "hoisted_measurements: " << s.hoisted_measurements << '\n';
            out << "unconverted_gate_indices:";
            for (auto i : s.unconverted_gate_indices) {
                out << ' ' << i;
            }
            out << '\n';
            if (s.max_deviation >= 0) {
                out << "max_deviation: " << format_number(s.max_deviation) << '\n';
            }
        } else if (emit->parsed()) {
            QftVariant variant;
            try {
                variant = parse_variant(emit_variant);
            } catch (const std::invalid_argument &e) {
                throw ConfigError("variant", e.what());
            }
            if (emit_n < 1 || emit_n > 62) {
                throw ConfigError("n", "must lie in 1..62");
            }
            Circuit c = build_qft(variant, emit_n);
            if (!emit_dd.empty()) {
                TimingModel timing;
                if (emit_readout >= 0) {
                    timing.set_readout(emit_readout);
                }
                if (emit_ff >= 0) {
                    timing.t_ff = emit_ff;
                }
                auto report = insert_dd_report(c, timing, resolve_dd(emit_dd, variant));
                for (const auto &w : report.warnings) {
                    err << "warning: " << w << '\n';
                }
                c = report.circuit;
            }
            out << print_text(c);
        }
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    return kExitOk;
}

}  // namespace qftdyn::tools
