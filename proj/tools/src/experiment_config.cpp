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


#include "experiment_config.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace qftdyn::tools {

using nlohmann::json;

namespace {

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::uint64_t parse_unsigned(const std::string &text, const std::string &field) {
    std::string t = trim(text);
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || end != t.data() + t.size()) {
        throw ConfigError(field, "expected a non-negative integer, got '" + text + "'");
    }
    return v;
}

void check_keys(const json &j, const std::string &path, const std::set<std::string> &allowed) {
    if (!j.is_object()) {
        throw ConfigError(path.empty() ? "config" : path, "expected a JSON object");
    }
    for (const auto &item : j.items()) {
        if (!allowed.contains(item.key())) {
            throw ConfigError(path.empty() ? item.key() : path + "." + item.key(), "unknown field");
        }
    }
}

double get_number(const json &j, const std::string &field) {
    if (!j.is_number()) {
        throw ConfigError(field, "expected a number");
    }
    return j.get<double>();
}

std::uint64_t get_unsigned(const json &j, const std::string &field) {
    if (j.is_number_unsigned()) {
        return j.get<std::uint64_t>();
    }
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(j.get<std::int64_t>());
    }
    throw ConfigError(field, "expected a non-negative integer");
}

std::uint32_t get_u32(const json &j, const std::string &field) {
    std::uint64_t v = get_unsigned(j, field);
    if (v > 0xFFFFFFFFull) {
        throw ConfigError(field, "value too large");
    }
    return static_cast<std::uint32_t>(v);
}

bool get_bool(const json &j, const std::string &field) {
    if (!j.is_boolean()) {
        throw ConfigError(field, "expected true or false");
    }
    return j.get<bool>();
}

std::string get_string(const json &j, const std::string &field) {
    if (!j.is_string()) {
        throw ConfigError(field, "expected a string");
    }
    return j.get<std::string>();
}

// Forwards the module's own validation message under the config field name.
template <typename F>
void rethrow_as_config(const std::string &field, F &&f) {
    try {
        f();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(field, e.what());
    }
}

}  // namespace

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        part = trim(part);
        if (!part.empty()) {
            out.push_back(part);
        }
    }
    return out;
}

std::vector<std::uint32_t> parse_n_list(const std::string &text, const std::string &field) {
    std::vector<std::uint32_t> out;
    for (const auto &part : split_list(text)) {
        auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(static_cast<std::uint32_t>(parse_unsigned(part, field)));
            continue;
        }
        auto lo = parse_unsigned(part.substr(0, dots), field);
        auto hi = parse_unsigned(part.substr(dots + 2), field);
        if (hi < lo) {
            throw ConfigError(field, "empty range '" + part + "'");
        }
        if (hi - lo > 64) {
            throw ConfigError(field, "range '" + part + "' is too long");
        }
        for (auto v = lo; v <= hi; ++v) {
            out.push_back(static_cast<std::uint32_t>(v));
        }
    }
    if (out.empty()) {
        throw ConfigError(field, "no qubit counts given");
    }
    return out;
}

std::vector<QftVariant> parse_variant_list(const std::string &text, const std::string &field) {
    std::vector<QftVariant> out;
    for (const auto &part : split_list(text)) {
        if (part == "both") {
            out.push_back(QftVariant::Unitary);
            out.push_back(QftVariant::Dynamic);
            continue;
        }
        rethrow_as_config(field, [&] { out.push_back(parse_variant(part)); });
    }
    if (out.empty()) {
        throw ConfigError(field, "no variant given");
    }
    return out;
}

DdSequence resolve_dd(const std::string &name, QftVariant variant) {
    if (name == "auto" || name == "AUTO") {
        return variant == QftVariant::Dynamic ? DdSequence::fc_dd() : DdSequence::ur(10);
    }
    DdSequence seq;
    rethrow_as_config("dd", [&] { seq = DdSequence::parse(name); });
    return seq;
}

void ExperimentConfig::validate() const {
    if (variant.empty()) {
        throw ConfigError("variant", "no variant given");
    }
    if (n_range.empty()) {
        throw ConfigError("n_range", "no qubit counts given");
    }
    for (auto n : n_range) {
        if (n < 1 || n > 24) {
            throw ConfigError("n_range", "qubit counts must lie in 1..24, got " + std::to_string(n));
        }
    }
    if (dd.empty()) {
        throw ConfigError("dd", "no sequence given");
    }
    for (const auto &name : dd) {
        resolve_dd(name, QftVariant::Unitary);
    }
    rethrow_as_config("noise", [&] { noise.validate(); });
    rethrow_as_config("timing", [&] { timing.validate(); });
    if (m < 2) {
        throw ConfigError("m", "at least two sampled inputs are needed");
    }
    if (shots < 1) {
        throw ConfigError("shots", "must be positive");
    }
    if (bootstrap_resamples < 1) {
        throw ConfigError("bootstrap_resamples", "must be positive");
    }
    if (output.empty()) {
        throw ConfigError("output", "must not be empty");
    }
    if (periodic.n < 1 || periodic.n > 14) {
        throw ConfigError("periodic.n", "must lie in 1..14");
    }
    if (!std::has_single_bit(periodic.period) || periodic.period > (std::uint64_t{1} << periodic.n)) {
        throw ConfigError("periodic.period", "must be a power of two no larger than 2^n");
    }
    if (periodic.offset >= periodic.period) {
        throw ConfigError("periodic.offset", "must be below the period");
    }
}

ExperimentConfig config_from_json(const json &j, ExperimentConfig c) {
    check_keys(j, "", {"variant", "n_range", "dd", "noise", "timing", "m", "shots", "seed", "mitigate",
                       "bootstrap_resamples", "output", "svg", "periodic"});
    if (j.contains("variant")) {
        const auto &v = j["variant"];
        if (v.is_string()) {
            c.variant = parse_variant_list(v.get<std::string>());
        } else if (v.is_array()) {
            c.variant.clear();
            for (const auto &e : v) {
                auto parsed = parse_variant_list(get_string(e, "variant"));
                c.variant.insert(c.variant.end(), parsed.begin(), parsed.end());
            }
        } else {
            throw ConfigError("variant", "expected a string or a list of strings");
        }
    }
    if (j.contains("n_range")) {
        const auto &v = j["n_range"];
        if (v.is_string()) {
            c.n_range = parse_n_list(v.get<std::string>());
        } else if (v.is_array()) {
            c.n_range.clear();
            for (const auto &e : v) {
                c.n_range.push_back(get_u32(e, "n_range"));
            }
        } else if (v.is_number()) {
            c.n_range = {get_u32(v, "n_range")};
        } else {
            throw ConfigError("n_range", "expected a list of integers or a range string like \"2..8\"");
        }
    }
    if (j.contains("dd")) {
        const auto &v = j["dd"];
        if (v.is_string()) {
            c.dd = split_list(v.get<std::string>());
        } else if (v.is_array()) {
            c.dd.clear();
            for (const auto &e : v) {
                c.dd.push_back(get_string(e, "dd"));
            }
        } else {
            throw ConfigError("dd", "expected a string or a list of strings");
        }
    }
    if (j.contains("noise")) {
        const auto &v = j["noise"];
        check_keys(v, "noise", {"p1", "p2", "eps_ro", "idle_detuning_sigma", "dephasing_rate",
                                "pulse_over_rotation", "apply_idle_during_feedforward"});
        auto num = [&](const char *key, double &dst) {
            if (v.contains(key)) {
                dst = get_number(v[key], std::string("noise.") + key);
            }
        };
        num("p1", c.noise.p1);
        num("p2", c.noise.p2);
        num("eps_ro", c.noise.eps_ro);
        num("idle_detuning_sigma", c.noise.idle_detuning_sigma);
        num("dephasing_rate", c.noise.dephasing_rate);
        num("pulse_over_rotation", c.noise.pulse_over_rotation);
        if (v.contains("apply_idle_during_feedforward")) {
            c.noise.apply_idle_during_feedforward =
                get_bool(v["apply_idle_during_feedforward"], "noise.apply_idle_during_feedforward");
        }
    }
    if (j.contains("timing")) {
        const auto &v = j["timing"];
        check_keys(v, "timing",
                   {"t_1q_gate", "t_cphase", "t_measure_pulse", "t_post_measure_delay", "t_readout", "t_ff"});
        auto num = [&](const char *key, double &dst) {
            if (v.contains(key)) {
                dst = get_number(v[key], std::string("timing.") + key);
            }
        };
        num("t_1q_gate", c.timing.t_1q_gate);
        num("t_cphase", c.timing.t_cphase);
        num("t_measure_pulse", c.timing.t_measure_pulse);
        num("t_post_measure_delay", c.timing.t_post_measure_delay);
        num("t_ff", c.timing.t_ff);
        if (v.contains("t_readout")) {
            double total = get_number(v["t_readout"], "timing.t_readout");
            rethrow_as_config("timing.t_readout", [&] { c.timing.set_readout(total); });
        }
    }
    if (j.contains("m")) {
        c.m = get_u32(j["m"], "m");
    }
    if (j.contains("shots")) {
        c.shots = get_unsigned(j["shots"], "shots");
    }
    if (j.contains("seed")) {
        c.seed = get_unsigned(j["seed"], "seed");
    }
    if (j.contains("mitigate")) {
        c.mitigate = get_bool(j["mitigate"], "mitigate");
    }
    if (j.contains("bootstrap_resamples")) {
        c.bootstrap_resamples = get_u32(j["bootstrap_resamples"], "bootstrap_resamples");
    }
    if (j.contains("output")) {
        c.output = get_string(j["output"], "output");
    }
    if (j.contains("svg")) {
        c.svg = get_bool(j["svg"], "svg");
    }
    if (j.contains("periodic")) {
        const auto &v = j["periodic"];
        check_keys(v, "periodic", {"n", "offset", "period"});
        if (v.contains("n")) {
            c.periodic.n = get_u32(v["n"], "periodic.n");
        }
        if (v.contains("offset")) {
            c.periodic.offset = get_unsigned(v["offset"], "periodic.offset");
        }
        if (v.contains("period")) {
            c.periodic.period = get_unsigned(v["period"], "periodic.period");
        }
    }
    return c;
}

ExperimentConfig load_config_file(const std::string &path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config", "cannot open '" + path + "'");
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError("config", "'" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j, std::move(base));
}

json config_to_json(const ExperimentConfig &c) {
    json j;
    j["variant"] = json::array();
    for (auto v : c.variant) {
        j["variant"].push_back(std::string(variant_name(v)));
    }
    j["n_range"] = c.n_range;
    j["dd"] = c.dd;
    j["noise"] = {
        {"p1", c.noise.p1},
        {"p2", c.noise.p2},
        {"eps_ro", c.noise.eps_ro},
        {"idle_detuning_sigma", c.noise.idle_detuning_sigma},
        {"dephasing_rate", c.noise.dephasing_rate},
        {"pulse_over_rotation", c.noise.pulse_over_rotation},
        {"apply_idle_during_feedforward", c.noise.apply_idle_during_feedforward},
    };
    j["timing"] = {
        {"t_1q_gate", c.timing.t_1q_gate},
        {"t_cphase", c.timing.t_cphase},
        {"t_measure_pulse", c.timing.t_measure_pulse},
        {"t_post_measure_delay", c.timing.t_post_measure_delay},
        {"t_ff", c.timing.t_ff},
    };
    j["m"] = c.m;
    j["shots"] = c.shots;
    j["seed"] = c.seed;
    j["mitigate"] = c.mitigate;
    j["bootstrap_resamples"] = c.bootstrap_resamples;
    j["output"] = c.output;
    j["svg"] = c.svg;
    j["periodic"] = {{"n", c.periodic.n}, {"offset", c.periodic.offset}, {"period", c.periodic.period}};
    return j;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string config_hash(const ExperimentConfig &config) {
    // Where results go does not change what they are.
    json j = config_to_json(config);
    j.erase("output");
    j.erase("svg");
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(j.dump())));
    return buf;
}

}  // namespace qftdyn::tools
