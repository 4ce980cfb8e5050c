/*
   Copyright 2026 The isacbounds Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "isac/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace isac {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
    throw ConfigError("config key '" + key + "': " + what);
}

void reject_unknown(const json& obj, const std::string& prefix, const std::set<std::string>& allowed) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) fail(prefix + key, "unknown key");
    }
}

const json& require_object(const json& obj, const std::string& key) {
    if (!obj.is_object()) fail(key, "must be an object");
    return obj;
}

double get_number(const json& obj, const std::string& key, const std::string& path, double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(path, "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "must be finite");
    return x;
}

int get_int(const json& obj, const std::string& key, const std::string& path, int fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) fail(path, "must be an integer");
    return v.get<int>();
}

std::vector<double> get_number_list(const json& obj, const std::string& key, std::vector<double> fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_array() || v.empty()) fail(key, "must be a nonempty array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) fail(key + "[" + std::to_string(i) + "]", "must be a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

struct GridSpec {
    double start;
    double stop;
    double step;
};

std::vector<double> get_grid(const json& obj, const std::string& key, GridSpec fallback) {
    if (obj.contains(key)) {
        const auto& g = require_object(obj.at(key), key);
        reject_unknown(g, key + ".", {"start", "stop", "step"});
        fallback.start = get_number(g, "start", key + ".start", fallback.start);
        fallback.stop = get_number(g, "stop", key + ".stop", fallback.stop);
        fallback.step = get_number(g, "step", key + ".step", fallback.step);
    }
    if (!(fallback.step > 0.0)) fail(key + ".step", "must be > 0");
    if (fallback.stop < fallback.start) fail(key + ".stop", "must be >= start");
    return linear_grid(fallback.start, fallback.stop, fallback.step);
}

// Degree conversions and grid steps pick up last-bit noise; 12 significant
// digits recover the values a user would have typed.
double tidy(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

json grid_to_json(const std::vector<double>& g) {
    const double step = g.size() > 1 ? g[1] - g[0] : 1.0;
    return json{{"start", tidy(g.front())}, {"stop", tidy(g.back())}, {"step", tidy(step)}};
}

bool is_uniform(const std::vector<double>& g) {
    if (g.size() < 3) return true;
    const double step = g[1] - g[0];
    for (std::size_t i = 2; i < g.size(); ++i) {
        if (std::abs((g[i] - g[i - 1]) - step) > 1e-9 * std::max(1.0, std::abs(step))) return false;
    }
    return true;
}

}  // namespace

ExperimentConfig default_config() {
    ExperimentConfig cfg;
    Scenario& s = cfg.scenario;
    s.m_tx = 8;
    s.m_rx = 8;
    s.snapshots = 100;
    s.noise_var_sense = 1.0;
    s.noise_var_comm = 1.0;
    s.power_budget = 1.0;
    s.prior_range = deg_to_rad(60.0);
    s.theta_c = deg_to_rad(45.0);
    s.targets = {Target{Complex(1.0, 0.0), deg_to_rad(5.0), deg_to_rad(15.0)}};
    cfg.snr_grid_db = linear_grid(-40.0, 10.0, 2.0);
    cfg.alpha_grid = linear_grid(0.0, 1.0, 0.02);
    cfg.n_trials = 500;
    cfg.master_seed = 1;
    cfg.min_separation = 2.0 / s.m_rx;
    cfg.comm_snr_db = 20.0;
    return cfg;
}

ExperimentConfig config_from_json(const json& input) {
    const json* docp = &input;
    if (input.is_object() && input.contains("config") && input.contains("tool_version")) docp = &input.at("config");
    const json& doc = *docp;
    if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
    reject_unknown(doc, "",
                   {"m_tx", "m_rx", "snapshots", "n_trials", "master_seed", "prior_range_deg", "min_separation",
                    "noise_var_sense", "noise_var_comm", "power_budget", "targets", "comm", "snr_grid_db",
                    "alpha_grid", "sensing_snr_db", "pareto"});

    ExperimentConfig cfg = default_config();
    Scenario& s = cfg.scenario;
    s.m_tx = get_int(doc, "m_tx", "m_tx", s.m_tx);
    if (s.m_tx < 1) fail("m_tx", "m_tx >= 1");
    s.m_rx = get_int(doc, "m_rx", "m_rx", s.m_rx);
    if (s.m_rx < 2) fail("m_rx", "m_rx >= 2");
    s.snapshots = get_int(doc, "snapshots", "snapshots", s.snapshots);
    if (s.snapshots < 1) fail("snapshots", "snapshots >= 1");
    cfg.n_trials = get_int(doc, "n_trials", "n_trials", cfg.n_trials);
    if (cfg.n_trials < 1) fail("n_trials", "n_trials >= 1");
    if (doc.contains("master_seed")) {
        const auto& v = doc.at("master_seed");
        if (!v.is_number_unsigned()) fail("master_seed", "must be a nonnegative integer");
        cfg.master_seed = v.get<std::uint64_t>();
    }

    const double zeta_deg = get_number(doc, "prior_range_deg", "prior_range_deg", rad_to_deg(s.prior_range));
    if (!(zeta_deg > 0.0 && zeta_deg <= 180.0)) fail("prior_range_deg", "must lie in (0, 180]");
    s.prior_range = deg_to_rad(zeta_deg);

    cfg.min_separation = get_number(doc, "min_separation", "min_separation", 2.0 / s.m_rx);
    if (!(cfg.min_separation >= 0.0)) fail("min_separation", "must be >= 0");

    s.noise_var_sense = get_number(doc, "noise_var_sense", "noise_var_sense", s.noise_var_sense);
    if (!(s.noise_var_sense > 0.0)) fail("noise_var_sense", "must be > 0");
    s.noise_var_comm = get_number(doc, "noise_var_comm", "noise_var_comm", s.noise_var_comm);
    if (!(s.noise_var_comm > 0.0)) fail("noise_var_comm", "must be > 0");
    s.power_budget = get_number(doc, "power_budget", "power_budget", s.power_budget);
    if (!(s.power_budget > 0.0)) fail("power_budget", "must be > 0");

    if (doc.contains("targets")) {
        const auto& arr = doc.at("targets");
        if (!arr.is_array() || arr.empty()) fail("targets", "must be a nonempty array");
        s.targets.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string p = "targets[" + std::to_string(i) + "]";
            const auto& t = require_object(arr[i], p);
            reject_unknown(t, p + ".", {"theta_s_deg", "theta_r_deg", "gamma_abs", "gamma_phase_deg"});
            const double ts = get_number(t, "theta_s_deg", p + ".theta_s_deg", 0.0);
            const double tr = get_number(t, "theta_r_deg", p + ".theta_r_deg", 0.0);
            const double ga = get_number(t, "gamma_abs", p + ".gamma_abs", 1.0);
            const double gp = get_number(t, "gamma_phase_deg", p + ".gamma_phase_deg", 0.0);
            if (!(std::abs(ts) < 90.0)) fail(p + ".theta_s_deg", "must lie in (-90, 90)");
            if (!(std::abs(tr) < 90.0)) fail(p + ".theta_r_deg", "must lie in (-90, 90)");
            if (std::abs(tr) > 0.5 * zeta_deg) {
                fail(p + ".theta_r_deg", "must lie inside the prior [-prior_range_deg/2, prior_range_deg/2]");
            }
            if (!(ga > 0.0)) fail(p + ".gamma_abs", "must be > 0");
            s.targets.push_back(Target{std::polar(ga, deg_to_rad(gp)), deg_to_rad(ts), deg_to_rad(tr)});
        }
    }

    if (doc.contains("comm")) {
        const auto& c = require_object(doc.at("comm"), "comm");
        reject_unknown(c, "comm.", {"theta_c_deg", "snr_db"});
        const double tc = get_number(c, "theta_c_deg", "comm.theta_c_deg", rad_to_deg(s.theta_c));
        if (!(std::abs(tc) < 90.0)) fail("comm.theta_c_deg", "must lie in (-90, 90)");
        s.theta_c = deg_to_rad(tc);
        cfg.comm_snr_db = get_number(c, "snr_db", "comm.snr_db", cfg.comm_snr_db);
    }

    cfg.snr_grid_db = get_grid(doc, "snr_grid_db", {-40.0, 10.0, 2.0});
    cfg.alpha_grid = get_grid(doc, "alpha_grid", {0.0, 1.0, 0.02});
    for (double a : cfg.alpha_grid) {
        if (a < 0.0 || a > 1.0 + 1e-12) fail("alpha_grid", "values must lie in [0, 1]");
    }
    for (auto& a : cfg.alpha_grid) a = std::min(a, 1.0);

    cfg.sensing_snr_db_list = get_number_list(doc, "sensing_snr_db", cfg.sensing_snr_db_list);
    if (doc.contains("pareto")) {
        const auto& p = require_object(doc.at("pareto"), "pareto");
        reject_unknown(p, "pareto.", {"sensing_snr_db", "comm_snr_db"});
        cfg.pareto_sensing_snr_db = get_number(p, "sensing_snr_db", "pareto.sensing_snr_db", cfg.pareto_sensing_snr_db);
        if (p.contains("comm_snr_db")) {
            cfg.pareto_comm_snr_db_list = get_number_list(p, "comm_snr_db", cfg.pareto_comm_snr_db_list);
        }
    }

    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return config_from_json(doc);
}

json config_to_json(const ExperimentConfig& cfg) {
    const Scenario& s = cfg.scenario;
    json targets = json::array();
    for (const auto& t : s.targets) {
        targets.push_back({{"theta_s_deg", tidy(rad_to_deg(t.theta_s))},
                           {"theta_r_deg", tidy(rad_to_deg(t.theta_r))},
                           {"gamma_abs", tidy(std::abs(t.gamma))},
                           {"gamma_phase_deg", tidy(rad_to_deg(std::arg(t.gamma)))}});
    }
    json doc{{"m_tx", s.m_tx},
             {"m_rx", s.m_rx},
             {"snapshots", s.snapshots},
             {"n_trials", cfg.n_trials},
             {"master_seed", cfg.master_seed},
             {"prior_range_deg", tidy(rad_to_deg(s.prior_range))},
             {"min_separation", cfg.min_separation},
             {"noise_var_sense", s.noise_var_sense},
             {"noise_var_comm", s.noise_var_comm},
             {"power_budget", s.power_budget},
             {"targets", targets},
             {"comm", {{"theta_c_deg", tidy(rad_to_deg(s.theta_c))}, {"snr_db", cfg.comm_snr_db}}},
             {"sensing_snr_db", cfg.sensing_snr_db_list},
             {"pareto", {{"sensing_snr_db", cfg.pareto_sensing_snr_db}, {"comm_snr_db", cfg.pareto_comm_snr_db_list}}}};
    if (!is_uniform(cfg.snr_grid_db)) throw ConfigError("snr_grid_db is not uniform and cannot be echoed");
    if (!is_uniform(cfg.alpha_grid)) throw ConfigError("alpha_grid is not uniform and cannot be echoed");
    doc["snr_grid_db"] = grid_to_json(cfg.snr_grid_db);
    doc["alpha_grid"] = grid_to_json(cfg.alpha_grid);
    return doc;
}

}  // namespace isac
