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

#include "isac/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "isac/bounds.hpp"
#include "isac/comm_rate.hpp"
#include "isac/config.hpp"
#include "isac/errors.hpp"
#include "isac/experiments.hpp"
#include "isac/output.hpp"

namespace isac {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonFlags {
    std::string config;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    unsigned workers = 0;
    std::string format = "csv";
    bool svg = false;
};

struct SubFlags {
    std::vector<double> sensing_snr_db;
    std::vector<double> comm_snr_db;
    std::optional<double> snr_db;
    std::optional<double> alpha;
    std::size_t samples = 100000;
    bool samples_set = false;
};

std::string fmt9(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string db_label(double db) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", db);
    return buf;
}

// Manifests carry subcommand flags under "parameters"; plain configs do not.
json replay_parameters(const std::string& path) {
    std::ifstream in(path);
    const json doc = json::parse(in, nullptr, false);
    if (doc.is_object() && doc.contains("parameters") && doc.contains("tool_version") && doc.at("parameters").is_object())
        return doc.at("parameters");
    return json::object();
}

class Session {
public:
    Session(std::string subcommand, const CommonFlags& flags, std::ostream& out)
        : flags_(flags), out_(out), start_(std::chrono::steady_clock::now()) {
        manifest_.subcommand = std::move(subcommand);
        manifest_.tool_version = kToolVersion;
        if (!flags.config.empty()) {
            cfg_ = load_config(flags.config);
            replay_ = replay_parameters(flags.config);
        } else {
            cfg_ = default_config();
        }
        if (flags.seed) cfg_.master_seed = *flags.seed;
        if (flags.trials) {
            if (*flags.trials < 1) throw ConfigError("flag '--trials': must be >= 1");
            cfg_.n_trials = *flags.trials;
        }
        cfg_.workers = flags.workers > 0 ? flags.workers : std::max(1U, std::thread::hardware_concurrency());
    }

    ExperimentConfig& config() { return cfg_; }
    [[nodiscard]] TableFormat format() const { return flags_.format == "json" ? TableFormat::json : TableFormat::csv; }
    [[nodiscard]] bool svg() const { return flags_.svg; }
    [[nodiscard]] const char* extension() const { return flags_.format == "json" ? ".json" : ".csv"; }

    void table(const std::string& stem, const std::vector<SweepRow>& rows) {
        const std::string name = stem + extension();
        write_table(rows, format(), path(name));
        std::vector<int> excluded;
        for (const auto& r : rows) excluded.push_back(r.n_excluded);
        manifest_.excluded.emplace_back(name, std::move(excluded));
        record(name);
    }

    void file(const std::string& name, const std::string& contents) {
        atomic_write(path(name), contents);
        record(name);
    }

    void parameter(const std::string& key, json value) { parameters_[key] = std::move(value); }

    /// Value recorded in a replayed manifest, if any.
    template <class T>
    std::optional<T> replayed(const std::string& key) const {
        if (!replay_.contains(key)) return std::nullopt;
        try {
            return replay_.at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError("manifest key 'parameters." + key + "': wrong type");
        }
    }

    void finish() {
        manifest_.master_seed = cfg_.master_seed;
        manifest_.config = config_to_json(cfg_);
        manifest_.parameters = parameters_;
        manifest_.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        const std::string name = manifest_.subcommand + "_manifest.json";
        write_manifest(manifest_, path(name));
        out_ << "wrote " << path(name).string() << "\n";
    }

private:
    fs::path path(const std::string& name) const { return fs::path(flags_.out_dir) / name; }

    void record(const std::string& name) {
        manifest_.outputs.push_back(name);
        out_ << "wrote " << path(name).string() << "\n";
    }

    CommonFlags flags_;
    std::ostream& out_;
    std::chrono::steady_clock::time_point start_;
    ExperimentConfig cfg_;
    RunManifest manifest_;
    json parameters_ = json::object();
    json replay_ = json::object();
};

void bounds_sweep(Session& session) {
    const auto rows = bound_vs_snr_sweep(session.config());
    session.table("bounds_vs_snr", rows);
    if (session.svg() && rows.size() >= 2) {
        PlotAxes axes{"Bounds vs sensing SNR", "sensing SNR (dB)", "RMSE (deg)", true};
        const auto series = bound_series(rows);
        session.file("bounds_vs_snr.svg", render_svg(series, axes));
    }
}

void alpha_sweep_cmd(Session& session, const SubFlags& sub) {
    ExperimentConfig& cfg = session.config();
    if (!sub.sensing_snr_db.empty()) cfg.sensing_snr_db_list = sub.sensing_snr_db;
    if (!sub.comm_snr_db.empty()) {
        if (sub.comm_snr_db.size() != 1) throw ConfigError("flag '--comm-snr-db': alpha-sweep takes one value");
        cfg.comm_snr_db = sub.comm_snr_db.front();
    }
    const auto all = alpha_sweep(cfg, cfg.comm_snr_db, cfg.sensing_snr_db_list);
    std::vector<PlotSeries> plot;
    for (const auto& s : all) {
        session.table("alpha_sweep_sensing_" + db_label(s.sensing_snr_db) + "dB", s.rows);
        PlotSeries ps{"ZZB " + db_label(s.sensing_snr_db) + " dB", {}};
        for (const auto& r : s.rows) ps.points.emplace_back(r.x, r.zzb_rmse_deg);
        plot.push_back(std::move(ps));
    }
    if (session.svg() && cfg.alpha_grid.size() >= 2) {
        PlotAxes axes{"ZZB vs alpha, comm SNR " + db_label(cfg.comm_snr_db) + " dB", "alpha", "RMSE (deg)", true};
        session.file("alpha_sweep.svg", render_svg(plot, axes));
    }
}

std::vector<SweepRow> tradeoff_rows(std::span<const TradeoffPoint> points, double apb_deg) {
    std::vector<SweepRow> rows;
    for (const auto& p : points) {
        SweepRow r;
        r.x = p.alpha;
        r.zzb_rmse_deg = p.zzb_rmse_deg;
        r.crb_rmse_deg = p.crb_rmse_deg;
        r.apb_rmse_deg = apb_deg;
        r.rate_bps_hz = p.rate_bps_hz;
        r.n_trials = 1;
        rows.push_back(r);
    }
    return rows;
}

void pareto_cmd(Session& session, const SubFlags& sub) {
    ExperimentConfig& cfg = session.config();
    if (!sub.sensing_snr_db.empty()) {
        if (sub.sensing_snr_db.size() != 1) throw ConfigError("flag '--sensing-snr-db': pareto takes one value");
        cfg.pareto_sensing_snr_db = sub.sensing_snr_db.front();
    }
    if (!sub.comm_snr_db.empty()) cfg.pareto_comm_snr_db_list = sub.comm_snr_db;
    const auto results = pareto_sweep(cfg, cfg.pareto_sensing_snr_db, cfg.pareto_comm_snr_db_list);
    const double apb_deg = rad_to_deg(std::sqrt(apriori_bound(cfg.scenario.num_targets(), cfg.scenario.prior_range)));
    std::vector<PlotSeries> plot;
    for (const auto& res : results) {
        const std::string tag = "comm_" + db_label(res.comm_snr_db) + "dB";
        session.table("pareto_front_" + tag, tradeoff_rows(res.front, apb_deg));
        session.table("pareto_points_" + tag, tradeoff_rows(res.points, apb_deg));
        PlotSeries ps{"comm " + db_label(res.comm_snr_db) + " dB", {}};
        for (const auto& p : res.front) ps.points.emplace_back(p.rate_bps_hz, p.zzb_rmse_deg);
        plot.push_back(std::move(ps));
    }
    bool plottable = !plot.empty();
    for (const auto& ps : plot) plottable = plottable && ps.points.size() >= 2;
    if (session.svg() && plottable) {
        PlotAxes axes{"Pareto fronts, sensing SNR " + db_label(cfg.pareto_sensing_snr_db) + " dB", "rate (bps/Hz)",
                      "ZZB RMSE (deg)", true};
        session.file("pareto_fronts.svg", render_svg(plot, axes));
    }
}

void oracle_check(Session& session, const SubFlags& sub, std::ostream& out) {
    ExperimentConfig& cfg = session.config();
    if (cfg.scenario.num_targets() != 1) throw ConfigError("key 'targets': oracle-check needs exactly one target");
    const double snr_db = sub.snr_db ? *sub.snr_db : session.replayed<double>("snr_db").value_or(10.0);
    session.parameter("snr_db", snr_db);
    Scenario s = cfg.scenario;
    Target& t = s.targets.front();
    t.gamma = std::polar(std::sqrt(db_to_linear(snr_db) * s.noise_var_sense), std::arg(t.gamma));
    const Beamformer w = steered_beamformer(t.theta_s, s.m_tx, s.power_budget);
    const auto closed = zzb_closed(s, w);
    const auto oracle = zzb_numeric_oracle(s, w);
    const double closed_deg = rad_to_deg(std::sqrt(closed.zzb));
    const double oracle_deg = rad_to_deg(std::sqrt(oracle.zzb));
    const double rel = std::abs(closed.zzb - oracle.zzb) / oracle.zzb;
    out << "snr_db " << fmt9(snr_db) << "\n"
        << "zzb_closed_rmse_deg " << fmt9(closed_deg) << "\n"
        << "zzb_oracle_rmse_deg " << fmt9(oracle_deg) << "\n"
        << "relative_error_mse " << fmt9(rel) << "\n";
    session.file("oracle_check.csv", "snr_db,zzb_closed_rmse_deg,zzb_oracle_rmse_deg,relative_error_mse\n" +
                                         fmt9(snr_db) + "," + fmt9(closed_deg) + "," + fmt9(oracle_deg) + "," +
                                         fmt9(rel) + "\n");
}

void rate_cmd(Session& session, const SubFlags& sub, std::ostream& out) {
    const ExperimentConfig& cfg = session.config();
    const Scenario& s = cfg.scenario;
    std::vector<double> snrs = sub.comm_snr_db;
    if (snrs.empty()) snrs = session.replayed<std::vector<double>>("comm_snr_db").value_or(std::vector<double>{cfg.comm_snr_db});
    std::optional<double> alpha = sub.alpha ? sub.alpha : session.replayed<double>("alpha");
    const std::size_t samples = sub.samples_set ? sub.samples : session.replayed<std::size_t>("samples").value_or(sub.samples);
    session.parameter("comm_snr_db", snrs);
    // Without --alpha the beam is scaled to unit gain toward the user, so the
    // mean receive SNR equals the nominal comm SNR.
    std::optional<Beamformer> sjb;
    if (alpha) {
        if (!(*alpha >= 0.0 && *alpha <= 1.0)) throw ConfigError("parameter 'alpha': must lie in [0, 1]");
        session.parameter("alpha", *alpha);
        if (s.num_targets() < 1) throw ConfigError("key 'targets': --alpha needs a sensing target");
        sjb = sjb_beamformer(*alpha, s.theta_c, s.targets.front().theta_s, s.m_tx, s.power_budget);
    }
    const Beamformer w = sjb ? *sjb : steered_beamformer(s.theta_c, s.m_tx, 1.0 / s.m_tx);
    if (samples < 100) throw ConfigError("parameter 'samples': must be >= 100");
    session.parameter("samples", samples);

    std::string csv = "comm_snr_db,mean_receive_snr,ergodic_rate_bps_hz,mc_rate_bps_hz,mc_std_error,rate_at_mean_bps_hz\n";
    for (std::size_t i = 0; i < snrs.size(); ++i) {
        const CommChannel ch{s.theta_c, db_to_linear(snrs[i]) * s.noise_var_comm, s.noise_var_comm};
        const double rho = mean_receive_snr(ch, w);
        const double closed = ergodic_rate_closed(rho);
        const auto mc = ergodic_rate_mc(ch, w, samples, derive_seed(cfg.master_seed, 0x7261746565ULL, i));
        const double at_mean = rate_at_mean_channel(rho);
        out << "comm_snr_db " << fmt9(snrs[i]) << ": ergodic " << fmt9(closed) << " bps/Hz, monte carlo "
            << fmt9(mc.mean) << " +/- " << fmt9(mc.std_error) << ", at mean channel " << fmt9(at_mean) << "\n";
        csv += fmt9(snrs[i]) + "," + fmt9(rho) + "," + fmt9(closed) + "," + fmt9(mc.mean) + "," +
               fmt9(mc.std_error) + "," + fmt9(at_mean) + "\n";
    }
    session.file("rate.csv", csv);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ziv-Zakai and Cramer-Rao bounds for ISAC angle estimation", "isacbounds"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", kToolVersion);

    CommonFlags common;
    SubFlags sub;
    auto add_common = [&](CLI::App* c) {
        c->add_option("--config", common.config, "JSON config or run manifest")->check(CLI::ExistingFile);
        c->add_option("--out", common.out_dir, "output directory");
        c->add_option("--seed", common.seed, "master seed (overrides config)");
        c->add_option("--trials", common.trials, "Monte Carlo trials per row (overrides config)");
        c->add_option("--workers", common.workers, "worker threads, 0 = all cores");
        c->add_option("--format", common.format, "table format")->check(CLI::IsMember({"csv", "json"}));
        c->add_flag("--svg", common.svg, "also write SVG plots");
    };

    auto* bounds = app.add_subcommand("bounds-sweep", "ZZB, CRB and APB RMSE versus sensing SNR");
    add_common(bounds);
    auto* alpha = app.add_subcommand("alpha-sweep", "bounds and rate versus the SJB weight alpha");
    add_common(alpha);
    alpha->add_option("--sensing-snr-db", sub.sensing_snr_db, "sensing SNR list")->delimiter(',');
    alpha->add_option("--comm-snr-db", sub.comm_snr_db, "communication SNR")->delimiter(',');
    auto* pareto = app.add_subcommand("pareto", "rate / ZZB Pareto fronts");
    add_common(pareto);
    pareto->add_option("--sensing-snr-db", sub.sensing_snr_db, "sensing SNR")->delimiter(',');
    pareto->add_option("--comm-snr-db", sub.comm_snr_db, "communication SNR list")->delimiter(',');
    auto* oracle = app.add_subcommand("oracle-check", "closed-form ZZB against numeric quadrature");
    add_common(oracle);
    oracle->add_option("--snr-db", sub.snr_db, "sensing SNR");
    auto* rate = app.add_subcommand("rate", "ergodic rate, closed form and Monte Carlo");
    add_common(rate);
    rate->add_option("--comm-snr-db", sub.comm_snr_db, "communication SNR list")->delimiter(',');
    rate->add_option("--alpha", sub.alpha, "use the SJB beam with this weight")->check(CLI::Range(0.0, 1.0));
    auto* samples = rate->add_option("--samples", sub.samples, "Monte Carlo samples")->check(CLI::Range(100, 100000000));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        auto* failed = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << failed->help();
        return kExitConfig;
    }

    sub.samples_set = samples->count() > 0;
    CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    try {
        Session session(name, common, out);
        if (name == "bounds-sweep") {
            bounds_sweep(session);
        } else if (name == "alpha-sweep") {
            alpha_sweep_cmd(session, sub);
        } else if (name == "pareto") {
            pareto_cmd(session, sub);
        } else if (name == "oracle-check") {
            oracle_check(session, sub, out);
        } else {
            rate_cmd(session, sub, out);
        }
        session.finish();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace isac
