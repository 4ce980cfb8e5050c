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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "isac/cli.hpp"
#include "isac/config.hpp"
#include "isac/errors.hpp"
#include "isac/output.hpp"

using namespace isac;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("isacbounds_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int invoke(const std::vector<std::string>& args, std::string* out = nullptr, std::string* err = nullptr) {
    std::ostringstream o, e;
    const int rc = run(args, o, e);
    if (out) *out = o.str();
    if (err) *err = e.str();
    return rc;
}

std::vector<SweepRow> sample_rows() {
    std::vector<SweepRow> rows;
    for (int i = 0; i < 4; ++i) {
        SweepRow r;
        r.x = -10.0 + 3.3 * i;
        r.zzb_rmse_deg = 17.0 / (1.0 + i * i) + 1.0 / 3.0;
        r.crb_rmse_deg = 2.0 / (1.0 + i) * M_PI;
        r.apb_rmse_deg = 17.320508075688775;
        if (i % 2) r.rate_bps_hz = 5.884048230112;
        r.n_trials = 100;
        r.n_excluded = i;
        rows.push_back(r);
    }
    return rows;
}

std::string expect_config_error(const char* text) {
    try {
        config_from_json(json::parse(text));
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("minimal config gets defaults") {
    const auto cfg = config_from_json(json::parse(R"({ "targets": [{"theta_s_deg": 5, "theta_r_deg": 15}] })"));
    CHECK(cfg.scenario.m_tx == 8);
    CHECK(cfg.scenario.m_rx == 8);
    CHECK(cfg.scenario.snapshots == 100);
    CHECK(cfg.n_trials == 500);
    CHECK(cfg.snr_grid_db.size() == 26);
    CHECK(cfg.alpha_grid.size() == 51);
    CHECK(cfg.min_separation == doctest::Approx(0.25));
    CHECK(cfg.scenario.targets.front().theta_r == doctest::Approx(deg_to_rad(15.0)));
}

TEST_CASE("config violations name the key") {
    CHECK(expect_config_error(R"({"m_rx": 1})").find("m_rx >= 2") != std::string::npos);
    const auto prior = expect_config_error(R"({"prior_range_deg": 20, "targets": [{"theta_s_deg": 0, "theta_r_deg": 15}]})");
    CHECK(prior.find("targets[0].theta_r_deg") != std::string::npos);
    CHECK(expect_config_error(R"({"m_rxx": 8})").find("m_rxx") != std::string::npos);
    CHECK(expect_config_error(R"({"snapshots": "many"})").find("snapshots") != std::string::npos);
    CHECK(expect_config_error(R"({"snr_grid_db": {"start": 0, "stop": 10, "step": 0}})").find("snr_grid_db.step") !=
          std::string::npos);
    CHECK(expect_config_error(R"([1, 2])") != "");
}

TEST_CASE("config echo round-trips") {
    auto cfg = config_from_json(json::parse(R"({"prior_range_deg": 120, "master_seed": 77, "n_trials": 12,
        "targets": [{"theta_s_deg": -30, "theta_r_deg": -10}, {"theta_s_deg": 30, "theta_r_deg": 10}]})"));
    const auto echo = config_to_json(cfg);
    const auto again = config_from_json(echo);
    CHECK(config_to_json(again) == echo);
    CHECK(again.master_seed == 77);
    CHECK(again.scenario.targets.size() == 2);
}

TEST_CASE("empty table is header only") {
    CHECK(format_table_csv({}) == std::string(kTableHeader) + "\n");
    CHECK(json::parse(format_table_json({})).empty());
}

TEST_CASE("CSV round-trip preserves values at 9 significant digits") {
    const auto rows = sample_rows();
    const auto back = parse_table_csv(format_table_csv(rows));
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].zzb_rmse_deg == doctest::Approx(rows[i].zzb_rmse_deg).epsilon(5e-9));
        CHECK(back[i].rate_bps_hz.has_value() == rows[i].rate_bps_hz.has_value());
        CHECK(back[i].n_excluded == rows[i].n_excluded);
    }
    CHECK(format_table_csv(back) == format_table_csv(rows));
}

TEST_CASE("JSON and CSV carry identical values") {
    const auto rows = sample_rows();
    const auto a = parse_table_csv(format_table_csv(rows));
    const auto b = parse_table_json(format_table_json(rows));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].zzb_rmse_deg == b[i].zzb_rmse_deg);
        CHECK(a[i].crb_rmse_deg == b[i].crb_rmse_deg);
        CHECK(a[i].apb_rmse_deg == b[i].apb_rmse_deg);
        CHECK(a[i].rate_bps_hz == b[i].rate_bps_hz);
        CHECK(a[i].n_excluded == b[i].n_excluded);
    }
    const auto keys = json::parse(format_table_json(rows)).at(0);
    CHECK(keys.size() == 6);
    CHECK(keys.at("rate_bps_hz").is_null());
}

TEST_CASE("atomic write leaves no temporary and reports the path") {
    const auto dir = scratch("atomic");
    atomic_write(dir / "sub" / "a.txt", "hello");
    CHECK(slurp(dir / "sub" / "a.txt") == "hello");
    CHECK_FALSE(fs::exists(dir / "sub" / "a.txt.tmp"));
    fs::create_directories(dir / "blocked");
    std::string msg;
    try {
        atomic_write(dir / "blocked", "x");
    } catch (const Error& e) {
        msg = e.what();
    }
    CHECK(msg.find("blocked") != std::string::npos);
}

TEST_CASE("SVG rendering") {
    std::vector<PlotSeries> two{{"line", {{0.0, 1.0}, {1.0, 100.0}}}};
    const PlotAxes axes{"t", "x", "y", true};
    const auto svg = render_svg(two, axes);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("points=\"80.00,420.00 560.00,40.00\"") != std::string::npos);
    CHECK(svg.find(">1e0<") != std::string::npos);
    CHECK(svg.find(">1e1<") != std::string::npos);
    CHECK(svg.find(">1e2<") != std::string::npos);
    CHECK(svg == render_svg(two, axes));
    CHECK(svg.find(">line<") != std::string::npos);

    std::vector<PlotSeries> one{{"dot", {{0.0, 1.0}}}};
    CHECK_THROWS_AS(render_svg(one, axes), TooFewPoints);
    const auto rows = sample_rows();
    CHECK_THROWS_AS(write_svg_plot(std::span(rows).first(1), axes, scratch("svg1") / "a.svg"), TooFewPoints);
}

TEST_CASE("unknown flags print usage and exit 1") {
    std::string err;
    CHECK(invoke({"bounds-sweep", "--bogus"}, nullptr, &err) == kExitConfig);
    CHECK(err.find("Usage") != std::string::npos);
    CHECK(invoke({"frobnicate"}, nullptr, &err) == kExitConfig);
    CHECK(invoke({}, nullptr, &err) == kExitConfig);
}

TEST_CASE("config errors exit 1, runtime errors exit 2") {
    const auto dir = scratch("codes");
    std::ofstream(dir / "bad.json") << R"({"m_rx": 1})";
    std::string err;
    CHECK(invoke({"bounds-sweep", "--config", (dir / "bad.json").string(), "--out", dir.string()}, nullptr, &err) ==
          kExitConfig);
    CHECK(err.find("m_rx") != std::string::npos);
    std::ofstream(dir / "tight.json") << R"({"prior_range_deg": 10, "targets": [
        {"theta_s_deg": 0, "theta_r_deg": 0}, {"theta_s_deg": 1, "theta_r_deg": 1}, {"theta_s_deg": 2, "theta_r_deg": 2}]})";
    CHECK(invoke({"bounds-sweep", "--config", (dir / "tight.json").string(), "--out", dir.string(), "--trials", "2"},
                 nullptr, &err) == kExitRuntime);
    CHECK(err.find("error") != std::string::npos);
}

TEST_CASE("bounds-sweep writes a table and a manifest that replays bit-exactly") {
    const auto dir = scratch("replay");
    const auto a = dir / "a";
    const auto b = dir / "b";
    REQUIRE(invoke({"bounds-sweep", "--out", a.string(), "--seed", "7", "--trials", "20", "--svg"}) == kExitOk);
    REQUIRE(fs::exists(a / "bounds_vs_snr.csv"));
    REQUIRE(fs::exists(a / "bounds_vs_snr.svg"));
    const auto manifest = json::parse(slurp(a / "bounds-sweep_manifest.json"));
    CHECK(manifest.at("master_seed") == 7);
    CHECK(manifest.at("tool_version") == kToolVersion);
    CHECK(manifest.at("config").at("n_trials") == 20);
    CHECK(manifest.at("excluded_trials").at("bounds_vs_snr.csv").size() == 26);
    CHECK(manifest.at("wall_time_s").get<double>() >= 0.0);
    REQUIRE(invoke({"bounds-sweep", "--config", (a / "bounds-sweep_manifest.json").string(), "--out", b.string(),
                    "--svg"}) == kExitOk);
    CHECK(slurp(a / "bounds_vs_snr.csv") == slurp(b / "bounds_vs_snr.csv"));
    CHECK(slurp(a / "bounds_vs_snr.svg") == slurp(b / "bounds_vs_snr.svg"));
}

TEST_CASE("pareto writes one front per communication SNR") {
    const auto dir = scratch("pareto");
    REQUIRE(invoke({"pareto", "--sensing-snr-db", "-10", "--comm-snr-db", "0,10,20", "--out", dir.string()}) ==
            kExitOk);
    for (const char* f : {"pareto_front_comm_0dB.csv", "pareto_front_comm_10dB.csv", "pareto_front_comm_20dB.csv"}) {
        REQUIRE(fs::exists(dir / f));
        const auto rows = parse_table_csv(slurp(dir / f));
        CHECK_FALSE(rows.empty());
        for (const auto& r : rows) CHECK(r.rate_bps_hz.has_value());
    }
}

TEST_CASE("oracle-check prints both bounds and the relative error") {
    const auto dir = scratch("oracle");
    std::string out;
    REQUIRE(invoke({"oracle-check", "--snr-db", "10", "--out", dir.string()}, &out) == kExitOk);
    CHECK(out.find("zzb_closed_rmse_deg") != std::string::npos);
    CHECK(out.find("zzb_oracle_rmse_deg") != std::string::npos);
    CHECK(out.find("relative_error") != std::string::npos);
    CHECK(fs::exists(dir / "oracle_check.csv"));
}

TEST_CASE("rate and alpha-sweep replay from their manifests") {
    const auto dir = scratch("rate");
    REQUIRE(invoke({"rate", "--comm-snr-db", "-10,20", "--samples", "500", "--out", (dir / "a").string()}) == kExitOk);
    REQUIRE(invoke({"rate", "--config", (dir / "a" / "rate_manifest.json").string(), "--out", (dir / "b").string()}) ==
            kExitOk);
    CHECK(slurp(dir / "a" / "rate.csv") == slurp(dir / "b" / "rate.csv"));
    REQUIRE(invoke({"alpha-sweep", "--sensing-snr-db", "-30,0", "--format", "json", "--out", (dir / "c").string()}) ==
            kExitOk);
    CHECK(fs::exists(dir / "c" / "alpha_sweep_sensing_-30dB.json"));
    CHECK(fs::exists(dir / "c" / "alpha_sweep_sensing_0dB.json"));
}
