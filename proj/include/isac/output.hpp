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

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "isac/experiments.hpp"

namespace isac {

enum class TableFormat { csv, json };

inline constexpr const char* kTableHeader =
    "snr_db_or_alpha,zzb_rmse_deg,crb_rmse_deg,apb_rmse_deg,rate_bps_hz,n_excluded";

/// Fixed-column CSV, 9 significant digits, empty rate field when absent.
std::string format_table_csv(std::span<const SweepRow> rows);
/// Array of objects keyed like the CSV header; rate is null when absent.
std::string format_table_json(std::span<const SweepRow> rows);

std::vector<SweepRow> parse_table_csv(const std::string& text);
std::vector<SweepRow> parse_table_json(const std::string& text);

/// Writes to a sibling temporary and renames into place.
void atomic_write(const std::filesystem::path& path, const std::string& contents);

void write_table(std::span<const SweepRow> rows, TableFormat format, const std::filesystem::path& path);

struct PlotAxes {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = true;
};

struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

/// Standalone SVG, one polyline per series plus a legend. Byte-stable for
/// identical input. Throws TooFewPoints if a series has fewer than 2 points.
std::string render_svg(std::span<const PlotSeries> series, const PlotAxes& axes);

/// ZZB, CRB and APB columns against the independent variable.
std::vector<PlotSeries> bound_series(std::span<const SweepRow> rows);

void write_svg_plot(std::span<const SweepRow> rows, const PlotAxes& axes, const std::filesystem::path& path);

struct RunManifest {
    std::string subcommand;
    nlohmann::json config;
    std::string tool_version;
    std::uint64_t master_seed = 0;
    double wall_time_s = 0.0;
    /// One entry per output table: file name -> excluded-trial count per row.
    std::vector<std::pair<std::string, std::vector<int>>> excluded;
    std::vector<std::string> outputs;
    /// Subcommand flags that are not part of the config (e.g. --snr-db).
    nlohmann::json parameters = nlohmann::json::object();
};

nlohmann::json manifest_to_json(const RunManifest& m);
void write_manifest(const RunManifest& m, const std::filesystem::path& path);

}  // namespace isac
