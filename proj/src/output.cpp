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

#include "isac/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

namespace isac {

namespace {

using nlohmann::json;

std::string fmt9(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

double round9(double x) { return std::strtod(fmt9(x).c_str(), nullptr); }

std::string fmt_coord(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw Error("malformed number in table: '" + s + "'");
    return v;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string format_table_csv(std::span<const SweepRow> rows) {
    std::string out = std::string(kTableHeader) + "\n";
    for (const auto& r : rows) {
        out += fmt9(r.x) + "," + fmt9(r.zzb_rmse_deg) + "," + fmt9(r.crb_rmse_deg) + "," + fmt9(r.apb_rmse_deg) + ",";
        if (r.rate_bps_hz) out += fmt9(*r.rate_bps_hz);
        out += "," + std::to_string(r.n_excluded) + "\n";
    }
    return out;
}

std::string format_table_json(std::span<const SweepRow> rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json o;
        o["snr_db_or_alpha"] = round9(r.x);
        o["zzb_rmse_deg"] = round9(r.zzb_rmse_deg);
        o["crb_rmse_deg"] = round9(r.crb_rmse_deg);
        o["apb_rmse_deg"] = round9(r.apb_rmse_deg);
        o["rate_bps_hz"] = r.rate_bps_hz ? json(round9(*r.rate_bps_hz)) : json(nullptr);
        o["n_excluded"] = r.n_excluded;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::vector<SweepRow> parse_table_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kTableHeader) throw Error("table CSV header mismatch");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 6) throw Error("table CSV row has " + std::to_string(f.size()) + " fields, expected 6");
        SweepRow r;
        r.x = parse_double(f[0]);
        r.zzb_rmse_deg = parse_double(f[1]);
        r.crb_rmse_deg = parse_double(f[2]);
        r.apb_rmse_deg = parse_double(f[3]);
        if (!f[4].empty()) r.rate_bps_hz = parse_double(f[4]);
        r.n_excluded = static_cast<int>(parse_double(f[5]));
        rows.push_back(r);
    }
    return rows;
}

std::vector<SweepRow> parse_table_json(const std::string& text) {
    const json arr = json::parse(text);
    std::vector<SweepRow> rows;
    for (const auto& o : arr) {
        SweepRow r;
        r.x = o.at("snr_db_or_alpha").get<double>();
        r.zzb_rmse_deg = o.at("zzb_rmse_deg").get<double>();
        r.crb_rmse_deg = o.at("crb_rmse_deg").get<double>();
        r.apb_rmse_deg = o.at("apb_rmse_deg").get<double>();
        if (!o.at("rate_bps_hz").is_null()) r.rate_bps_hz = o.at("rate_bps_hz").get<double>();
        r.n_excluded = o.at("n_excluded").get<int>();
        rows.push_back(r);
    }
    return rows;
}

void atomic_write(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw Error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << contents;
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            throw Error("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

void write_table(std::span<const SweepRow> rows, TableFormat format, const std::filesystem::path& path) {
    atomic_write(path, format == TableFormat::csv ? format_table_csv(rows) : format_table_json(rows));
}

std::vector<PlotSeries> bound_series(std::span<const SweepRow> rows) {
    std::vector<PlotSeries> s{{"ZZB", {}}, {"CRB", {}}, {"APB", {}}};
    for (const auto& r : rows) {
        s[0].points.emplace_back(r.x, r.zzb_rmse_deg);
        s[1].points.emplace_back(r.x, r.crb_rmse_deg);
        s[2].points.emplace_back(r.x, r.apb_rmse_deg);
    }
    return s;
}

std::string render_svg(std::span<const PlotSeries> series, const PlotAxes& axes) {
    if (series.empty()) throw TooFewPoints("plot needs at least one series");
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    for (const auto& s : series) {
        if (s.points.size() < 2) throw TooFewPoints("series '" + s.name + "' has fewer than 2 points");
        for (auto [x, y] : s.points) {
            if (axes.log_y && !(y > 0.0)) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    auto ty = [&](double y) { return axes.log_y ? std::log10(y) : y; };
    double lo = axes.log_y ? std::floor(ty(ymin)) : ymin;
    double hi = axes.log_y ? std::ceil(ty(ymax)) : ymax;
    if (!(hi > lo)) hi = lo + 1.0;

    constexpr double width = 720.0, height = 480.0;
    constexpr double left = 80.0, right = 160.0, top = 40.0, bottom = 60.0;
    const double pw = width - left - right;
    const double ph = height - top - bottom;
    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + ph - (ty(y) - lo) / (hi - lo) * ph; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"480\" viewBox=\"0 0 720 480\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"720\" height=\"480\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt_coord(left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
           escape_xml(axes.title) + "</text>\n";

    // Gridlines: decades on a log axis, five even divisions otherwise.
    if (axes.log_y) {
        for (int d = static_cast<int>(lo); d <= static_cast<int>(hi); ++d) {
            const double y = top + ph - (d - lo) / (hi - lo) * ph;
            svg += "<line class=\"decade\" x1=\"" + fmt_coord(left) + "\" y1=\"" + fmt_coord(y) + "\" x2=\"" +
                   fmt_coord(left + pw) + "\" y2=\"" + fmt_coord(y) + "\" stroke=\"#cccccc\"/>\n";
            svg += "<text x=\"" + fmt_coord(left - 6) + "\" y=\"" + fmt_coord(y + 4) +
                   "\" text-anchor=\"end\" font-size=\"12\">1e" + std::to_string(d) + "</text>\n";
        }
    } else {
        for (int i = 0; i <= 5; ++i) {
            const double v = lo + (hi - lo) * i / 5.0;
            const double y = top + ph - (v - lo) / (hi - lo) * ph;
            svg += "<line class=\"grid\" x1=\"" + fmt_coord(left) + "\" y1=\"" + fmt_coord(y) + "\" x2=\"" +
                   fmt_coord(left + pw) + "\" y2=\"" + fmt_coord(y) + "\" stroke=\"#cccccc\"/>\n";
            svg += "<text x=\"" + fmt_coord(left - 6) + "\" y=\"" + fmt_coord(y + 4) +
                   "\" text-anchor=\"end\" font-size=\"12\">" + fmt9(round9(v)) + "</text>\n";
        }
    }
    for (int i = 0; i <= 5; ++i) {
        const double v = xmin + (xmax - xmin) * i / 5.0;
        svg += "<text x=\"" + fmt_coord(px(v)) + "\" y=\"" + fmt_coord(top + ph + 18) +
               "\" text-anchor=\"middle\" font-size=\"12\">" + fmt9(round9(v)) + "</text>\n";
    }
    svg += "<rect x=\"" + fmt_coord(left) + "\" y=\"" + fmt_coord(top) + "\" width=\"" + fmt_coord(pw) +
           "\" height=\"" + fmt_coord(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt_coord(left + pw / 2) + "\" y=\"" + fmt_coord(height - 16) +
           "\" text-anchor=\"middle\" font-size=\"14\">" + escape_xml(axes.x_label) + "</text>\n";
    svg += "<text x=\"20\" y=\"" + fmt_coord(top + ph / 2) + "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 " +
           fmt_coord(top + ph / 2) + ")\">" + escape_xml(axes.y_label) + "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const char* color = kPalette[i % std::size(kPalette)];
        svg += "<polyline class=\"series\" fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"2\" points=\"";
        bool first = true;
        for (auto [x, y] : s.points) {
            if (axes.log_y && !(y > 0.0)) continue;
            if (!first) svg += " ";
            svg += fmt_coord(px(x)) + "," + fmt_coord(py(y));
            first = false;
        }
        svg += "\"/>\n";
        const double ly = top + 20.0 + 20.0 * static_cast<double>(i);
        svg += "<line x1=\"" + fmt_coord(left + pw + 12) + "\" y1=\"" + fmt_coord(ly) + "\" x2=\"" +
               fmt_coord(left + pw + 36) + "\" y2=\"" + fmt_coord(ly) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fmt_coord(left + pw + 42) + "\" y=\"" + fmt_coord(ly + 4) + "\" font-size=\"12\">" +
               escape_xml(s.name) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void write_svg_plot(std::span<const SweepRow> rows, const PlotAxes& axes, const std::filesystem::path& path) {
    if (rows.size() < 2) throw TooFewPoints("plot needs at least 2 rows");
    const auto series = bound_series(rows);
    atomic_write(path, render_svg(series, axes));
}

json manifest_to_json(const RunManifest& m) {
    json excluded = json::object();
    for (const auto& [name, counts] : m.excluded) excluded[name] = counts;
    return json{{"subcommand", m.subcommand},   {"tool_version", m.tool_version}, {"master_seed", m.master_seed},
                {"wall_time_s", m.wall_time_s}, {"config", m.config},             {"excluded_trials", excluded},
                {"outputs", m.outputs},         {"parameters", m.parameters}};
}

void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
    atomic_write(path, manifest_to_json(m).dump(2) + "\n");
}

}  // namespace isac
