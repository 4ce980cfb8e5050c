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

#include "isac/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <limits>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "isac/bounds.hpp"
#include "isac/comm_rate.hpp"

namespace isac {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Runs body(i) for i in [0, n) on up to `workers` threads.
template <class Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
    const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) body(i);
        });
    }
}

struct TrialOutcome {
    double zzb = 0.0;
    double crb_mean = 0.0;
    bool excluded = false;
};

void require_sorted_nonempty(const std::vector<double>& g, const char* name) {
    if (g.empty()) throw DomainError(std::string(name) + " must be nonempty");
    if (!std::is_sorted(g.begin(), g.end())) throw DomainError(std::string(name) + " must be sorted");
}

Scenario with_snr(Scenario s, double snr_db) {
    const double mag = std::sqrt(db_to_linear(snr_db) * s.noise_var_sense);
    for (auto& t : s.targets) t.gamma = std::polar(mag, std::arg(t.gamma));
    return s;
}

}  // namespace

void ExperimentConfig::validate() const {
    scenario.validate();
    if (n_trials < 1) throw DomainError("n_trials >= 1 required");
    if (!(min_separation >= 0.0)) throw DomainError("min_separation >= 0 required");
    for (double a : alpha_grid) {
        if (!(a >= 0.0 && a <= 1.0)) throw DomainError("alpha_grid values must lie in [0, 1]");
    }
    require_sorted_nonempty(snr_grid_db, "snr_grid_db");
    require_sorted_nonempty(alpha_grid, "alpha_grid");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
}

std::vector<double> linear_grid(double start, double stop, double step) {
    if (!(step > 0.0)) throw DomainError("grid step must be > 0");
    if (stop < start) throw DomainError("grid stop must be >= start");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = start + static_cast<double>(i) * step;
    return g;
}

std::vector<double> draw_aoas(int num_targets, double zeta, double min_sep, std::mt19937_64& rng) {
    if (num_targets < 1) throw DomainError("draw_aoas: K >= 1 required");
    std::uniform_real_distribution<double> uni(-0.5 * zeta, 0.5 * zeta);
    std::vector<double> th(static_cast<std::size_t>(num_targets));
    for (int attempt = 0; attempt < kMaxAoaRejections; ++attempt) {
        for (auto& x : th) x = uni(rng);
        bool ok = true;
        for (std::size_t i = 0; i < th.size() && ok; ++i)
            for (std::size_t j = i + 1; j < th.size() && ok; ++j)
                ok = std::abs(std::sin(th[i]) - std::sin(th[j])) >= min_sep;
        if (ok) {
            std::sort(th.begin(), th.end());
            return th;
        }
    }
    throw InfeasibleSeparation("no AoA draw met separation " + std::to_string(min_sep) + " after " +
                               std::to_string(kMaxAoaRejections) + " attempts");
}

double rmse_aggregate(std::span<const double> per_trial_mse) {
    if (per_trial_mse.empty()) throw EmptyInput("rmse_aggregate: no trials to aggregate");
    double sum = 0.0;
    for (double v : per_trial_mse) {
        if (!std::isfinite(v) || v < 0.0) throw DomainError("rmse_aggregate: per-trial MSE must be finite and >= 0");
        sum += v;
    }
    return rad_to_deg(std::sqrt(sum / static_cast<double>(per_trial_mse.size())));
}

std::vector<SweepRow> bound_vs_snr_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const Scenario& base = cfg.scenario;
    const int k = static_cast<int>(base.num_targets());
    if (k < 1) throw DomainError("bound_vs_snr_sweep needs at least one target");

    std::vector<double> aods;
    for (const auto& t : base.targets) aods.push_back(t.theta_s);
    const Beamformer w = k == 1 ? steered_beamformer(aods.front(), base.m_tx, base.power_budget)
                                : multibeam_beamformer(aods, base.m_tx, base.power_budget);
    const double apb = apriori_bound(k, base.prior_range);

    const std::size_t n_snr = cfg.snr_grid_db.size();
    const auto n_trials = static_cast<std::size_t>(cfg.n_trials);
    std::vector<TrialOutcome> outcomes(n_snr * n_trials);

    parallel_for(outcomes.size(), cfg.workers, [&](std::size_t task) {
        const std::size_t si = task / n_trials;
        const std::size_t ti = task % n_trials;
        std::mt19937_64 rng(derive_seed(cfg.master_seed, si, ti));
        const auto aoas = draw_aoas(k, base.prior_range, cfg.min_separation, rng);
        std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
        Scenario s = base;
        const double mag = std::sqrt(db_to_linear(cfg.snr_grid_db[si]) * base.noise_var_sense);
        for (int j = 0; j < k; ++j) {
            s.targets[j].theta_r = aoas[j];
            s.targets[j].gamma = std::polar(mag, phase(rng));
        }
        TrialOutcome& out = outcomes[task];
        try {
            const auto rep = zzb_closed(s, w);
            out.zzb = rep.zzb;
            out.crb_mean = rep.crb->mean_variance();
        } catch (const SingularFisher&) {
            out.excluded = true;
        }
    });

    std::vector<SweepRow> rows;
    rows.reserve(n_snr);
    const std::array<double, 1> apb_list{apb};
    for (std::size_t si = 0; si < n_snr; ++si) {
        std::vector<double> zzb;
        std::vector<double> crb;
        int excluded = 0;
        for (std::size_t ti = 0; ti < n_trials; ++ti) {
            const auto& o = outcomes[si * n_trials + ti];
            if (o.excluded) {
                ++excluded;
                continue;
            }
            zzb.push_back(o.zzb);
            crb.push_back(o.crb_mean);
        }
        if (zzb.empty()) {
            throw EmptyInput("every trial at " + std::to_string(cfg.snr_grid_db[si]) + " dB had a singular Fisher matrix");
        }
        SweepRow row;
        row.x = cfg.snr_grid_db[si];
        row.zzb_rmse_deg = rmse_aggregate(zzb);
        row.crb_rmse_deg = rmse_aggregate(crb);
        row.apb_rmse_deg = rmse_aggregate(apb_list);
        row.n_trials = cfg.n_trials;
        row.n_excluded = excluded;
        rows.push_back(row);
    }
    return rows;
}

std::vector<AlphaSeries> alpha_sweep(const ExperimentConfig& cfg, double comm_snr_db,
                                     std::span<const double> sensing_snr_db_list) {
    cfg.validate();
    const Scenario& base = cfg.scenario;
    if (base.num_targets() != 1) throw DomainError("alpha_sweep needs exactly one target");
    const Target& target = base.targets.front();
    const double apb = apriori_bound(1, base.prior_range);
    const std::array<double, 1> apb_list{apb};
    const CommChannel ch{base.theta_c, db_to_linear(comm_snr_db) * base.noise_var_comm, base.noise_var_comm};

    std::vector<AlphaSeries> out;
    for (double snr_db : sensing_snr_db_list) {
        const Scenario s = with_snr(base, snr_db);
        AlphaSeries series{snr_db, comm_snr_db, {}};
        series.rows.resize(cfg.alpha_grid.size());
        parallel_for(cfg.alpha_grid.size(), cfg.workers, [&](std::size_t i) {
            const double alpha = cfg.alpha_grid[i];
            const Beamformer w = sjb_beamformer(alpha, base.theta_c, target.theta_s, base.m_tx, base.power_budget);
            const auto rep = zzb_closed(s, w);
            SweepRow row;
            row.x = alpha;
            row.zzb_rmse_deg = rad_to_deg(std::sqrt(rep.zzb));
            row.crb_rmse_deg = rad_to_deg(std::sqrt(rep.crb->mean_variance()));
            row.apb_rmse_deg = rmse_aggregate(apb_list);
            row.rate_bps_hz = ergodic_rate_closed(mean_receive_snr(ch, w));
            row.n_trials = 1;
            series.rows[i] = row;
        });
        out.push_back(std::move(series));
    }
    return out;
}

std::vector<TradeoffPoint> pareto_front(std::span<const TradeoffPoint> points) {
    if (points.empty()) throw EmptyInput("pareto_front: no points");
    std::vector<TradeoffPoint> sorted(points.begin(), points.end());
    // Highest rate first; among equal rates the lowest error leads.
    std::sort(sorted.begin(), sorted.end(), [](const TradeoffPoint& a, const TradeoffPoint& b) {
        if (a.rate_bps_hz != b.rate_bps_hz) return a.rate_bps_hz > b.rate_bps_hz;
        if (a.zzb_rmse_deg != b.zzb_rmse_deg) return a.zzb_rmse_deg < b.zzb_rmse_deg;
        if (a.alpha != b.alpha) return a.alpha < b.alpha;
        return a.crb_rmse_deg < b.crb_rmse_deg;
    });
    std::vector<TradeoffPoint> front;
    double best_error = std::numeric_limits<double>::infinity();
    for (const auto& p : sorted) {
        // Anything at or above the best error so far has a competitor with
        // at least the same rate and no larger error.
        if (p.zzb_rmse_deg < best_error) {
            front.push_back(p);
            best_error = p.zzb_rmse_deg;
        }
    }
    std::reverse(front.begin(), front.end());
    return front;
}

std::vector<TradeoffPoint> to_tradeoff_points(std::span<const double> alphas, std::span<const SweepRow> rows) {
    if (alphas.size() != rows.size()) throw DomainError("one alpha per row required");
    std::vector<TradeoffPoint> pts;
    pts.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        pts.push_back({alphas[i], rows[i].rate_bps_hz.value_or(0.0), rows[i].zzb_rmse_deg, rows[i].crb_rmse_deg});
    }
    return pts;
}

std::vector<ParetoResult> pareto_sweep(const ExperimentConfig& cfg, double sensing_snr_db,
                                       std::span<const double> comm_snr_db_list) {
    std::vector<ParetoResult> out;
    const std::array<double, 1> sensing{sensing_snr_db};
    for (double comm_db : comm_snr_db_list) {
        auto series = alpha_sweep(cfg, comm_db, sensing);
        ParetoResult res;
        res.sensing_snr_db = sensing_snr_db;
        res.comm_snr_db = comm_db;
        res.points = to_tradeoff_points(cfg.alpha_grid, series.front().rows);
        res.front = pareto_front(res.points);
        out.push_back(std::move(res));
    }
    return out;
}

}  // namespace isac
