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

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "isac/array_model.hpp"

namespace isac {

/// Everything a sweep needs. The scenario acts as a template: sweeps
/// overwrite target magnitudes (from the SNR under study) and, for the
/// Monte Carlo SNR sweep, the receive angles.
struct ExperimentConfig {
    Scenario scenario;
    std::vector<double> snr_grid_db;
    std::vector<double> alpha_grid;
    int n_trials = 500;
    std::uint64_t master_seed = 1;
    double min_separation = 0.25;  ///< sin-space, default 2/M_rx
    double comm_snr_db = 20.0;
    std::vector<double> sensing_snr_db_list{-30.0, -20.0, -10.0, 0.0};
    double pareto_sensing_snr_db = -10.0;
    std::vector<double> pareto_comm_snr_db_list{0.0, 10.0, 20.0};
    /// Parallelism only; outputs never depend on it.
    unsigned workers = 1;

    void validate() const;
};

/// One row of a sweep table. RMSEs in degrees.
struct SweepRow {
    double x = 0.0;  ///< SNR in dB or alpha
    double zzb_rmse_deg = 0.0;
    double crb_rmse_deg = 0.0;
    double apb_rmse_deg = 0.0;
    std::optional<double> rate_bps_hz;
    int n_trials = 0;
    int n_excluded = 0;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct TradeoffPoint {
    double alpha = 0.0;
    double rate_bps_hz = 0.0;
    double zzb_rmse_deg = 0.0;
    double crb_rmse_deg = 0.0;

    friend bool operator==(const TradeoffPoint&, const TradeoffPoint&) = default;
};

struct AlphaSeries {
    double sensing_snr_db = 0.0;
    double comm_snr_db = 0.0;
    std::vector<SweepRow> rows;
};

struct ParetoResult {
    double sensing_snr_db = 0.0;
    double comm_snr_db = 0.0;
    std::vector<TradeoffPoint> points;
    std::vector<TradeoffPoint> front;
};

/// Counter-based per-trial seed; independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

/// start, start+step, ... up to stop inclusive (within 1e-9 step).
std::vector<double> linear_grid(double start, double stop, double step);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// K i.i.d. uniform draws on [-zeta/2, zeta/2], rejection-resampled until every
/// pair satisfies |sin a - sin b| >= min_sep; sorted ascending.
std::vector<double> draw_aoas(int num_targets, double zeta, double min_sep, std::mt19937_64& rng);

inline constexpr int kMaxAoaRejections = 10000;

/// sqrt(mean(per_trial_mse)) converted from radians to degrees.
double rmse_aggregate(std::span<const double> per_trial_mse);

/// Monte Carlo RMSE of ZZB, CRB and APB over the SNR grid with the
/// sensing-optimal beam. Trials with a singular Fisher matrix are excluded
/// and counted.
std::vector<SweepRow> bound_vs_snr_sweep(const ExperimentConfig& cfg);

/// Fixed-geometry SJB sweep over the alpha grid, one series per sensing SNR.
std::vector<AlphaSeries> alpha_sweep(const ExperimentConfig& cfg, double comm_snr_db,
                                     std::span<const double> sensing_snr_db_list);

/// Points not dominated under (maximize rate, minimize ZZB RMSE), sorted by
/// rate ascending, exact duplicates removed.
std::vector<TradeoffPoint> pareto_front(std::span<const TradeoffPoint> points);

std::vector<ParetoResult> pareto_sweep(const ExperimentConfig& cfg, double sensing_snr_db,
                                       std::span<const double> comm_snr_db_list);

std::vector<TradeoffPoint> to_tradeoff_points(std::span<const double> alphas, std::span<const SweepRow> rows);

}  // namespace isac
