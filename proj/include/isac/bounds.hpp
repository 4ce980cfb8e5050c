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

#include <optional>
#include <span>
#include <vector>

#include "isac/array_model.hpp"
#include "isac/numerics.hpp"

namespace isac {

/// K x K stochastic CRB on the receive angles, radians^2.
struct CrbMatrix {
    RealMatrix entries;

    [[nodiscard]] std::size_t size() const { return entries.rows(); }
    [[nodiscard]] double trace() const { return entries.trace(); }
    /// Tr{CRB}/K, the per-target average variance.
    [[nodiscard]] double mean_variance() const { return trace() / static_cast<double>(size()); }
};

/// Everything the closed-form ZZB is assembled from, for one scenario draw.
struct BoundReport {
    std::optional<CrbMatrix> crb;  ///< absent only for a degraded report
    double zzb = 0.0;              ///< radians^2
    double apb = 0.0;              ///< radians^2
    double p_min_null = 0.0;
    double log_p_min_null = 0.0;   ///< ln P_min,n, finite where p_min_null underflows
    double u_tilde = 0.0;
    double gamma_factor = 0.0;     ///< P(3/2, u_tilde)
    bool degraded = false;
};

/// Condition number (1-norm) above which the Fisher matrix counts as singular.
inline constexpr double kMaxFisherCondition = 1e12;

/// sigma^2/(2L) { Re[ Pi_H o (Gamma A^H R_y^-1 A Gamma)^T ] }^-1 with the
/// projected-derivative matrix Pi_H = D^H (I - A (A^H A)^-1 A^H) D.
/// Throws SingularFisher for K = 0, K >= m_rx, coincident angles or zero power.
CrbMatrix crb_stochastic(const Scenario& s, const Beamformer& w);

/// Chernoff-type minimum error probability for the Gaussian binary test
/// R versus R_delta over L snapshots:
///   Q(sqrt(mu'')/2) exp(mu + mu''/8)
/// with mu and mu'' the semi-invariant MGF and its second derivative at p = 1/2.
double pmin_general(const HermitianMatrix& r, const HermitianMatrix& r_delta, int snapshots);

/// Mainlobe approximation Q(sqrt(delta^T CRB^-1 delta) / 2).
double pmin_mainlobe(std::span<const double> delta, const CrbMatrix& crb);

/// Error-probability floor at the beampattern nulls. In log space.
double log_pmin_null(std::span<const double> etas, int m_rx, int snapshots);
/// exp(log_pmin_null); may underflow to 0 at very high SNR.
double pmin_null(std::span<const double> etas, int m_rx, int snapshots);

/// K zeta^2 / ((K+1)^2 (K+2)), radians^2.
double apriori_bound(int num_targets, double zeta);

/// Upper integration limit of the mainlobe term, K zeta^2 / (8 (K+1)^2 Tr{CRB}).
double u_tilde(const CrbMatrix& crb, double zeta, int num_targets);

struct ZzbOptions {
    /// Return 2 P_min,n B_AP with no CRB instead of throwing SingularFisher.
    bool allow_degraded = false;
};

/// 2 P_min,n B_AP + P(3/2, u_tilde) Tr{CRB}/K.
BoundReport zzb_closed(const Scenario& s, const Beamformer& w, const ZzbOptions& opts = {});

struct OracleOptions {
    /// Sorted knots in [0, zeta]. Empty selects a log-spaced default grid.
    std::vector<double> h_grid;
    /// Maximum relative change allowed when the h-grid step is halved.
    double refinement_tolerance = 0.01;
};

struct OracleResult {
    double zzb = 0.0;          ///< refined-grid value, radians^2
    double coarse_zzb = 0.0;   ///< value on the supplied grid
    std::size_t evaluations = 0;
};

/// Single-target ZZB by direct quadrature of
///   int_0^zeta h (1 - h/zeta) P_min(h) dh
/// where P_min is pmin_general for an AoA pair separated by h and centred on
/// the prior midpoint. No valley filling. Throws GridTooCoarse when halving
/// the grid step moves the result by more than the tolerance.
OracleResult zzb_numeric_oracle(const Scenario& s, const Beamformer& w, const OracleOptions& opts = {});

/// Default oracle grid: 0 followed by n log-spaced points from zeta*1e-9 to zeta.
std::vector<double> default_oracle_grid(double zeta, std::size_t n = 3000);

}  // namespace isac
