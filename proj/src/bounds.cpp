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

#include "isac/bounds.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "isac/special_functions.hpp"

namespace isac {

namespace {

// exp(log Q(q_arg) + exponent) without underflow in the intermediate Q.
double q_times_exp(double q_arg, double exponent) {
    if (q_arg < 30.0) return q_function(q_arg) * std::exp(exponent);
    return std::exp(log_q_function(q_arg) + exponent);
}

}  // namespace

CrbMatrix crb_stochastic(const Scenario& s, const Beamformer& w) {
    const std::size_t k = s.num_targets();
    if (k == 0) throw SingularFisher("CRB needs at least one target");
    if (k >= static_cast<std::size_t>(s.m_rx)) {
        throw SingularFisher("CRB needs fewer targets (" + std::to_string(k) + ") than receive antennas (" +
                             std::to_string(s.m_rx) + ")");
    }
    const auto angles = receive_angles(s);
    const auto powers = effective_powers(s, w);
    const ComplexMatrix a = steering_matrix(angles, s.m_rx);
    const ComplexMatrix d = steering_derivative_matrix(angles, s.m_rx);
    const ComplexMatrix ah = a.adjoint();

    HermitianMatrix gram_inv;
    try {
        gram_inv = hermitian_inverse(HermitianMatrix(ah * a));
    } catch (const NotPositiveDefinite& e) {
        throw SingularFisher(std::string("steering matrix is rank deficient: ") + e.what());
    }
    ComplexMatrix proj_perp = ComplexMatrix::identity(static_cast<std::size_t>(s.m_rx)) - a * gram_inv.matrix() * ah;
    const ComplexMatrix pi_h = d.adjoint() * proj_perp * d;

    const HermitianMatrix r_inv = hermitian_inverse(received_covariance(s, w));
    const ComplexMatrix core = ah * r_inv.matrix() * a;

    RealMatrix fisher(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            // (Gamma core Gamma)^T at (i, j) is p_j core(j, i) p_i.
            const Complex g_t = powers[j] * core(j, i) * powers[i];
            fisher(i, j) = (pi_h(i, j) * g_t).real();
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            const double v = 0.5 * (fisher(i, j) + fisher(j, i));
            fisher(i, j) = v;
            fisher(j, i) = v;
        }

    RealMatrix inv;
    try {
        inv = symmetric_inverse(fisher);
    } catch (const NotPositiveDefinite& e) {
        throw SingularFisher(std::string("Fisher information is not positive definite: ") + e.what());
    }
    const double cond = one_norm(fisher) * one_norm(inv);
    if (!(cond <= kMaxFisherCondition)) {
        throw SingularFisher("Fisher information condition number " + std::to_string(cond) + " exceeds 1e12");
    }
    const double prefactor = s.noise_var_sense / (2.0 * s.snapshots);
    return CrbMatrix{inv * prefactor};
}

double pmin_general(const HermitianMatrix& r, const HermitianMatrix& r_delta, int snapshots) {
    if (r.dim() != r_delta.dim()) throw DomainError("pmin_general: covariance dimensions differ");
    const double big_l = snapshots;
    const HermitianMatrix sum = r + r_delta;
    const double mu = big_l * (0.5 * (log_det(r) + log_det(r_delta)) - log_det(0.5 * sum));
    const ComplexMatrix ratio = hermitian_inverse(sum).matrix() * (r - r_delta).matrix();
    const double mu2 = 4.0 * big_l * (ratio * ratio).trace().real();
    const double curvature = std::max(mu2, 0.0);
    return q_times_exp(0.5 * std::sqrt(curvature), std::min(mu, 0.0) + curvature / 8.0);
}

double pmin_mainlobe(std::span<const double> delta, const CrbMatrix& crb) {
    if (delta.size() != crb.size()) throw DomainError("pmin_mainlobe: delta length must equal K");
    RealMatrix fisher;
    try {
        fisher = symmetric_inverse(crb.entries);
    } catch (const NotPositiveDefinite& e) {
        throw SingularFisher(std::string("CRB is not invertible: ") + e.what());
    }
    double quad = 0.0;
    for (std::size_t i = 0; i < delta.size(); ++i)
        for (std::size_t j = 0; j < delta.size(); ++j) quad += delta[i] * fisher(i, j) * delta[j];
    return q_function(0.5 * std::sqrt(std::max(quad, 0.0)));
}

namespace {

struct NullTerms {
    double q_arg;
    double exponent;
};

NullTerms null_terms(std::span<const double> etas, int m_rx, int snapshots) {
    const double m = m_rx;
    const double big_l = snapshots;
    double sum_sq = 0.0;
    double sum_log = 0.0;
    for (double eta : etas) {
        if (!(eta >= 0.0)) throw DomainError("pmin_null: sensing SNR must be >= 0");
        const double y = m * eta;
        const double x = y / (2.0 + y);
        sum_sq += x * x;
        // ln(4(1+y)/(2+y)^2) = ln(1+y) - 2 ln(1+y/2)
        sum_log += std::log1p(y) - 2.0 * std::log1p(0.5 * y) + x * x;
    }
    return {std::sqrt(2.0 * big_l * sum_sq), big_l * sum_log};
}

}  // namespace

double log_pmin_null(std::span<const double> etas, int m_rx, int snapshots) {
    const auto t = null_terms(etas, m_rx, snapshots);
    return log_q_function(t.q_arg) + t.exponent;
}

double pmin_null(std::span<const double> etas, int m_rx, int snapshots) {
    const auto t = null_terms(etas, m_rx, snapshots);
    return q_times_exp(t.q_arg, t.exponent);
}

double apriori_bound(int num_targets, double zeta) {
    if (num_targets < 1) throw DomainError("apriori_bound: K >= 1 required");
    if (!(zeta > 0.0)) throw DomainError("apriori_bound: zeta > 0 required");
    const double k = num_targets;
    return k * zeta * zeta / ((k + 1.0) * (k + 1.0) * (k + 2.0));
}

double u_tilde(const CrbMatrix& crb, double zeta, int num_targets) {
    const double k = num_targets;
    const double spacing = zeta / (k + 1.0);
    return k * spacing * spacing / (8.0 * crb.trace());
}

BoundReport zzb_closed(const Scenario& s, const Beamformer& w, const ZzbOptions& opts) {
    const int k = static_cast<int>(s.num_targets());
    BoundReport rep;
    const auto etas = sensing_snrs(s, w);
    rep.log_p_min_null = log_pmin_null(etas, s.m_rx, s.snapshots);
    rep.p_min_null = pmin_null(etas, s.m_rx, s.snapshots);
    rep.apb = apriori_bound(k, s.prior_range);
    const double prior_term = 2.0 * rep.p_min_null * rep.apb;
    try {
        rep.crb = crb_stochastic(s, w);
    } catch (const SingularFisher&) {
        if (!opts.allow_degraded) throw;
        rep.degraded = true;
        rep.zzb = prior_term;
        return rep;
    }
    rep.u_tilde = u_tilde(*rep.crb, s.prior_range, k);
    rep.gamma_factor = reg_lower_gamma_3half(rep.u_tilde);
    rep.zzb = prior_term + rep.gamma_factor * rep.crb->mean_variance();
    return rep;
}

std::vector<double> default_oracle_grid(double zeta, std::size_t n) {
    std::vector<double> g;
    g.reserve(n + 1);
    g.push_back(0.0);
    const double lo = std::log(zeta * 1e-9);
    const double hi = std::log(zeta);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = n == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        g.push_back(std::exp(lo + t * (hi - lo)));
    }
    g.back() = zeta;
    return g;
}

OracleResult zzb_numeric_oracle(const Scenario& s, const Beamformer& w, const OracleOptions& opts) {
    if (s.num_targets() != 1) throw DomainError("zzb_numeric_oracle supports a single target only");
    const double zeta = s.prior_range;
    const auto grid = opts.h_grid.empty() ? default_oracle_grid(zeta) : opts.h_grid;
    if (grid.size() < 2) throw DomainError("oracle h-grid needs at least two knots");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0.0 || grid[i] > zeta * (1.0 + 1e-12)) throw DomainError("oracle h-grid must lie in [0, zeta]");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("oracle h-grid must be strictly increasing");
    }

    const double power = target_effective_power(s.targets.front(), w);
    const std::array<double, 1> powers{power};
    std::size_t evals = 0;
    auto integrand = [&](double h) {
        const double kernel = h * (1.0 - h / zeta);
        if (kernel <= 0.0) return 0.0;
        // The pair straddles the prior centre; at h = pi the angles hit +-pi/2.
        if (0.5 * h >= std::numbers::pi / 2) return 0.0;
        const std::array<double, 1> lo{-0.5 * h};
        const std::array<double, 1> hi{0.5 * h};
        const auto r0 = covariance_from_powers(s.m_rx, lo, powers, s.noise_var_sense);
        const auto r1 = covariance_from_powers(s.m_rx, hi, powers, s.noise_var_sense);
        ++evals;
        return kernel * pmin_general(r0, r1, s.snapshots);
    };

    std::vector<double> f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) f[i] = integrand(grid[i]);
    double coarse = 0.0;
    double fine = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double step = grid[i] - grid[i - 1];
        const double mid = integrand(0.5 * (grid[i] + grid[i - 1]));
        coarse += 0.5 * step * (f[i - 1] + f[i]);
        fine += 0.25 * step * (f[i - 1] + 2.0 * mid + f[i]);
    }
    if (std::abs(fine - coarse) > opts.refinement_tolerance * std::abs(fine)) {
        throw GridTooCoarse("halving the h-grid step changed the numeric ZZB from " + std::to_string(coarse) +
                            " to " + std::to_string(fine));
    }
    return OracleResult{fine, coarse, evals};
}

}  // namespace isac
