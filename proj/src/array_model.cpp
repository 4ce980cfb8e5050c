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

#include "isac/array_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace isac {

namespace {

void check_angle(double theta, const char* what) {
    if (!std::isfinite(theta) || std::abs(theta) >= std::numbers::pi / 2) {
        throw DomainError(std::string(what) + " = " + std::to_string(theta) + " rad is outside (-pi/2, pi/2)");
    }
}

void check_count(int m, const char* what) {
    if (m < 1) throw DomainError(std::string(what) + " must be >= 1");
}

ComplexVector unit_steering(double theta, int m) {
    auto a = steering_vector(theta, m);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (auto& x : a) x *= scale;
    return a;
}

}  // namespace

void Scenario::validate() const {
    if (m_tx < 1) throw DomainError("m_tx >= 1 required");
    if (m_rx < 2) throw DomainError("m_rx >= 2 required");
    if (snapshots < 1) throw DomainError("snapshots >= 1 required");
    if (!(noise_var_sense > 0.0)) throw DomainError("noise_var_sense > 0 required");
    if (!(noise_var_comm > 0.0)) throw DomainError("noise_var_comm > 0 required");
    if (!(power_budget > 0.0)) throw DomainError("power_budget > 0 required");
    if (!(prior_range > 0.0 && prior_range <= std::numbers::pi)) {
        throw DomainError("prior_range must lie in (0, pi]");
    }
    check_angle(theta_c, "theta_c");
    for (std::size_t k = 0; k < targets.size(); ++k) {
        const auto& t = targets[k];
        const std::string idx = "targets[" + std::to_string(k) + "]";
        check_angle(t.theta_s, (idx + ".theta_s").c_str());
        check_angle(t.theta_r, (idx + ".theta_r").c_str());
        if (std::abs(t.theta_r) > 0.5 * prior_range * (1.0 + 1e-12)) {
            throw DomainError(idx + ".theta_r lies outside the prior interval [-zeta/2, zeta/2]");
        }
    }
}

Beamformer::Beamformer(ComplexVector direction, double power) : w_(std::move(direction)), power_(power) {
    if (!(power > 0.0)) throw DomainError("beamformer power must be > 0");
    const double n2 = squared_norm(w_);
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw DomainError("beamformer direction has zero norm");
    const double scale = std::sqrt(power / n2);
    for (auto& x : w_) x *= scale;
}

ComplexVector steering_vector(double theta, int m) {
    check_angle(theta, "theta");
    check_count(m, "antenna count");
    const double phase = std::numbers::pi * std::sin(theta);
    ComplexVector a(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) a[k] = std::polar(1.0, phase * k);
    return a;
}

ComplexVector steering_derivative(double theta, int m) {
    check_angle(theta, "theta");
    check_count(m, "antenna count");
    const double phase = std::numbers::pi * std::sin(theta);
    const double slope = std::numbers::pi * std::cos(theta);
    ComplexVector d(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) d[k] = Complex(0.0, slope * k) * std::polar(1.0, phase * k);
    return d;
}

ComplexMatrix steering_matrix(std::span<const double> thetas, int m) {
    ComplexMatrix a(static_cast<std::size_t>(m), thetas.size());
    for (std::size_t j = 0; j < thetas.size(); ++j) {
        const auto col = steering_vector(thetas[j], m);
        for (int i = 0; i < m; ++i) a(i, j) = col[i];
    }
    return a;
}

ComplexMatrix steering_derivative_matrix(std::span<const double> thetas, int m) {
    ComplexMatrix d(static_cast<std::size_t>(m), thetas.size());
    for (std::size_t j = 0; j < thetas.size(); ++j) {
        const auto col = steering_derivative(thetas[j], m);
        for (int i = 0; i < m; ++i) d(i, j) = col[i];
    }
    return d;
}

Beamformer steered_beamformer(double theta, int m_tx, double power) {
    return Beamformer(steering_vector(theta, m_tx), power);
}

Beamformer sjb_beamformer(double alpha, double theta_c, double theta_s, int m_tx, double power) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
    const auto wc = unit_steering(theta_c, m_tx);
    const auto ws = unit_steering(theta_s, m_tx);
    ComplexVector mix(wc.size());
    for (std::size_t k = 0; k < mix.size(); ++k) mix[k] = alpha * wc[k] + (1.0 - alpha) * ws[k];
    if (std::sqrt(squared_norm(mix)) < 1e-12) {
        throw DegenerateCombination("SJB combination cancels at alpha = " + std::to_string(alpha));
    }
    return Beamformer(std::move(mix), power);
}

Beamformer multibeam_beamformer(std::span<const double> thetas, int m_tx, double power) {
    if (thetas.empty()) throw DomainError("multibeam needs at least one angle");
    ComplexVector sum(static_cast<std::size_t>(m_tx));
    for (double th : thetas) {
        const auto u = unit_steering(th, m_tx);
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += u[k];
    }
    if (std::sqrt(squared_norm(sum)) < 1e-12) throw DegenerateCombination("multibeam sum cancels");
    return Beamformer(std::move(sum), power);
}

double beam_gain(double theta, const Beamformer& w) {
    const auto a = steering_vector(theta, static_cast<int>(w.size()));
    return std::norm(inner(a, w.weights()));
}

double target_effective_power(const Target& t, const Beamformer& w) {
    return std::norm(t.gamma) * beam_gain(t.theta_s, w);
}

double sensing_snr(const Target& t, const Beamformer& w, double noise_var) {
    return target_effective_power(t, w) / noise_var;
}

std::vector<double> effective_powers(const Scenario& s, const Beamformer& w) {
    std::vector<double> p;
    p.reserve(s.targets.size());
    for (const auto& t : s.targets) p.push_back(target_effective_power(t, w));
    return p;
}

std::vector<double> sensing_snrs(const Scenario& s, const Beamformer& w) {
    auto p = effective_powers(s, w);
    for (auto& x : p) x /= s.noise_var_sense;
    return p;
}

std::vector<double> receive_angles(const Scenario& s) {
    std::vector<double> th;
    th.reserve(s.targets.size());
    for (const auto& t : s.targets) th.push_back(t.theta_r);
    return th;
}

HermitianMatrix covariance_from_powers(int m_rx, std::span<const double> thetas, std::span<const double> powers,
                                       double noise_var) {
    if (thetas.size() != powers.size()) throw DomainError("one power per angle required");
    ComplexMatrix r = ComplexMatrix::identity(static_cast<std::size_t>(m_rx)) * Complex(noise_var, 0.0);
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        const auto a = steering_vector(thetas[k], m_rx);
        r += outer(a, a) * Complex(powers[k], 0.0);
    }
    return HermitianMatrix(r);
}

HermitianMatrix received_covariance(const Scenario& s, const Beamformer& w) {
    const auto th = receive_angles(s);
    const auto p = effective_powers(s, w);
    return covariance_from_powers(s.m_rx, th, p, s.noise_var_sense);
}

HermitianMatrix perturbed_covariance(const Scenario& s, const Beamformer& w, std::span<const double> delta) {
    if (delta.size() != s.targets.size()) throw DomainError("one angle offset per target required");
    auto th = receive_angles(s);
    for (std::size_t k = 0; k < th.size(); ++k) th[k] += delta[k];
    const auto p = effective_powers(s, w);
    return covariance_from_powers(s.m_rx, th, p, s.noise_var_sense);
}

}  // namespace isac
