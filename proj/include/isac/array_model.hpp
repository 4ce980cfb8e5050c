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

#include <span>
#include <vector>

#include "isac/numerics.hpp"

namespace isac {

/// One point reflector. Angles in radians.
struct Target {
    Complex gamma{1.0, 0.0};
    double theta_s = 0.0;  ///< AoD at the transmitter
    double theta_r = 0.0;  ///< AoA at the sensing receiver
};

/// Full bistatic system description. Angles in radians, powers linear.
struct Scenario {
    int m_tx = 8;
    int m_rx = 8;
    int snapshots = 100;
    std::vector<Target> targets;
    double noise_var_sense = 1.0;
    double noise_var_comm = 1.0;
    double power_budget = 1.0;
    double prior_range = 0.0;  ///< width of the uniform AoA prior
    double theta_c = 0.0;

    /// Throws DomainError naming the first violated invariant.
    void validate() const;

    [[nodiscard]] std::size_t num_targets() const { return targets.size(); }
};

/// Transmit weights with ||w||^2 equal to the power budget.
class Beamformer {
public:
    /// Scales direction to squared norm power. Throws DomainError on a zero direction.
    Beamformer(ComplexVector direction, double power);

    [[nodiscard]] const ComplexVector& weights() const { return w_; }
    [[nodiscard]] double power() const { return power_; }
    [[nodiscard]] std::size_t size() const { return w_.size(); }

private:
    ComplexVector w_;
    double power_;
};

/// ULA with half-wavelength spacing: entry k is exp(i pi k sin theta).
ComplexVector steering_vector(double theta, int m);

/// d/dtheta of steering_vector.
ComplexVector steering_derivative(double theta, int m);

/// Columns are steering vectors at the given angles.
ComplexMatrix steering_matrix(std::span<const double> thetas, int m);
ComplexMatrix steering_derivative_matrix(std::span<const double> thetas, int m);

Beamformer steered_beamformer(double theta, int m_tx, double power);

/// Normalized convex combination of unit-norm beams toward theta_c (weight alpha)
/// and theta_s (weight 1 - alpha).
Beamformer sjb_beamformer(double alpha, double theta_c, double theta_s, int m_tx, double power);

/// Equal-weight sum of unit-norm beams toward every angle, renormalized.
Beamformer multibeam_beamformer(std::span<const double> thetas, int m_tx, double power);

/// |a_Tx(theta)^H w|^2
double beam_gain(double theta, const Beamformer& w);

/// |gamma|^2 |a_Tx(theta_s)^H w|^2
double target_effective_power(const Target& t, const Beamformer& w);

double sensing_snr(const Target& t, const Beamformer& w, double noise_var);

std::vector<double> effective_powers(const Scenario& s, const Beamformer& w);
std::vector<double> sensing_snrs(const Scenario& s, const Beamformer& w);

/// sum_k p_k a(theta_k) a(theta_k)^H + noise_var I
HermitianMatrix covariance_from_powers(int m_rx, std::span<const double> thetas, std::span<const double> powers,
                                       double noise_var);

HermitianMatrix received_covariance(const Scenario& s, const Beamformer& w);

/// Covariance with every AoA shifted by the matching entry of delta; powers unchanged.
HermitianMatrix perturbed_covariance(const Scenario& s, const Beamformer& w, std::span<const double> delta);

std::vector<double> receive_angles(const Scenario& s);

inline constexpr double deg_to_rad(double deg) { return deg * 0.017453292519943295769; }
inline constexpr double rad_to_deg(double rad) { return rad * 57.295779513082320877; }

}  // namespace isac
