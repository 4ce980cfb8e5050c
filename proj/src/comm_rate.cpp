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

#include "isac/comm_rate.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "isac/special_functions.hpp"

namespace isac {

double mean_receive_snr(const CommChannel& ch, const Beamformer& w) {
    return ch.mean_gain * beam_gain(ch.theta_c, w) / ch.noise_var;
}

double instantaneous_rate(Complex alpha_c, const CommChannel& ch, const Beamformer& w) {
    return std::log2(1.0 + std::norm(alpha_c) * beam_gain(ch.theta_c, w) / ch.noise_var);
}

double ergodic_rate_closed(double mean_snr) {
    if (!(mean_snr > 0.0)) throw DomainError("ergodic_rate_closed: mean SNR must be > 0");
    return std::numbers::log2e * exp_integral_e1_scaled(1.0 / mean_snr);
}

double rate_at_mean_channel(double mean_snr) {
    if (!(mean_snr >= 0.0)) throw DomainError("rate_at_mean_channel: mean SNR must be >= 0");
    return std::log2(1.0 + mean_snr);
}

RateEstimate ergodic_rate_mc(const CommChannel& ch, const Beamformer& w, std::size_t n_samples, std::uint64_t seed) {
    if (n_samples < 100) throw DomainError("ergodic_rate_mc: at least 100 samples required");
    if (!(ch.mean_gain >= 0.0)) throw DomainError("ergodic_rate_mc: mean gain must be >= 0");
    const double snr_scale = beam_gain(ch.theta_c, w) / ch.noise_var;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> component(0.0, std::sqrt(0.5 * ch.mean_gain));
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double re = component(rng);
        const double im = component(rng);
        const double r = std::log2(1.0 + (re * re + im * im) * snr_scale);
        const double dx = r - mean;
        mean += dx / static_cast<double>(i + 1);
        m2 += dx * (r - mean);
    }
    const double n = static_cast<double>(n_samples);
    const double var = m2 / (n - 1.0);
    return RateEstimate{mean, std::sqrt(var / n)};
}

}  // namespace isac
