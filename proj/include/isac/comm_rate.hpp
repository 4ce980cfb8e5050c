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

#include <cstddef>
#include <cstdint>

#include "isac/array_model.hpp"

namespace isac {

/// LOS downlink with a circularly-symmetric Gaussian coefficient alpha_c.
struct CommChannel {
    double theta_c = 0.0;    ///< radians
    double mean_gain = 1.0;  ///< E|alpha_c|^2
    double noise_var = 1.0;
};

/// sigma_alpha^2 |a_Tx(theta_c)^H w|^2 / sigma_c^2
double mean_receive_snr(const CommChannel& ch, const Beamformer& w);

/// log2(1 + |alpha_c|^2 |a_Tx(theta_c)^H w|^2 / sigma_c^2)
double instantaneous_rate(Complex alpha_c, const CommChannel& ch, const Beamformer& w);

/// E log2(1 + mean_snr X) for X ~ Exp(1): log2(e) e^{1/mean_snr} E1(1/mean_snr).
double ergodic_rate_closed(double mean_snr);

/// Rate with |alpha_c|^2 fixed at its mean, log2(1 + mean_snr).
double rate_at_mean_channel(double mean_snr);

struct RateEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Sample mean and standard error of instantaneous_rate over i.i.d. alpha_c draws.
/// Deterministic for a given seed.
RateEstimate ergodic_rate_mc(const CommChannel& ch, const Beamformer& w, std::size_t n_samples, std::uint64_t seed);

}  // namespace isac
