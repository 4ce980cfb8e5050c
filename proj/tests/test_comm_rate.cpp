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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isac/array_model.hpp"
#include "isac/comm_rate.hpp"
#include "isac/errors.hpp"
#include "oracles.hpp"

using namespace isac;

namespace {

// Unit beam gain toward theta_c so that the mean receive SNR is the channel's.
Beamformer unit_gain_beam(double theta_c) { return steered_beamformer(theta_c, 8, 1.0 / 8.0); }

}  // namespace

TEST_CASE("ergodic rate closed form against quadrature") {
    for (double rho : {0.01, 1.0, 10.0, 100.0, 1e4}) {
        CHECK(ergodic_rate_closed(rho) == doctest::Approx(oracle::ergodic_rate_quadrature(rho)).epsilon(1e-7));
    }
    CHECK(ergodic_rate_closed(100.0) == doctest::Approx(5.884).epsilon(0.01 / 5.884));
    CHECK_THROWS_AS(ergodic_rate_closed(0.0), DomainError);
}

TEST_CASE("Jensen: the ergodic rate never exceeds the rate at the mean channel") {
    for (double rho = 0.01; rho < 1e5; rho *= 3.0) CHECK(ergodic_rate_closed(rho) < rate_at_mean_channel(rho));
}

TEST_CASE("mean receive SNR includes the beam gain") {
    const CommChannel ch{0.5, 2.0, 0.5};
    const auto w = steered_beamformer(0.5, 8, 1.0);
    CHECK(mean_receive_snr(ch, w) == doctest::Approx(2.0 * 8.0 / 0.5));
    CHECK(instantaneous_rate(Complex(0.0, 1.0), ch, w) == doctest::Approx(std::log2(1.0 + 16.0)));
}

TEST_CASE("Monte Carlo rate within three standard errors of the closed form") {
    for (double rho : {1.0, 10.0, 100.0}) {
        const CommChannel ch{0.7, rho, 1.0};
        const auto est = ergodic_rate_mc(ch, unit_gain_beam(0.7), 100000, 42);
        CHECK(est.std_error > 0.0);
        CHECK(std::abs(est.mean - ergodic_rate_closed(rho)) <= 3.0 * est.std_error);
    }
}

TEST_CASE("Monte Carlo rate is reproducible for a seed") {
    const CommChannel ch{0.2, 10.0, 1.0};
    const auto a = ergodic_rate_mc(ch, unit_gain_beam(0.2), 1000, 9);
    const auto b = ergodic_rate_mc(ch, unit_gain_beam(0.2), 1000, 9);
    const auto c = ergodic_rate_mc(ch, unit_gain_beam(0.2), 1000, 10);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.mean != c.mean);
    CHECK_THROWS_AS(ergodic_rate_mc(ch, unit_gain_beam(0.2), 10, 9), DomainError);
}
