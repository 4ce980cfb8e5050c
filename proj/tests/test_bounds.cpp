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
#include <random>

#include "isac/array_model.hpp"
#include "isac/bounds.hpp"
#include "isac/errors.hpp"
#include "isac/special_functions.hpp"
#include "oracles.hpp"

using namespace isac;

namespace {

// One target, matched transmit beam; |gamma|^2 chosen so that the received
// power |gamma|^2 |a^H w|^2 equals p.
Scenario single(double theta_r, double p, double sigma2 = 1.0, int snapshots = 100) {
    Scenario s;
    s.prior_range = deg_to_rad(178.0);
    s.snapshots = snapshots;
    s.noise_var_sense = sigma2;
    s.targets = {Target{Complex(std::sqrt(p / 8.0), 0.0), 0.0, theta_r}};
    return s;
}

Beamformer matched(const Scenario& s) { return steered_beamformer(s.targets.front().theta_s, s.m_tx, 1.0); }

Scenario default_k1(double snr_db) {
    Scenario s;
    s.prior_range = deg_to_rad(60.0);
    s.targets = {Target{Complex(std::sqrt(std::pow(10.0, snr_db / 10.0)), 0.0), 0.0, 0.0}};
    return s;
}

}  // namespace

TEST_CASE("single-target CRB equals the closed form") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(-1.2, 1.2);
    std::uniform_real_distribution<double> db(-30.0, 30.0);
    for (int t = 0; t < 20; ++t) {
        const double th = ang(rng);
        const double p = std::pow(10.0, db(rng) / 10.0);
        const Scenario s = single(th, p);
        const double got = crb_stochastic(s, matched(s)).entries(0, 0);
        const double ref = oracle::crb_single_target(th, p, 1.0, 8, 100);
        CHECK(std::abs(got - ref) / ref < 1e-8);
    }
}

TEST_CASE("CRB at broadside with unit power and noise") {
    const Scenario s = single(0.0, 1.0);
    const double crb = crb_stochastic(s, matched(s)).entries(0, 0);
    // 12 * 9 / (200 pi^2 * 64 * 63)
    CHECK(crb == doctest::Approx(108.0 / (200.0 * M_PI * M_PI * 4032.0)).epsilon(1e-10));
    CHECK(crb == doctest::Approx(1.357e-5).epsilon(1e-3));
}

TEST_CASE("CRB scales with 1/L and is invariant under joint power scaling") {
    Scenario s;
    s.prior_range = deg_to_rad(120.0);
    s.targets = {Target{Complex(0.3, 0.1), -0.4, -0.5}, Target{Complex(0.2, -0.2), 0.0, 0.05},
                 Target{Complex(0.5, 0.0), 0.4, 0.6}};
    const auto w = multibeam_beamformer(std::vector<double>{-0.4, 0.0, 0.4}, 8, 1.0);
    const auto a = crb_stochastic(s, w).entries;
    Scenario s2 = s;
    s2.snapshots *= 2;
    const auto b = crb_stochastic(s2, w).entries;
    Scenario s3 = s;
    s3.noise_var_sense *= 7.3;
    for (auto& t : s3.targets) t.gamma *= std::sqrt(7.3);
    const auto c = crb_stochastic(s3, w).entries;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(b(i, j) == doctest::Approx(a(i, j) / 2.0).epsilon(1e-12));
            CHECK(std::abs(c(i, j) - a(i, j)) <= 1e-10 * std::abs(a(i, j)) + 1e-18);
        }
    for (std::size_t i = 0; i < 3; ++i) CHECK(a(i, i) > 0.0);
}

TEST_CASE("CRB rejects singular configurations") {
    Scenario s = single(0.1, 1.0);
    s.targets.push_back(s.targets.front());
    CHECK_THROWS_AS(crb_stochastic(s, matched(s)), SingularFisher);
    Scenario empty = single(0.1, 1.0);
    empty.targets.clear();
    CHECK_THROWS_AS(crb_stochastic(empty, steered_beamformer(0.0, 8, 1.0)), SingularFisher);
    Scenario silent = single(0.1, 1.0);
    silent.targets.front().gamma = 0.0;
    CHECK_THROWS_AS(crb_stochastic(silent, matched(silent)), SingularFisher);
}

TEST_CASE("pmin_general of identical hypotheses is one half") {
    const Scenario s = single(0.2, 3.0);
    const auto r = received_covariance(s, matched(s));
    CHECK(pmin_general(r, r, 100) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("pmin_general and pmin_null agree for orthogonal steering vectors") {
    for (double eta : {1.0, 0.1, 0.01}) {
        Scenario s = single(0.0, eta * 1.0);
        const auto w = matched(s);
        // sin offset 2/M puts the shifted steering vector in the first null.
        const double delta = std::asin(2.0 / 8.0);
        const std::vector<double> d{delta};
        const auto r = received_covariance(s, w);
        const auto rd = perturbed_covariance(s, w, d);
        const std::vector<double> etas{eta};
        const double general = pmin_general(r, rd, 100);
        const double null = pmin_null(etas, 8, 100);
        CHECK(general == doctest::Approx(null).epsilon(1e-6));
    }
}

TEST_CASE("pmin_null values and monotonicity") {
    const std::vector<double> zero{0.0};
    CHECK(pmin_null(zero, 8, 100) == 0.5);
    const std::vector<double> small{0.01};
    // x = 0.08/2.08, Q-arg sqrt(200 x^2)
    const double x = 0.08 / 2.08;
    const double expo = 100.0 * (std::log(1.08) - 2.0 * std::log(1.04) + x * x);
    const double ref = static_cast<double>(oracle::q_series(std::sqrt(200.0 * x * x))) * std::exp(expo);
    CHECK(pmin_null(small, 8, 100) == doctest::Approx(ref).epsilon(1e-10));
    CHECK(pmin_null(small, 8, 100) == doctest::Approx(0.2932).epsilon(1e-3));
    double prev = 0.5;
    for (double le = -4.0; le <= 2.0; le += 0.1) {
        const std::vector<double> e{std::pow(10.0, le)};
        const double v = pmin_null(e, 8, 100);
        CHECK(v < prev);
        prev = v;
    }
    const std::vector<double> huge{1e6};
    CHECK(std::isfinite(log_pmin_null(huge, 8, 100)));
    CHECK(log_pmin_null(huge, 8, 100) < -700.0);
    const std::vector<double> neg{-1.0};
    CHECK_THROWS_AS(pmin_null(neg, 8, 100), DomainError);
}

TEST_CASE("pmin_mainlobe") {
    CrbMatrix crb{RealMatrix::identity(1) * 4.0};
    const std::vector<double> d{2.0};
    CHECK(pmin_mainlobe(d, crb) == doctest::Approx(q_function(0.5)));
}

TEST_CASE("apriori bound") {
    CHECK(rad_to_deg(std::sqrt(apriori_bound(1, deg_to_rad(60.0)))) == doctest::Approx(17.3205).epsilon(1e-5));
    CHECK(apriori_bound(1, 1.0) == doctest::Approx(1.0 / 12.0));
    CHECK(apriori_bound(3, 2.0) == doctest::Approx(3.0 * 4.0 / (16.0 * 5.0)));
    CHECK_THROWS_AS(apriori_bound(0, 1.0), DomainError);
}

TEST_CASE("closed-form ZZB is bracketed by the CRB and the prior variance") {
    double prev = 1e9;
    for (double snr = -60.0; snr <= 20.0; snr += 2.0) {
        const Scenario s = default_k1(snr);
        const auto rep = zzb_closed(s, matched(s));
        CHECK(rep.zzb <= rep.apb * (1.0 + 1e-12));
        CHECK(rep.zzb <= prev * 1.01);
        CHECK(rep.gamma_factor == doctest::Approx(reg_lower_gamma_3half(rep.u_tilde)));
        CHECK(rep.zzb == doctest::Approx(2.0 * rep.p_min_null * rep.apb + rep.gamma_factor * rep.crb->mean_variance()));
        prev = rep.zzb;
    }
    const Scenario lo = default_k1(-60.0);
    const auto r = zzb_closed(lo, matched(lo));
    CHECK(r.zzb / r.apb >= 0.99);
    const Scenario hi = default_k1(20.0);
    const auto h = zzb_closed(hi, matched(hi));
    CHECK(h.zzb / h.crb->mean_variance() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("degraded report when the Fisher matrix is singular") {
    Scenario s = default_k1(0.0);
    s.targets.push_back(s.targets.front());
    const auto w = matched(s);
    CHECK_THROWS_AS(zzb_closed(s, w), SingularFisher);
    const auto rep = zzb_closed(s, w, ZzbOptions{true});
    CHECK(rep.degraded);
    CHECK_FALSE(rep.crb.has_value());
    CHECK(rep.zzb == doctest::Approx(2.0 * rep.p_min_null * rep.apb));
}

TEST_CASE("numeric oracle agrees with the closed form at the extremes") {
    for (double snr : {-50.0, -40.0}) {
        const Scenario s = default_k1(snr);
        const auto w = matched(s);
        const double closed = zzb_closed(s, w).zzb;
        const double num = zzb_numeric_oracle(s, w).zzb;
        CHECK(std::abs(closed - num) / num <= 0.10);
    }
    for (double snr : {10.0, 20.0}) {
        const Scenario s = default_k1(snr);
        const auto w = matched(s);
        const double closed = zzb_closed(s, w).zzb;
        const double num = zzb_numeric_oracle(s, w).zzb;
        CHECK(std::abs(closed - num) / num <= 0.25);
    }
}

TEST_CASE("numeric oracle refuses a grid that is too coarse") {
    const Scenario s = default_k1(10.0);
    OracleOptions opt;
    opt.h_grid = {0.0, deg_to_rad(30.0), deg_to_rad(60.0)};
    CHECK_THROWS_AS(zzb_numeric_oracle(s, matched(s), opt), GridTooCoarse);
}

TEST_CASE("numeric oracle needs a single target") {
    Scenario s = default_k1(0.0);
    s.targets.push_back(Target{Complex(1.0, 0.0), 0.3, 0.3});
    CHECK_THROWS_AS(zzb_numeric_oracle(s, matched(s)), DomainError);
}

TEST_CASE("default oracle grid") {
    const auto g = default_oracle_grid(1.0, 100);
    REQUIRE(g.size() == 101);
    CHECK(g.front() == 0.0);
    CHECK(g[1] == doctest::Approx(1e-9));
    CHECK(g.back() == doctest::Approx(1.0));
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}
