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

#include "isac/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "isac/errors.hpp"

namespace isac {

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double log_q_function(double x) {
    // erfc underflows near x = 37.5; switch to the asymptotic tail well before that.
    if (x < 30.0) return std::log(q_function(x));
    // Q(x) = phi(x)/x * (1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8 - ...)
    const double inv2 = 1.0 / (x * x);
    double term = 1.0;
    double series = 1.0;
    for (int k = 1; k <= 6; ++k) {
        term *= -(2.0 * k - 1.0) * inv2;
        series += term;
    }
    return -0.5 * x * x - std::log(x) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
}

double reg_lower_gamma_3half(double u) {
    if (!(u >= 0.0)) throw DomainError("reg_lower_gamma_3half: u = " + std::to_string(u) + " must be >= 0");
    if (u == 0.0) return 0.0;
    if (std::isinf(u)) return 1.0;
    constexpr double a = 1.5;
    if (u < 1.5) {
        // gamma(a,u) = u^a e^-u sum_n u^n / (a (a+1) ... (a+n))
        double term = 1.0 / a;
        double sum = term;
        for (int n = 1; n < 200; ++n) {
            term *= u / (a + n);
            sum += term;
            if (term < sum * 1e-17) break;
        }
        return std::exp(a * std::log(u) - u - std::lgamma(a)) * sum;
    }
    // Upper tail has a closed form without cancellation:
    // Q(3/2,u) = erfc(sqrt u) + (2/sqrt pi) sqrt(u) e^-u
    const double s = std::sqrt(u);
    const double upper = std::erfc(s) + 2.0 * std::numbers::inv_sqrtpi * s * std::exp(-u);
    return 1.0 - upper;
}

namespace {

// e^x E1(x) by the continued fraction, modified Lentz. Valid for x > 1.
double e1_continued_fraction(double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h;
}

}  // namespace

double exp_integral_e1_scaled(double x) {
    if (!(x > 0.0)) throw DomainError("exp_integral_e1_scaled: x = " + std::to_string(x) + " must be > 0");
    if (x <= 1.0) return std::exp(x) * exp_integral_e1(x);
    return e1_continued_fraction(x);
}

double exp_integral_e1(double x) {
    if (!(x > 0.0)) throw DomainError("exp_integral_e1: x = " + std::to_string(x) + " must be > 0");
    if (x <= 1.0) {
        // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
        double sum = 0.0;
        double fact_term = 1.0;
        for (int k = 1; k < 60; ++k) {
            fact_term *= -x / k;
            const double t = -fact_term / k;
            sum += t;
            if (std::abs(t) < std::abs(sum) * 1e-18) break;
        }
        return -kEulerGamma - std::log(x) + sum;
    }
    return e1_continued_fraction(x) * std::exp(-x);
}

}  // namespace isac
