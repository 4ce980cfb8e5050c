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

namespace isac {

/// Right tail of the standard normal, 0.5 * erfc(x / sqrt 2).
double q_function(double x);

/// ln Q(x), finite for every finite x (no underflow for large x).
double log_q_function(double x);

/// Regularized lower incomplete gamma P(3/2, u). Throws DomainError for u < 0.
double reg_lower_gamma_3half(double u);

/// Exponential integral E1(x) for x > 0. Throws DomainError otherwise.
double exp_integral_e1(double x);

/// e^x E1(x), finite for large x where E1 alone underflows.
double exp_integral_e1_scaled(double x);

inline constexpr double kEulerGamma = 0.57721566490153286061;

}  // namespace isac
