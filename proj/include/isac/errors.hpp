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

#include <stdexcept>
#include <string>

namespace isac {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A factorization pivot fell below the relative tolerance.
class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Fisher information is singular or too ill-conditioned to invert.
class SingularFisher : public Error {
public:
    using Error::Error;
};

/// The SJB combination cancelled to (almost) the zero vector.
class DegenerateCombination : public Error {
public:
    using Error::Error;
};

/// Trapezoid refinement moved the numeric ZZB by more than the tolerance.
class GridTooCoarse : public Error {
public:
    using Error::Error;
};

/// Rejection sampling could not place targets at the requested separation.
class InfeasibleSeparation : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class TooFewPoints : public Error {
public:
    using Error::Error;
};

/// Invalid configuration; the message names the offending key.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace isac
