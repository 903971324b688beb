// Copyright 2026 The supaq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUPAQ_ERRORS_H
#define SUPAQ_ERRORS_H

#include <stdexcept>
#include <string>

namespace supaq {

/// Base class of every domain error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A matrix failed the density-matrix invariants (Hermitian, unit trace, PSD).
class InvalidStateError : public Error {
   public:
    using Error::Error;
};

class DimensionError : public Error {
   public:
    using Error::Error;
};

/// Input sits on the boundary where a closed form or gradient is undefined (pure state, rank-deficient σ).
class SingularInputError : public Error {
   public:
    using Error::Error;
};

/// Kraus set is not trace preserving. `residual` is ‖Σ N_k† N_k − I‖_max.
class InvalidChannelError : public Error {
   public:
    InvalidChannelError(const std::string &what, double residual) : Error(what), residual(residual) {
    }
    double residual;
};

class ParseError : public Error {
   public:
    using Error::Error;
};

class ParameterError : public Error {
   public:
    using Error::Error;
};

class DegenerateConfigurationError : public Error {
   public:
    using Error::Error;
};

class UnsupportedError : public Error {
   public:
    using Error::Error;
};

}  // namespace supaq

#endif
