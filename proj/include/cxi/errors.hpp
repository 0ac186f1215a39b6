// Copyright 2026 The cxi-toolkit Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace cxi {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operands have incompatible dimensions.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// A caller-supplied value is outside its documented domain.
struct InvalidArgument : Error {
    using Error::Error;
};

/// A constructed object violates one of its type invariants
/// (non-Hermitian density matrix, incomplete POVM, ...).
struct InvariantViolation : Error {
    using Error::Error;
};

/// A numerical procedure failed to converge or lost too much accuracy
/// (eigensolver failure, quadrature disagreement under node doubling).
struct NumericError : Error {
    using Error::Error;
};

/// The support condition required by an identity does not hold,
/// e.g. log of a singular operator where the state has weight.
struct SupportError : Error {
    using Error::Error;
};

}  // namespace cxi
