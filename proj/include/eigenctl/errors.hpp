// Copyright 2026 The eigenctl Authors
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

namespace eigenctl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where the operation is defined
/// (n < 2, index out of range, non power-of-two register, ...).
class DomainError : public Error {
 public:
    using Error::Error;
};

/// Malformed or inconsistent input data: unnormalized states, non
/// skew-Hermitian generators, bad JSON fields.
class ValidationError : public Error {
 public:
    using Error::Error;
};

/// Amplitude found outside the physical n-level subspace of a padded register.
class LeakageError : public Error {
 public:
    using Error::Error;
};

/// The target state is not certified reachable from any eigenstate.
class NotSteerable : public Error {
 public:
    using Error::Error;
};

}  // namespace eigenctl
