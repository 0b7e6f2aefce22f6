// Copyright 2026 The curlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace curlab {

// Base for every error the library raises. Each subclass maps onto one
// status code of the C API.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input to an operation (shape mismatch, out-of-range argument).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent data (CSV cells, split sizes, label ranges).
class DataError : public Error {
 public:
  using Error::Error;
};

// Config validation failure. `field()` is the dotted path, e.g. "pacing.delta".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Non-finite loss or gradient during optimization.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace curlab
