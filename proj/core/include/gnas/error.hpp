// Copyright 2026 The gnas Authors.
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

namespace gnas {

// Base for all errors raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid bounds, probabilities, sizes or an unparsable config document.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent graph input files.
class IngestionError : public Error {
 public:
  using Error::Error;
};

// A class has too few labeled nodes to be split.
class SplitError : public Error {
 public:
  using Error::Error;
};

// Unreadable, truncated or mismatched checkpoint.
class CheckpointError : public Error {
 public:
  using Error::Error;
};

// Raised by the fitness evaluator when a request would exceed the
// configured evaluation cap.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace gnas
