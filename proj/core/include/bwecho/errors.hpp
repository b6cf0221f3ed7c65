// Copyright 2026 The bwecho Authors
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

namespace bwecho {

// Violated contract on a lattice spec, protocol, or operation argument.
class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical breakdown: non-finite data or a failed decomposition.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Request exceeds a combinatorial policy limit (Fock-space oracle guards).
class CapacityExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid scenario configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bwecho
