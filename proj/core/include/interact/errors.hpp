// Copyright 2026 The Interact Authors.
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

namespace interact {

// Invalid argument values: infeasible counts, out-of-range parameters,
// malformed input files.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Shape mismatch between related inputs (e.g. covariate vector length vs d).
class DimensionError : public ParameterError {
 public:
  explicit DimensionError(const std::string& what) : ParameterError(what) {}
};

// A documented API precondition was violated by the caller.
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

// An enumeration cap was exceeded; the request is valid but too large for
// the exact/brute-force path.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A fit was requested on data that cannot determine the parameters.
class DegenerateFitError : public std::runtime_error {
 public:
  explicit DegenerateFitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace interact
