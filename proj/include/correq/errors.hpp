// Copyright 2026 The correq Authors
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

#ifndef CORREQ_ERRORS_HPP_
#define CORREQ_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace correq {

// Malformed or inconsistent inputs (bad files, dimension mismatches,
// out-of-range indices, non-measurable profiles).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Requested enumeration or grid exceeds a configured cap.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Operation is well-posed but unsupported for the given object
// (e.g. fixed-point search over a non-convex or non-closed feasible set).
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// A call violated a documented precondition of an operation.
class DomainError : public std::logic_error {
 public:
  explicit DomainError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace correq

#endif  // CORREQ_ERRORS_HPP_
