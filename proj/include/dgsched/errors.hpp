// Copyright 2026 The dgsched Authors
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

namespace dgs {

// Bad user input: unknown link ids, malformed documents, mismatched vector
// lengths.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact enumeration refused because the network exceeds the link guard.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No directed path between a flow's endpoints.
class RoutingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation invoked in the wrong lifecycle state (e.g. stepping a finished
// simulation).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An algorithmic invariant was broken. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dgs
