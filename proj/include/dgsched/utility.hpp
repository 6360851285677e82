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

#include <string>
#include <string_view>

namespace dgs {

// Strictly concave, increasing per-flow utility on normalized rates in [0,1].
//
//   log1p:     U(x) = w ln(1 + x),   U'(x) = w / (1 + x),  U'^-1(q) = w/q - 1
//   quadratic: U(x) = w (x - x^2/2), U'(x) = w (1 - x),    U'^-1(q) = 1 - q/w
//
// Both satisfy U(0) = 0.
class UtilityFunction {
 public:
  enum class Kind { kLog1p, kQuadratic };

  UtilityFunction() = default;
  UtilityFunction(Kind kind, double weight);

  static UtilityFunction Parse(std::string_view kind, double weight);

  Kind kind() const { return kind_; }
  double weight() const { return weight_; }
  std::string_view name() const;

  double value(double x) const;
  double derivative(double x) const;
  // Exact functional inverse of derivative(); may return values outside
  // [0,1]. Requires q > 0.
  double inverse_derivative(double q) const;

  friend bool operator==(const UtilityFunction&, const UtilityFunction&) = default;

 private:
  Kind kind_ = Kind::kLog1p;
  double weight_ = 1.0;
};

}  // namespace dgs
