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

#include "dgsched/utility.hpp"

#include <cmath>
#include <string>

#include "dgsched/errors.hpp"

namespace dgs {

UtilityFunction::UtilityFunction(Kind kind, double weight) : kind_(kind), weight_(weight) {
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw InputError("utility weight must be positive and finite, got " + std::to_string(weight));
  }
}

UtilityFunction UtilityFunction::Parse(std::string_view kind, double weight) {
  if (kind == "log1p") return UtilityFunction(Kind::kLog1p, weight);
  if (kind == "quadratic") return UtilityFunction(Kind::kQuadratic, weight);
  throw InputError("unknown utility kind '" + std::string(kind) + "' (expected log1p or quadratic)");
}

std::string_view UtilityFunction::name() const {
  return kind_ == Kind::kLog1p ? "log1p" : "quadratic";
}

double UtilityFunction::value(double x) const {
  switch (kind_) {
    case Kind::kLog1p:
      return weight_ * std::log1p(x);
    case Kind::kQuadratic:
      return weight_ * (x - 0.5 * x * x);
  }
  return 0.0;
}

double UtilityFunction::derivative(double x) const {
  switch (kind_) {
    case Kind::kLog1p:
      return weight_ / (1.0 + x);
    case Kind::kQuadratic:
      return weight_ * (1.0 - x);
  }
  return 0.0;
}

double UtilityFunction::inverse_derivative(double q) const {
  switch (kind_) {
    case Kind::kLog1p:
      return weight_ / q - 1.0;
    case Kind::kQuadratic:
      return 1.0 - q / weight_;
  }
  return 0.0;
}

}  // namespace dgs
