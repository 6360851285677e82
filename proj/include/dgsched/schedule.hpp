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

#include <cstddef>
#include <span>
#include <vector>

#include "dgsched/interference.hpp"
#include "dgsched/network.hpp"

namespace dgs {

// One nonnegative, finite price per link.
class PriceVector {
 public:
  PriceVector() = default;
  // Throws InputError on negative or non-finite entries.
  explicit PriceVector(std::vector<double> values);
  static PriceVector Zero(std::size_t n) { return PriceVector(std::vector<double>(n, 0.0)); }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::span<const double> span() const { return values_; }

  friend bool operator==(const PriceVector&, const PriceVector&) = default;

 private:
  std::vector<double> values_;
};

// Throws InputError unless p has one entry per link of net.
void check_price_length(const Network& net, const PriceVector& p);

// A valid K-matching together with its capacity-weighted price.
struct ScheduleSet {
  std::vector<LinkId> links;     // sorted ascending
  double weight = 0.0;           // sum of alpha_l * p_l over members
  std::vector<double> indicator; // alpha_l on members, 0 elsewhere

  bool contains(LinkId l) const;
};

ScheduleSet make_schedule(const Network& net, std::vector<LinkId> links, const PriceVector& p);

double schedule_weight(const Network& net, std::span<const LinkId> links, const PriceVector& p);

// Total order used by every greedy scheduler: larger alpha_l * p_l first,
// then smaller link id. `reverse_ties` flips the id rule and exists only to
// exercise negative controls.
struct LinkOrder {
  const Network* net;
  const PriceVector* prices;
  bool reverse_ties = false;

  double weight(LinkId l) const { return net->alpha(l) * (*prices)[l]; }
  // True when a precedes b.
  bool operator()(LinkId a, LinkId b) const {
    const double wa = weight(a), wb = weight(b);
    if (wa != wb) return wa > wb;
    return reverse_ties ? a > b : a < b;
  }
};

// Exact maximizer over a cached collection of maximal independent sets.
class OptimalScheduler {
 public:
  // Throws CapacityError above kEnumerationGuard links.
  OptimalScheduler(const Network& net, int k);

  // Ties are broken by the lexicographically smallest sorted id list.
  ScheduleSet schedule(const PriceVector& p) const;
  // Index into collection() of the set schedule(p) returns.
  std::size_t best_index(const PriceVector& p) const;

  const IndependentSetCollection& collection() const { return collection_; }

 private:
  const Network& net_;
  IndependentSetCollection collection_;
};

ScheduleSet optimal_schedule(const Network& net, int k, const PriceVector& p);

ScheduleSet centralized_greedy(const Network& net, int k, const PriceVector& p,
                               bool reverse_ties = false);

}  // namespace dgs
