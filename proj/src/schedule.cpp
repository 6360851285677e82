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

#include "dgsched/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dgsched/errors.hpp"

namespace dgs {

PriceVector::PriceVector(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      throw InputError("price " + std::to_string(i) + " must be finite and nonnegative, got " +
                       std::to_string(values_[i]));
    }
  }
}

void check_price_length(const Network& net, const PriceVector& p) {
  if (p.size() != net.num_links()) {
    throw InputError("price vector has " + std::to_string(p.size()) + " entries, expected " +
                     std::to_string(net.num_links()) + " (one per link)");
  }
}

bool ScheduleSet::contains(LinkId l) const {
  return std::binary_search(links.begin(), links.end(), l);
}

double schedule_weight(const Network& net, std::span<const LinkId> links, const PriceVector& p) {
  check_price_length(net, p);
  double w = 0.0;
  for (LinkId l : links) w += net.alpha(l) * p[l];
  return w;
}

ScheduleSet make_schedule(const Network& net, std::vector<LinkId> links, const PriceVector& p) {
  std::sort(links.begin(), links.end());
  ScheduleSet s;
  s.weight = schedule_weight(net, links, p);
  s.indicator.assign(net.num_links(), 0.0);
  for (LinkId l : links) s.indicator[l] = net.alpha(l);
  s.links = std::move(links);
  return s;
}

OptimalScheduler::OptimalScheduler(const Network& net, int k)
    : net_(net), collection_(enumerate_maximal_independent_sets(net, k)) {}

std::size_t OptimalScheduler::best_index(const PriceVector& p) const {
  check_price_length(net_, p);
  std::size_t best = 0;
  double best_w = -1.0;
  // The collection is lexicographically sorted, so keeping the first
  // strict maximum implements the tie-break.
  for (std::size_t i = 0; i < collection_.sets.size(); ++i) {
    double w = 0.0;
    for (LinkId l : collection_.sets[i]) w += net_.alpha(l) * p[l];
    if (w > best_w) {
      best_w = w;
      best = i;
    }
  }
  return best;
}

ScheduleSet OptimalScheduler::schedule(const PriceVector& p) const {
  if (collection_.sets.empty()) return make_schedule(net_, {}, p);
  return make_schedule(net_, collection_.sets[best_index(p)], p);
}

ScheduleSet optimal_schedule(const Network& net, int k, const PriceVector& p) {
  return OptimalScheduler(net, k).schedule(p);
}

ScheduleSet centralized_greedy(const Network& net, int k, const PriceVector& p, bool reverse_ties) {
  check_price_length(net, p);
  const InterferenceModel model(k);
  std::vector<LinkId> order(net.num_links());
  std::iota(order.begin(), order.end(), LinkId{0});
  std::sort(order.begin(), order.end(), LinkOrder{&net, &p, reverse_ties});

  std::vector<LinkId> chosen;
  for (LinkId l : order) {
    const bool fits = std::none_of(chosen.begin(), chosen.end(),
                                   [&](LinkId c) { return model.conflict(net, l, c); });
    if (fits) chosen.push_back(l);
  }
  return make_schedule(net, std::move(chosen), p);
}

}  // namespace dgs
