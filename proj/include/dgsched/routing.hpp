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

#include <vector>

#include "dgsched/network.hpp"
#include "dgsched/schedule.hpp"

namespace dgs {

struct PricedPath {
  std::vector<LinkId> links;  // in traversal order
  double cost = 0.0;
};

// Minimum total-price directed path from the flow's source to its
// destination, by Bellman-Ford over link prices. Among equal-cost paths the
// fewest hops win, then the lexicographically smallest link-id sequence.
// Throws RoutingError when the destination is unreachable.
PricedPath least_priced_path(const Network& net, const Flow& f, const PriceVector& p);

// x_f = min{U'^-1(path_cost), 1}, floored at 0; path_cost = 0 gives 1.
double source_rate(const Flow& f, double path_cost);

struct FlowAllocation {
  std::vector<double> rates;                  // x_f
  std::vector<std::vector<LinkId>> paths;     // per flow
  std::vector<std::vector<double>> per_flow;  // y_f, one entry per link
  std::vector<double> aggregate;              // y_l = sum_f y_fl
};

struct D1Result {
  FlowAllocation allocation;
  std::vector<double> path_costs;  // p(f)
  double value = 0.0;              // sum_f U(x_f) - p(f) x_f
};

D1Result solve_d1(const Network& net, const PriceVector& p);

}  // namespace dgs
