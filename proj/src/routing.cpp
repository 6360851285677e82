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

#include "dgsched/routing.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "dgsched/errors.hpp"

namespace dgs {

namespace {

struct Label {
  double cost = std::numeric_limits<double>::infinity();
  std::size_t hops = std::numeric_limits<std::size_t>::max();

  bool finite() const { return hops != std::numeric_limits<std::size_t>::max(); }
  bool operator<(const Label& o) const {
    if (cost != o.cost) return cost < o.cost;
    return hops < o.hops;
  }
};

}  // namespace

PricedPath least_priced_path(const Network& net, const Flow& f, const PriceVector& p) {
  check_price_length(net, p);
  const std::size_t n = net.num_nodes();
  // Distances *to* the destination, so the path can be read forwards.
  std::vector<Label> dist(n);
  std::vector<std::optional<LinkId>> parent(n);
  dist[f.destination] = {0.0, 0};
  for (std::size_t pass = 0; pass + 1 < n; ++pass) {
    bool changed = false;
    for (LinkId l = 0; l < net.num_links(); ++l) {
      const Link& e = net.link(l);
      if (!dist[e.head].finite()) continue;
      const Label cand{p[l] + dist[e.head].cost, dist[e.head].hops + 1};
      if (cand < dist[e.tail]) {
        dist[e.tail] = cand;
        parent[e.tail] = l;
        changed = true;
      }
    }
    if (!changed) break;
  }
  if (!dist[f.source].finite()) {
    throw RoutingError("flow " + std::to_string(f.id) + ": node " +
                       std::to_string(net.label(f.destination)) + " unreachable from node " +
                       std::to_string(net.label(f.source)));
  }

  PricedPath path;
  path.cost = dist[f.source].cost;
  NodeIndex u = f.source;
  while (u != f.destination) {
    // Smallest-id link on some optimal (cost, hops) continuation.
    std::optional<LinkId> next;
    for (LinkId l : net.outgoing(u)) {
      const Label& dv = dist[net.link(l).head];
      if (dv.finite() && p[l] + dv.cost == dist[u].cost && dv.hops + 1 == dist[u].hops) {
        next = l;
        break;
      }
    }
    if (!next) next = parent[u];
    path.links.push_back(*next);
    u = net.link(*next).head;
  }
  return path;
}

double source_rate(const Flow& f, double path_cost) {
  if (path_cost <= 0.0) return 1.0;
  return std::clamp(f.utility.inverse_derivative(path_cost), 0.0, 1.0);
}

D1Result solve_d1(const Network& net, const PriceVector& p) {
  check_price_length(net, p);
  D1Result r;
  auto& a = r.allocation;
  a.aggregate.assign(net.num_links(), 0.0);
  for (const Flow& f : net.flows()) {
    PricedPath path = least_priced_path(net, f, p);
    const double x = source_rate(f, path.cost);
    std::vector<double> yf(net.num_links(), 0.0);
    for (LinkId l : path.links) {
      yf[l] = x;
      a.aggregate[l] += x;
    }
    r.value += f.utility.value(x) - path.cost * x;
    r.path_costs.push_back(path.cost);
    a.rates.push_back(x);
    a.paths.push_back(std::move(path.links));
    a.per_flow.push_back(std::move(yf));
  }
  return r;
}

}  // namespace dgs
