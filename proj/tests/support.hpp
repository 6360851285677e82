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

// Reference implementations used as oracles. They share no code with the
// library beyond the Network accessors for topology.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dgsched/network.hpp"
#include "dgsched/schedule.hpp"

namespace dgs::testing {

inline Network line_network(int nodes, std::vector<double> alphas = {}) {
  NetworkSpec spec;
  for (int i = 1; i <= nodes; ++i) spec.nodes.push_back(i);
  for (int i = 1; i < nodes; ++i) {
    const double a = alphas.empty() ? 1.0 : alphas[static_cast<std::size_t>(i - 1)];
    spec.links.push_back({i, i + 1, a});
  }
  return Network(spec);
}

// Line 1..7 with links (i,i+1).
inline Network line7_network(bool with_flows = false) {
  NetworkSpec spec;
  for (int i = 1; i <= 7; ++i) spec.nodes.push_back(i);
  for (int i = 1; i < 7; ++i) spec.links.push_back({i, i + 1});
  if (with_flows) {
    spec.flows.push_back({1, 4, UtilityFunction(UtilityFunction::Kind::kLog1p, 1.0)});
    spec.flows.push_back({4, 7, UtilityFunction(UtilityFunction::Kind::kLog1p, 1.0)});
  }
  return Network(spec);
}

inline Network single_link_network() {
  NetworkSpec spec;
  spec.nodes = {1, 2};
  spec.links = {{1, 2}};
  spec.flows = {{1, 2, UtilityFunction(UtilityFunction::Kind::kLog1p, 1.0)}};
  return Network(spec);
}

// Floyd-Warshall on the undirected graph; -1 for unreachable.
inline std::vector<std::vector<int>> floyd_distances(const Network& net) {
  const std::size_t n = net.num_nodes();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const Link& l : net.links()) {
    d[l.tail][l.head] = 1;
    d[l.head][l.tail] = 1;
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
    }
  }
  for (auto& row : d) {
    for (int& v : row) {
      if (v >= inf) v = -1;
    }
  }
  return d;
}

struct Oracle {
  const Network& net;
  int k;
  std::vector<std::vector<int>> nd = floyd_distances(net);

  // -1 for unreachable.
  int link_dist(LinkId a, LinkId b) const {
    const Link& x = net.link(a);
    const Link& y = net.link(b);
    int best = -1;
    for (NodeIndex u : {x.tail, x.head}) {
      for (NodeIndex v : {y.tail, y.head}) {
        const int d = nd[u][v];
        if (d >= 0 && (best < 0 || d < best)) best = d;
      }
    }
    return best;
  }
  bool conflict(LinkId a, LinkId b) const {
    const int d = link_dist(a, b);
    return d >= 0 && d < k;
  }
  bool valid(std::uint32_t mask) const {
    for (LinkId a = 0; a < net.num_links(); ++a) {
      if (!(mask >> a & 1u)) continue;
      for (LinkId b = a + 1; b < net.num_links(); ++b) {
        if ((mask >> b & 1u) && conflict(a, b)) return false;
      }
    }
    return true;
  }
  static std::vector<LinkId> ids(std::uint32_t mask) {
    std::vector<LinkId> out;
    for (LinkId i = 0; i < 32; ++i) {
      if (mask >> i & 1u) out.push_back(i);
    }
    return out;
  }
  std::uint32_t full() const { return (1u << net.num_links()) - 1u; }

  // Every valid subset, by brute force.
  std::vector<std::uint32_t> valid_sets() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m <= full(); ++m) {
      if (valid(m)) out.push_back(m);
    }
    return out;
  }
  std::vector<std::vector<LinkId>> maximal_sets() const {
    std::vector<std::vector<LinkId>> out;
    for (std::uint32_t m : valid_sets()) {
      bool maximal = true;
      for (LinkId l = 0; l < net.num_links() && maximal; ++l) {
        if (!(m >> l & 1u) && valid(m | 1u << l)) maximal = false;
      }
      if (maximal) out.push_back(ids(m));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  double weight(std::uint32_t mask, const PriceVector& p) const {
    double w = 0.0;
    for (LinkId l : ids(mask)) w += net.alpha(l) * p[l];
    return w;
  }
  double max_weight(const PriceVector& p) const {
    double best = 0.0;
    for (std::uint32_t m : valid_sets()) best = std::max(best, weight(m, p));
    return best;
  }
  int degree(LinkId l) const {
    std::uint32_t region = 0;
    for (LinkId o = 0; o < net.num_links(); ++o) {
      if (o == l || conflict(l, o)) region |= 1u << o;
    }
    int best = 0;
    for (std::uint32_t m = region;; m = (m - 1) & region) {
      if (valid(m)) best = std::max(best, static_cast<int>(ids(m).size()));
      if (m == 0) break;
    }
    return best;
  }
  // Scan in (weight desc, id asc) order; keep what fits.
  std::vector<LinkId> greedy(const PriceVector& p) const {
    std::vector<LinkId> order(net.num_links());
    for (LinkId i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](LinkId a, LinkId b) {
      return net.alpha(a) * p[a] > net.alpha(b) * p[b];
    });
    std::vector<LinkId> chosen;
    for (LinkId l : order) {
      bool ok = true;
      for (LinkId c : chosen) ok = ok && !conflict(l, c);
      if (ok) chosen.push_back(l);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }
};

// Minimum price over all simple directed paths, by exhaustive DFS.
inline double min_path_cost(const Network& net, NodeIndex src, NodeIndex dst, const PriceVector& p) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> seen(net.num_nodes(), false);
  auto dfs = [&](auto&& self, NodeIndex u, double cost) -> void {
    if (u == dst) {
      best = std::min(best, cost);
      return;
    }
    seen[u] = true;
    for (LinkId l = 0; l < net.num_links(); ++l) {
      const Link& e = net.link(l);
      if (e.tail == u && !seen[e.head]) self(self, e.head, cost + p[l]);
    }
    seen[u] = false;
  };
  dfs(dfs, src, 0.0);
  return best;
}

// max over x in [0,1] of U(x) - q x on a uniform grid.
inline double grid_flow_value(const UtilityFunction& u, double q, int steps = 20000) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i) {
    const double x = static_cast<double>(i) / steps;
    best = std::max(best, u.value(x) - q * x);
  }
  return best;
}

}  // namespace dgs::testing
