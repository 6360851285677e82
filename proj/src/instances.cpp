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

#include "dgsched/instances.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace dgs {

namespace {

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

Network random_network(std::mt19937_64& rng, const RandomNetworkOptions& options) {
  const std::size_t per_edge = options.bidirectional ? 2 : 1;
  const std::size_t min_edges = std::max<std::size_t>(1, (options.min_links + per_edge - 1) / per_edge);
  const std::size_t max_edges = std::max(min_edges, options.max_links / per_edge);
  const std::size_t edges = uniform_index(rng, min_edges, max_edges);

  // Smallest node count whose complete graph holds `edges` edges.
  std::size_t min_nodes = 2;
  while (min_nodes * (min_nodes - 1) / 2 < edges) ++min_nodes;
  const std::size_t n = uniform_index(rng, min_nodes, edges + 1);

  std::set<std::pair<std::size_t, std::size_t>> used;
  std::vector<std::pair<std::size_t, std::size_t>> edge_list;
  auto add_edge = [&](std::size_t a, std::size_t b) {
    const auto key = std::minmax(a, b);
    if (a == b || !used.insert(key).second) return false;
    edge_list.emplace_back(a, b);
    return true;
  };
  for (std::size_t v = 1; v < n; ++v) add_edge(v, uniform_index(rng, 0, v - 1));
  while (edge_list.size() < edges) add_edge(uniform_index(rng, 0, n - 1), uniform_index(rng, 0, n - 1));

  NetworkSpec spec;
  for (std::size_t v = 0; v < n; ++v) spec.nodes.push_back(static_cast<int>(v + 1));
  std::uniform_real_distribution<double> alpha_dist(0.1, 1.0);
  std::bernoulli_distribution coin(0.5);
  for (auto [a, b] : edge_list) {
    if (options.bidirectional) {
      spec.links.push_back({static_cast<int>(a + 1), static_cast<int>(b + 1), 1.0});
      spec.links.push_back({static_cast<int>(b + 1), static_cast<int>(a + 1), 1.0});
    } else {
      if (coin(rng)) std::swap(a, b);
      spec.links.push_back({static_cast<int>(a + 1), static_cast<int>(b + 1), 1.0});
    }
  }
  std::shuffle(spec.links.begin(), spec.links.end(), rng);
  if (options.random_alpha) {
    double max_alpha = 0.0;
    for (auto& l : spec.links) {
      l.alpha = alpha_dist(rng);
      max_alpha = std::max(max_alpha, l.alpha);
    }
    for (auto& l : spec.links) l.alpha = l.alpha == max_alpha ? 1.0 : l.alpha / max_alpha;
  }

  if (options.num_flows > 0) {
    const Network topology(spec);
    std::vector<std::pair<int, int>> candidates;
    for (NodeIndex s = 0; s < n; ++s) {
      for (NodeIndex d = 0; d < n; ++d) {
        if (s != d && topology.reachable(s, d)) {
          candidates.emplace_back(static_cast<int>(s + 1), static_cast<int>(d + 1));
        }
      }
    }
    for (std::size_t f = 0; f < options.num_flows && !candidates.empty(); ++f) {
      const auto [s, d] = candidates[uniform_index(rng, 0, candidates.size() - 1)];
      spec.flows.push_back({s, d, UtilityFunction(UtilityFunction::Kind::kLog1p, 1.0)});
    }
  }
  return Network(spec);
}

PriceVector random_prices(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> p(n);
  for (double& v : p) v = dist(rng);
  return PriceVector(std::move(p));
}

PriceVector tied_prices(std::mt19937_64& rng, std::size_t n, int levels) {
  std::uniform_int_distribution<int> dist(0, levels - 1);
  std::vector<double> p(n);
  for (double& v : p) v = dist(rng);
  return PriceVector(std::move(p));
}

}  // namespace dgs
