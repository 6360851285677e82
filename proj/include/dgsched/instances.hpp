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
#include <random>
#include <vector>

#include "dgsched/network.hpp"
#include "dgsched/schedule.hpp"

namespace dgs {

struct RandomNetworkOptions {
  std::size_t min_links = 6;
  std::size_t max_links = 20;
  // Each connectivity edge carries data links in both directions.
  bool bidirectional = false;
  std::size_t num_flows = 0;
  bool random_alpha = true;
};

// Connected random graph (random spanning tree plus extra edges) with labels
// 1..n and links in shuffled declaration order. Flows join random node pairs
// that have a directed path.
Network random_network(std::mt19937_64& rng, const RandomNetworkOptions& options);

// i.i.d. uniform prices on [lo, hi).
PriceVector random_prices(std::mt19937_64& rng, std::size_t n, double lo = 0.0, double hi = 1.0);

// Integer prices in {0, .., levels-1}; ties are common.
PriceVector tied_prices(std::mt19937_64& rng, std::size_t n, int levels = 3);

}  // namespace dgs
