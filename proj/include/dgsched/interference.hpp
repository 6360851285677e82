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

#include "dgsched/network.hpp"

namespace dgs {

// Exact enumeration is refused above this many links.
inline constexpr std::size_t kEnumerationGuard = 25;

// K-hop link interference: links at link distance < K conflict.
class InterferenceModel {
 public:
  explicit InterferenceModel(int k);
  int k() const { return k_; }
  bool conflict(const Network& net, LinkId a, LinkId b) const;

 private:
  int k_;
};

// Throws InputError for unknown links.
int link_distance(const Network& net, LinkId a, LinkId b);

bool is_valid_k_matching(const Network& net, std::span<const LinkId> links, int k);

// I_K(l): all links within link distance < K of l (l included), sorted.
std::vector<LinkId> interference_set(const Network& net, LinkId l, int k);

// d_K(l): the largest valid K-matching contained in I_K(l).
int interference_degree_link(const Network& net, LinkId l, int k);

// d_K(G) = max_l d_K(l). Throws InputError on a network without links.
int interference_degree_graph(const Network& net, int k);

// All maximal valid K-matchings. Each set is sorted by id and the collection
// is sorted lexicographically.
struct IndependentSetCollection {
  std::vector<std::vector<LinkId>> sets;
  std::size_t count() const { return sets.size(); }
};

// Throws CapacityError when net has more than kEnumerationGuard links.
IndependentSetCollection enumerate_maximal_independent_sets(const Network& net, int k);

}  // namespace dgs
