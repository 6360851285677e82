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

#include "dgsched/interference.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "dgsched/errors.hpp"

namespace dgs {

InterferenceModel::InterferenceModel(int k) : k_(k) {
  if (k < 1) throw InputError("interference hop parameter K must be >= 1, got " + std::to_string(k));
}

bool InterferenceModel::conflict(const Network& net, LinkId a, LinkId b) const {
  return net.link_distance(a, b) < k_;
}

int link_distance(const Network& net, LinkId a, LinkId b) {
  net.link(a);
  net.link(b);
  return net.link_distance(a, b);
}

bool is_valid_k_matching(const Network& net, std::span<const LinkId> links, int k) {
  const InterferenceModel model(k);
  for (LinkId l : links) net.link(l);
  for (std::size_t i = 0; i < links.size(); ++i) {
    for (std::size_t j = i + 1; j < links.size(); ++j) {
      if (links[i] == links[j]) continue;
      if (model.conflict(net, links[i], links[j])) return false;
    }
  }
  return true;
}

std::vector<LinkId> interference_set(const Network& net, LinkId l, int k) {
  const InterferenceModel model(k);
  net.link(l);
  std::vector<LinkId> out;
  for (LinkId m = 0; m < net.num_links(); ++m) {
    if (model.conflict(net, l, m)) out.push_back(m);
  }
  return out;
}

namespace {

// Branch and bound for the largest pairwise non-conflicting subset.
class MaxIndependent {
 public:
  MaxIndependent(const Network& net, int k) : net_(net), k_(k) {}

  int solve(std::vector<LinkId> candidates) {
    best_ = 0;
    recurse(0, candidates);
    return best_;
  }

 private:
  void recurse(int chosen, const std::vector<LinkId>& cand) {
    if (chosen + static_cast<int>(cand.size()) <= best_) return;
    if (cand.empty()) {
      best_ = chosen;
      return;
    }
    const LinkId v = cand.front();
    std::vector<LinkId> rest;
    rest.reserve(cand.size());
    for (std::size_t i = 1; i < cand.size(); ++i) {
      if (net_.link_distance(v, cand[i]) >= k_) rest.push_back(cand[i]);
    }
    recurse(chosen + 1, rest);
    recurse(chosen, std::vector<LinkId>(cand.begin() + 1, cand.end()));
  }

  const Network& net_;
  int k_;
  int best_ = 0;
};

}  // namespace

int interference_degree_link(const Network& net, LinkId l, int k) {
  return MaxIndependent(net, k).solve(interference_set(net, l, k));
}

int interference_degree_graph(const Network& net, int k) {
  if (net.num_links() == 0) throw InputError("interference degree of a network without links");
  int best = 0;
  for (LinkId l = 0; l < net.num_links(); ++l) {
    best = std::max(best, interference_degree_link(net, l, k));
  }
  return best;
}

namespace {

// Bron-Kerbosch with pivoting on the compatibility graph: maximal cliques
// there are exactly the maximal valid K-matchings.
class MaximalSetEnumerator {
 public:
  explicit MaximalSetEnumerator(std::vector<std::uint32_t> compat) : compat_(std::move(compat)) {}

  std::vector<std::uint32_t> run(std::uint32_t all) {
    out_.clear();
    expand(0, all, 0);
    return std::move(out_);
  }

 private:
  void expand(std::uint32_t r, std::uint32_t p, std::uint32_t x) {
    if (p == 0) {
      if (x == 0) out_.push_back(r);
      return;
    }
    std::uint32_t pivot_nbrs = 0;
    int best = -1;
    for (std::uint32_t px = p | x; px != 0; px &= px - 1) {
      const int u = std::countr_zero(px);
      const int c = std::popcount(p & compat_[u]);
      if (c > best) {
        best = c;
        pivot_nbrs = compat_[u];
      }
    }
    for (std::uint32_t todo = p & ~pivot_nbrs; todo != 0; todo &= todo - 1) {
      const int v = std::countr_zero(todo);
      const std::uint32_t bit = 1u << v;
      expand(r | bit, p & compat_[v], x & compat_[v]);
      p &= ~bit;
      x |= bit;
    }
  }

  std::vector<std::uint32_t> compat_;
  std::vector<std::uint32_t> out_;
};

}  // namespace

IndependentSetCollection enumerate_maximal_independent_sets(const Network& net, int k) {
  const InterferenceModel model(k);
  const std::size_t m = net.num_links();
  if (m > kEnumerationGuard) {
    throw CapacityError("exact enumeration refused: network has " + std::to_string(m) +
                        " links, guard is " + std::to_string(kEnumerationGuard) +
                        "; use the greedy or distributed schedulers instead");
  }
  IndependentSetCollection result;
  if (m == 0) return result;

  std::vector<std::uint32_t> compat(m, 0);
  for (LinkId a = 0; a < m; ++a) {
    for (LinkId b = 0; b < m; ++b) {
      if (a != b && !model.conflict(net, a, b)) compat[a] |= 1u << b;
    }
  }
  const std::uint32_t all = m == 32 ? ~0u : ((1u << m) - 1u);
  for (std::uint32_t mask : MaximalSetEnumerator(std::move(compat)).run(all)) {
    std::vector<LinkId> set;
    for (std::uint32_t b = mask; b != 0; b &= b - 1) set.push_back(std::countr_zero(b));
    result.sets.push_back(std::move(set));
  }
  std::sort(result.sets.begin(), result.sets.end());
  return result;
}

}  // namespace dgs
