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

#include "dgsched/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "dgsched/errors.hpp"

namespace dgs {

namespace {

std::vector<int> bfs_all_pairs(std::size_t n, const std::vector<std::vector<NodeIndex>>& adj) {
  std::vector<int> dist(n * n, kUnreachable);
  std::deque<NodeIndex> queue;
  for (NodeIndex s = 0; s < n; ++s) {
    int* row = &dist[s * n];
    row[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      const NodeIndex u = queue.front();
      queue.pop_front();
      for (NodeIndex v : adj[u]) {
        if (row[v] == kUnreachable) {
          row[v] = row[u] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  return dist;
}

}  // namespace

Network::Network(const NetworkSpec& spec) : spec_(spec), labels_(spec.nodes) {
  std::unordered_map<int, NodeIndex> index;
  for (NodeIndex i = 0; i < labels_.size(); ++i) {
    if (!index.emplace(labels_[i], i).second) {
      throw InputError("duplicate node " + std::to_string(labels_[i]));
    }
  }
  auto lookup = [&](int label, const std::string& what) {
    auto it = index.find(label);
    if (it == index.end()) {
      throw InputError(what + " refers to unknown node " + std::to_string(label));
    }
    return it->second;
  };

  const std::size_t n = labels_.size();
  outgoing_.resize(n);
  std::vector<std::vector<NodeIndex>> adj(n);
  double max_alpha = 0.0;
  for (std::size_t i = 0; i < spec.links.size(); ++i) {
    const auto& e = spec.links[i];
    const std::string what = "link " + std::to_string(i);
    const NodeIndex t = lookup(e.tail, what);
    const NodeIndex h = lookup(e.head, what);
    if (t == h) throw InputError(what + " is a self loop");
    if (!(e.alpha > 0.0 && e.alpha <= 1.0)) {
      throw InputError(what + " has alpha " + std::to_string(e.alpha) + " outside (0,1]");
    }
    links_.push_back({t, h, e.alpha});
    outgoing_[t].push_back(i);
    adj[t].push_back(h);
    adj[h].push_back(t);
    max_alpha = std::max(max_alpha, e.alpha);
  }
  if (!links_.empty() && max_alpha != 1.0) {
    throw InputError("capacities must be normalized: the largest alpha must equal 1");
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  node_dist_ = bfs_all_pairs(n, adj);

  const std::size_t m = links_.size();
  link_dist_.assign(m * m, kUnreachable);
  for (LinkId a = 0; a < m; ++a) {
    for (LinkId b = 0; b < m; ++b) {
      const NodeIndex ua[2] = {links_[a].tail, links_[a].head};
      const NodeIndex ub[2] = {links_[b].tail, links_[b].head};
      int best = kUnreachable;
      for (NodeIndex u : ua) {
        for (NodeIndex v : ub) best = std::min(best, node_distance(u, v));
      }
      link_dist_[a * m + b] = best;
    }
  }

  for (std::size_t i = 0; i < spec.flows.size(); ++i) {
    const auto& fe = spec.flows[i];
    const std::string what = "flow " + std::to_string(i);
    Flow f{i, lookup(fe.source, what), lookup(fe.destination, what), fe.utility};
    if (f.source == f.destination) throw InputError(what + " has equal source and destination");
    if (!reachable(f.source, f.destination)) {
      throw InputError(what + " has no directed path from " + std::to_string(fe.source) + " to " +
                       std::to_string(fe.destination));
    }
    flows_.push_back(f);
  }
}

const Link& Network::link(LinkId id) const {
  if (id >= links_.size()) {
    throw InputError("unknown link id " + std::to_string(id) + " (network has " +
                     std::to_string(links_.size()) + " links)");
  }
  return links_[id];
}

NodeIndex Network::node_index(int label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InputError("unknown node " + std::to_string(label));
  return static_cast<NodeIndex>(it - labels_.begin());
}

std::string Network::link_name(LinkId id) const {
  const Link& l = link(id);
  return "(" + std::to_string(labels_[l.tail]) + "," + std::to_string(labels_[l.head]) + ")";
}

int Network::incidence(NodeIndex n, LinkId l) const {
  const Link& e = link(l);
  if (e.tail == n) return 1;
  if (e.head == n) return -1;
  return 0;
}

bool Network::reachable(NodeIndex from, NodeIndex to) const {
  std::vector<bool> seen(labels_.size(), false);
  std::vector<NodeIndex> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    const NodeIndex u = stack.back();
    stack.pop_back();
    if (u == to) return true;
    for (LinkId l : outgoing_[u]) {
      const NodeIndex v = links_[l].head;
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return false;
}

}  // namespace dgs
