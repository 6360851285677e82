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
#include <limits>
#include <string>
#include <vector>

#include "dgsched/utility.hpp"

namespace dgs {

// Links are identified by their position in declaration order.
using LinkId = std::size_t;
// Dense node index (0..num_nodes-1); user-facing labels live in Network.
using NodeIndex = std::size_t;

// Node pairs in different connected components.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

struct Link {
  NodeIndex tail;
  NodeIndex head;
  double alpha;  // normalized capacity, 0 < alpha <= 1
};

struct Flow {
  std::size_t id;
  NodeIndex source;
  NodeIndex destination;
  UtilityFunction utility;
};

// Declarative input for Network; node fields hold user labels.
struct NetworkSpec {
  struct LinkEntry {
    int tail;
    int head;
    double alpha = 1.0;
  };
  struct FlowEntry {
    int source;
    int destination;
    UtilityFunction utility;
  };
  std::vector<int> nodes;
  std::vector<LinkEntry> links;
  std::vector<FlowEntry> flows;
};

// Immutable network: nodes, directed data links, flows. Node and link
// distances are precomputed on the undirected connectivity graph, so every
// query is a pure read.
class Network {
 public:
  // Throws InputError if any invariant is violated (unknown endpoints,
  // alpha outside (0,1], max alpha != 1, self loops, flows with equal
  // endpoints or no directed path).
  explicit Network(const NetworkSpec& spec);

  std::size_t num_nodes() const { return labels_.size(); }
  std::size_t num_links() const { return links_.size(); }
  std::size_t num_flows() const { return flows_.size(); }

  const std::vector<Link>& links() const { return links_; }
  const Link& link(LinkId id) const;
  const std::vector<Flow>& flows() const { return flows_; }
  double alpha(LinkId id) const { return link(id).alpha; }

  int label(NodeIndex n) const { return labels_.at(n); }
  NodeIndex node_index(int label) const;
  // "(tail,head)" with user labels.
  std::string link_name(LinkId id) const;

  // Hop count on the undirected connectivity graph, or kUnreachable.
  int node_distance(NodeIndex a, NodeIndex b) const { return node_dist_[a * labels_.size() + b]; }
  // min over endpoint pairs of node_distance, or kUnreachable.
  int link_distance(LinkId a, LinkId b) const { return link_dist_[a * links_.size() + b]; }

  // Links whose tail is n ("attached" links in the distributed protocol).
  const std::vector<LinkId>& outgoing(NodeIndex n) const { return outgoing_[n]; }

  // Signed node-link incidence: +1 at tail, -1 at head, 0 otherwise.
  int incidence(NodeIndex n, LinkId l) const;

  // Whether a directed path from `from` to `to` exists over data links.
  bool reachable(NodeIndex from, NodeIndex to) const;

  const NetworkSpec& spec() const { return spec_; }

 private:
  NetworkSpec spec_;
  std::vector<int> labels_;
  std::vector<Link> links_;
  std::vector<Flow> flows_;
  std::vector<std::vector<LinkId>> outgoing_;
  std::vector<int> node_dist_;
  std::vector<int> link_dist_;
};

}  // namespace dgs
