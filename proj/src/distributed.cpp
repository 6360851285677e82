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

#include "dgsched/distributed.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <sstream>

#include "dgsched/errors.hpp"
#include "dgsched/interference.hpp"
#include "text_util.hpp"

namespace dgs {

std::string_view state_letter(LinkState s) {
  switch (s) {
    case LinkState::kOpen:
      return "O";
    case LinkState::kCheck:
      return "CH";
    case LinkState::kMarked:
      return "M";
    case LinkState::kClosed:
      return "CL";
  }
  return "?";
}

DistributedGreedySim::DistributedGreedySim(const Network& net, int k, const PriceVector& p,
                                           SimOptions options)
    : net_(net),
      k_(InterferenceModel(k).k()),
      prices_(p),
      options_(std::move(options)),
      order_{&net_, &prices_, options_.reverse_ties} {
  check_price_length(net_, prices_);
  const std::size_t n = net_.num_nodes();
  if (options_.node_order.empty()) {
    node_order_.resize(n);
    std::iota(node_order_.begin(), node_order_.end(), NodeIndex{0});
  } else {
    node_order_ = options_.node_order;
    std::vector<NodeIndex> sorted = node_order_;
    std::sort(sorted.begin(), sorted.end());
    std::vector<NodeIndex> expected(n);
    std::iota(expected.begin(), expected.end(), NodeIndex{0});
    if (sorted != expected) throw InputError("node_order must be a permutation of all nodes");
  }
  states_.assign(net_.num_links(), LinkState::kOpen);
  inbox_.resize(n);
  node_done_.assign(n, false);
  snapshot("0");
  if (net_.num_links() == 0) {
    terminated_ = true;
    node_done_.assign(n, true);
  }
}

bool DistributedGreedySim::precedes(LinkId a, LinkId b) const { return order_(a, b); }

bool DistributedGreedySim::has_live_link(NodeIndex n) const {
  return std::any_of(net_.outgoing(n).begin(), net_.outgoing(n).end(), [&](LinkId l) {
    return states_[l] == LinkState::kOpen || states_[l] == LinkState::kCheck;
  });
}

void DistributedGreedySim::snapshot(std::string label) {
  if (options_.record_trace) trace_.push_back({std::move(label), states_});
}

void DistributedGreedySim::deliver(const SimMessage& msg) {
  auto& counts = message_log_.back();
  for (NodeIndex v = 0; v < net_.num_nodes(); ++v) {
    if (v == msg.origin || net_.node_distance(msg.origin, v) > msg.hop_budget) continue;
    inbox_[v].push_back(msg);
    switch (msg.kind) {
      case SimMessage::Kind::kPriceAnnounce:
        ++counts.price_announce;
        break;
      case SimMessage::Kind::kMarkedAnnounce:
        ++counts.marked_announce;
        break;
      case SimMessage::Kind::kDoNotTerminate:
        ++counts.do_not_terminate;
        break;
    }
  }
}

void DistributedGreedySim::send_link_prices() {
  for (NodeIndex n = 0; n < net_.num_nodes(); ++n) {
    std::optional<LinkId> best;
    for (LinkId l : net_.outgoing(n)) {
      if (states_[l] != LinkState::kOpen) continue;
      if (!best || precedes(l, *best)) best = l;
    }
    if (best) {
      deliver({SimMessage::Kind::kPriceAnnounce, n, k_ + 1, *best, order_.weight(*best)});
    }
  }
}

void DistributedGreedySim::decide_link_prices(NodeIndex n) {
  std::vector<LinkId> open;
  for (LinkId l : net_.outgoing(n)) {
    if (states_[l] == LinkState::kOpen) open.push_back(l);
  }
  if (open.empty()) return;
  const LinkId own_max = *std::min_element(open.begin(), open.end(),
                                           [&](LinkId a, LinkId b) { return precedes(a, b); });

  // Received announcements carry (link, weight); rank them with the same
  // total order as local links.
  auto msg_precedes = [&](const SimMessage& a, LinkId b) {
    const double wb = order_.weight(b);
    if (a.weight != wb) return a.weight > wb;
    return options_.reverse_ties ? a.link > b : a.link < b;
  };
  const SimMessage* received_max = nullptr;
  for (const SimMessage& msg : inbox_[n]) {
    if (msg.kind != SimMessage::Kind::kPriceAnnounce) continue;
    if (!received_max || msg_precedes(msg, received_max->link)) received_max = &msg;
  }

  if (received_max == nullptr || !msg_precedes(*received_max, own_max)) {
    for (LinkId l : open) states_[l] = l == own_max ? LinkState::kMarked : LinkState::kClosed;
    return;
  }
  // A higher-priced link was announced nearby. Each open link waits in
  // CHECK if some higher-priced announced link interferes with it.
  for (LinkId l : open) {
    for (const SimMessage& msg : inbox_[n]) {
      if (msg.kind == SimMessage::Kind::kPriceAnnounce && msg_precedes(msg, l) &&
          net_.link_distance(l, msg.link) < k_) {
        states_[l] = LinkState::kCheck;
        break;
      }
    }
  }
}

void DistributedGreedySim::send_marked_links() {
  for (NodeIndex n = 0; n < net_.num_nodes(); ++n) {
    for (LinkId l : net_.outgoing(n)) {
      if (states_[l] == LinkState::kMarked) {
        deliver({SimMessage::Kind::kMarkedAnnounce, n, k_ + 1, l, 0.0});
      }
    }
  }
}

void DistributedGreedySim::decide_marked(NodeIndex n) {
  // Known MARKED links: received announcements plus the node's own.
  std::vector<LinkId> marked;
  for (const SimMessage& msg : inbox_[n]) {
    if (msg.kind == SimMessage::Kind::kMarkedAnnounce) marked.push_back(msg.link);
  }
  for (LinkId l : net_.outgoing(n)) {
    if (states_[l] == LinkState::kMarked) marked.push_back(l);
  }

  std::optional<LinkId> best_check;
  for (LinkId l : net_.outgoing(n)) {
    if (states_[l] != LinkState::kCheck) continue;
    const bool blocked = std::any_of(marked.begin(), marked.end(),
                                     [&](LinkId m) { return net_.link_distance(l, m) < k_; });
    if (blocked) {
      states_[l] = LinkState::kClosed;
    } else if (!best_check || precedes(l, *best_check)) {
      best_check = l;
    }
  }
  if (best_check) states_[*best_check] = LinkState::kOpen;
}

void DistributedGreedySim::send_status() {
  // Relays repeat until quiescence, so the status floods each connected
  // component within the slot.
  std::vector<bool> sent(net_.num_nodes(), false);
  std::deque<NodeIndex> pending;
  for (NodeIndex n = 0; n < net_.num_nodes(); ++n) {
    if (has_live_link(n)) {
      sent[n] = true;
      pending.push_back(n);
    }
  }
  while (!pending.empty()) {
    const NodeIndex n = pending.front();
    pending.pop_front();
    deliver({SimMessage::Kind::kDoNotTerminate, n, k_ + 1});
    for (NodeIndex v = 0; v < net_.num_nodes(); ++v) {
      if (!sent[v] && v != n && net_.node_distance(n, v) <= k_ + 1) {
        sent[v] = true;
        pending.push_back(v);
      }
    }
  }
}

void DistributedGreedySim::step_round() {
  if (terminated_) throw StateError("step_round called on a terminated simulation");
  const int m = rounds_ + 1;
  const std::string round = std::to_string(m);
  message_log_.emplace_back();
  auto clear_inboxes = [&] {
    for (auto& box : inbox_) box.clear();
  };

  phase_ = {m, Phase::kSendLinkPrices};
  clear_inboxes();
  send_link_prices();
  phase_.phase = Phase::kLinkPriceDecision;
  for (NodeIndex n : node_order_) decide_link_prices(n);
  snapshot("T_L^" + round);

  phase_.phase = Phase::kSendMarkedLinks;
  clear_inboxes();
  send_marked_links();
  phase_.phase = Phase::kMarkedDecision;
  for (NodeIndex n : node_order_) decide_marked(n);
  snapshot("T_M^" + round);

  phase_.phase = Phase::kSendStatus;
  clear_inboxes();
  send_status();
  phase_.phase = Phase::kStatusDecision;
  bool all_done = true;
  for (NodeIndex n : node_order_) {
    const bool heard = std::any_of(inbox_[n].begin(), inbox_[n].end(), [](const SimMessage& msg) {
      return msg.kind == SimMessage::Kind::kDoNotTerminate;
    });
    node_done_[n] = !heard && !has_live_link(n);
    all_done = all_done && node_done_[n];
  }
  rounds_ = m;
  terminated_ = all_done;
  if (!terminated_) phase_ = {m + 1, Phase::kSendLinkPrices};
}

ScheduleSet DistributedGreedySim::schedule() const {
  std::vector<LinkId> marked;
  for (LinkId l = 0; l < states_.size(); ++l) {
    if (states_[l] == LinkState::kMarked) marked.push_back(l);
  }
  return make_schedule(net_, std::move(marked), prices_);
}

DistributedResult run_distributed_greedy(const Network& net, int k, const PriceVector& p,
                                         SimOptions options) {
  DistributedGreedySim sim(net, k, p, std::move(options));
  const int limit = static_cast<int>(net.num_links());
  while (!sim.terminated()) {
    if (sim.rounds() >= limit) {
      throw InvariantViolation("distributed greedy did not terminate within |L| = " +
                               std::to_string(limit) + " rounds");
    }
    sim.step_round();
  }
  return {sim.schedule(), sim.trace(), sim.rounds()};
}

std::string render_trace(const Network& net, const std::vector<TraceRow>& trace) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"T"};
  for (LinkId l = 0; l < net.num_links(); ++l) header.push_back(net.link_name(l));
  rows.push_back(std::move(header));
  for (const TraceRow& r : trace) {
    std::vector<std::string> row{r.label};
    for (LinkState s : r.states) row.emplace_back(state_letter(s));
    rows.push_back(std::move(row));
  }
  return detail::align_columns(rows);
}

std::string trace_csv(const Network& net, const std::vector<TraceRow>& trace) {
  std::ostringstream out;
  out << "time";
  for (LinkId l = 0; l < net.num_links(); ++l) out << ',' << detail::csv_field(net.link_name(l));
  out << '\n';
  for (const TraceRow& r : trace) {
    out << r.label;
    for (LinkState s : r.states) out << ',' << state_letter(s);
    out << '\n';
  }
  return out.str();
}

}  // namespace dgs
