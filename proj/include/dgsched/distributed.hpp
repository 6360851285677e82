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
#include <string>
#include <string_view>
#include <vector>

#include "dgsched/network.hpp"
#include "dgsched/schedule.hpp"

namespace dgs {

// Per-link protocol state. MARKED and CLOSED are absorbing.
enum class LinkState { kOpen, kCheck, kMarked, kClosed };

// "O", "CH", "M", "CL".
std::string_view state_letter(LinkState s);

// Slots of one ROUND and the decision boundary that closes each slot.
enum class Phase {
  kSendLinkPrices,
  kLinkPriceDecision,
  kSendMarkedLinks,
  kMarkedDecision,
  kSendStatus,
  kStatusDecision,
};

struct RoundPhase {
  int round = 1;
  Phase phase = Phase::kSendLinkPrices;
};

struct SimMessage {
  enum class Kind { kPriceAnnounce, kMarkedAnnounce, kDoNotTerminate };
  Kind kind;
  NodeIndex origin;
  int hop_budget;
  LinkId link = 0;      // unused for kDoNotTerminate
  double weight = 0.0;  // alpha_l * p_l, kPriceAnnounce only
};

struct TraceRow {
  std::string label;  // "0", "T_L^1", "T_M^1", ...
  std::vector<LinkState> states;
};

struct SimOptions {
  // Order in which nodes execute each decision boundary; empty means
  // ascending node index. Outcomes must not depend on it.
  std::vector<NodeIndex> node_order;
  // Negative-control hook: flips the id tie-break inside the simulator only.
  bool reverse_ties = false;
  bool record_trace = true;
};

struct MessageCounts {
  std::size_t price_announce = 0;
  std::size_t marked_announce = 0;
  std::size_t do_not_terminate = 0;
};

// Round/slot simulation of the distributed greedy scheduler. Every node runs
// the protocol for the links it is the tail of; PRICE and MARKED
// announcements reach all nodes within K+1 hops of the sender, and
// DO_NOT_TERMINATE is relayed until quiescence inside its slot.
//
// The Network must outlive the simulator.
class DistributedGreedySim {
 public:
  DistributedGreedySim(const Network& net, int k, const PriceVector& p, SimOptions options = {});

  // Executes one full ROUND. Throws StateError once terminated.
  void step_round();

  bool terminated() const { return terminated_; }
  // Number of completed ROUNDs.
  int rounds() const { return rounds_; }
  RoundPhase phase() const { return phase_; }
  const std::vector<LinkState>& states() const { return states_; }
  const std::vector<TraceRow>& trace() const { return trace_; }
  // Messages delivered per round (one entry per completed round).
  const std::vector<MessageCounts>& message_log() const { return message_log_; }

  // Currently MARKED links.
  ScheduleSet schedule() const;

 private:
  void send_link_prices();
  void decide_link_prices(NodeIndex n);
  void send_marked_links();
  void decide_marked(NodeIndex n);
  void send_status();
  void deliver(const SimMessage& msg);
  bool precedes(LinkId a, LinkId b) const;
  bool has_live_link(NodeIndex n) const;
  void snapshot(std::string label);

  const Network& net_;
  int k_;
  PriceVector prices_;
  SimOptions options_;
  LinkOrder order_;
  std::vector<NodeIndex> node_order_;

  std::vector<LinkState> states_;
  std::vector<std::vector<SimMessage>> inbox_;
  std::vector<bool> node_done_;
  RoundPhase phase_;
  int rounds_ = 0;
  bool terminated_ = false;
  std::vector<TraceRow> trace_;
  std::vector<MessageCounts> message_log_;
};

struct DistributedResult {
  ScheduleSet schedule;
  std::vector<TraceRow> trace;
  int rounds = 0;
};

// Runs the simulator to termination. Throws InvariantViolation if it needs
// more than |L| rounds.
DistributedResult run_distributed_greedy(const Network& net, int k, const PriceVector& p,
                                         SimOptions options = {});

// Whitespace-aligned table: header row "T" plus link names, then one row per
// trace entry with state letters.
std::string render_trace(const Network& net, const std::vector<TraceRow>& trace);
// Same content as CSV: time,<link>,<link>,...
std::string trace_csv(const Network& net, const std::vector<TraceRow>& trace);

}  // namespace dgs
