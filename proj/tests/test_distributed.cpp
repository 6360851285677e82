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

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "dgsched/distributed.hpp"
#include "dgsched/errors.hpp"
#include "dgsched/instances.hpp"
#include "dgsched/interference.hpp"
#include "dgsched/schedule.hpp"
#include "dgsched/verify.hpp"
#include "support.hpp"

using namespace dgs;

namespace {

std::vector<std::string> letters(const TraceRow& row) {
  std::vector<std::string> out;
  for (LinkState s : row.states) out.emplace_back(state_letter(s));
  return out;
}

using Table = std::vector<std::pair<std::string, std::vector<std::string>>>;

void check_table(const std::vector<TraceRow>& trace, const Table& expected) {
  REQUIRE(trace.size() == expected.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    CAPTURE(i);
    CHECK(trace[i].label == expected[i].first);
    CHECK(letters(trace[i]) == expected[i].second);
  }
}

}  // namespace

TEST_CASE("trace on the seven-node line, descending prices") {
  const Network net = dgs::testing::line7_network();
  const DistributedResult r = run_distributed_greedy(net, 2, PriceVector({6, 5, 4, 3, 2, 1}));
  check_table(r.trace, {
                           {"0", {"O", "O", "O", "O", "O", "O"}},
                           {"T_L^1", {"M", "CH", "CH", "CH", "CH", "CH"}},
                           {"T_M^1", {"M", "CL", "CL", "O", "O", "O"}},
                           {"T_L^2", {"M", "CL", "CL", "M", "CH", "CH"}},
                           {"T_M^2", {"M", "CL", "CL", "M", "CL", "CL"}},
                       });
  CHECK(r.schedule.links == std::vector<LinkId>{0, 3});
  CHECK(r.rounds == 2);
}

TEST_CASE("trace on the seven-node line, peak in the middle") {
  const Network net = dgs::testing::line7_network();
  const DistributedResult r = run_distributed_greedy(net, 2, PriceVector({5, 3, 2, 6, 4, 1}));
  check_table(r.trace, {
                           {"0", {"O", "O", "O", "O", "O", "O"}},
                           {"T_L^1", {"O", "CH", "CH", "M", "CH", "CH"}},
                           {"T_M^1", {"O", "CL", "CL", "M", "CL", "CL"}},
                           {"T_L^2", {"M", "CL", "CL", "M", "CL", "CL"}},
                           {"T_M^2", {"M", "CL", "CL", "M", "CL", "CL"}},
                       });
  CHECK(r.schedule.links == std::vector<LinkId>{0, 3});
}

TEST_CASE("rendered trace") {
  const Network net = dgs::testing::line7_network();
  const DistributedResult r = run_distributed_greedy(net, 2, PriceVector({6, 5, 4, 3, 2, 1}));
  const std::string table = render_trace(net, r.trace);
  CHECK(table.rfind("T      (1,2)  (2,3)", 0) == 0);
  CHECK(table.find("T_M^1  M      CL     CL     O      O      O\n") != std::string::npos);
  const std::string csv = trace_csv(net, r.trace);
  CHECK(csv.rfind("time,\"(1,2)\",\"(2,3)\"", 0) == 0);
  CHECK(csv.find("\nT_L^2,M,CL,CL,M,CH,CH\n") != std::string::npos);
}

TEST_CASE("single link is marked in the first round") {
  const Network net = dgs::testing::line_network(2);
  const DistributedResult r = run_distributed_greedy(net, 1, PriceVector({0.5}));
  CHECK(r.rounds == 1);
  CHECK(r.schedule.links == std::vector<LinkId>{0});
  REQUIRE(r.trace.size() == 3);
  CHECK(letters(r.trace[0]) == std::vector<std::string>{"O"});
  CHECK(letters(r.trace[1]) == std::vector<std::string>{"M"});
}

TEST_CASE("zero prices still produce a maximal schedule") {
  const Network net = dgs::testing::line7_network();
  const DistributedResult r = run_distributed_greedy(net, 2, PriceVector::Zero(6));
  CHECK(r.schedule.links == centralized_greedy(net, 2, PriceVector::Zero(6)).links);
  CHECK(r.schedule.links == std::vector<LinkId>{0, 3});
}

TEST_CASE("network without links terminates immediately") {
  NetworkSpec s;
  s.nodes = {1, 2};
  const Network net(s);
  const DistributedResult r = run_distributed_greedy(net, 1, PriceVector::Zero(0));
  CHECK(r.rounds <= 1);
  CHECK(r.schedule.links.empty());
}

TEST_CASE("stepping a terminated simulator is an error") {
  const Network net = dgs::testing::line_network(2);
  const PriceVector p({1.0});
  DistributedGreedySim sim(net, 1, p);
  CHECK_FALSE(sim.terminated());
  CHECK(sim.phase().round == 1);
  while (!sim.terminated()) sim.step_round();
  CHECK_THROWS_AS(sim.step_round(), StateError);
  CHECK(sim.message_log().size() == static_cast<std::size_t>(sim.rounds()));
}

TEST_CASE("price length mismatch is rejected") {
  const Network net = dgs::testing::line7_network();
  CHECK_THROWS_AS(run_distributed_greedy(net, 2, PriceVector({1.0, 2.0})), InputError);
}

TEST_CASE("node execution order does not change the outcome") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const Network net = random_network(rng, {.min_links = 6, .max_links = 20});
    const int k = 1 + trial % 3;
    const PriceVector p =
        trial % 2 ? random_prices(rng, net.num_links()) : tied_prices(rng, net.num_links());
    const DistributedResult base = run_distributed_greedy(net, k, p);
    std::vector<NodeIndex> order(net.num_nodes());
    std::iota(order.begin(), order.end(), NodeIndex{0});
    for (int perm = 0; perm < 3; ++perm) {
      std::shuffle(order.begin(), order.end(), rng);
      SimOptions opts;
      opts.node_order = order;
      const DistributedResult r = run_distributed_greedy(net, k, p, opts);
      CHECK(r.schedule.links == base.schedule.links);
      REQUIRE(r.trace.size() == base.trace.size());
      for (std::size_t i = 0; i < r.trace.size(); ++i) CHECK(r.trace[i].states == base.trace[i].states);
    }
  }
}

TEST_CASE("distributed and centralized greedy agree") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const Network net = random_network(rng, {.min_links = 6, .max_links = 20});
    const int k = 1 + trial % 3;
    const PriceVector p =
        trial % 2 ? random_prices(rng, net.num_links()) : tied_prices(rng, net.num_links());
    const DistributedResult r = run_distributed_greedy(net, k, p);
    CHECK(r.schedule.links == centralized_greedy(net, k, p).links);
    CHECK(r.rounds <= static_cast<int>(net.num_links()));
    const ProtocolChecks pc = check_protocol(net, k, p);
    CHECK_FALSE(pc.termination.has_value());
    CHECK_FALSE(pc.closed_witness.has_value());
    CHECK_FALSE(pc.check_safety.has_value());
    CHECK_FALSE(pc.marked_valid.has_value());
    CHECK_FALSE(pc.order_independence.has_value());
  }
}

TEST_CASE("reversed tie-break is detected") {
  std::mt19937_64 rng(47);
  int detected = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Network net = random_network(rng, {.min_links = 6, .max_links = 20});
    const PriceVector p = tied_prices(rng, net.num_links(), 2);
    if (check_greedy_equivalence(net, 1 + trial % 3, p, true)) ++detected;
  }
  CHECK(detected > 0);
}

TEST_CASE("first round on a longer line") {
  const Network net = dgs::testing::line_network(9);
  const PriceVector p({8, 7, 6, 5, 4, 3, 2, 1});
  DistributedGreedySim sim(net, 1, p);
  sim.step_round();
  CHECK(sim.states()[0] == LinkState::kMarked);
  CHECK(sim.states()[1] == LinkState::kClosed);
  // (3,4) only conflicts with the closed (2,3), so it is reopened.
  CHECK(sim.states()[2] == LinkState::kOpen);
  const MessageCounts& mc = sim.message_log().front();
  CHECK(mc.price_announce > 0);
  CHECK(mc.marked_announce > 0);
  while (!sim.terminated()) sim.step_round();
  CHECK(sim.schedule().links == std::vector<LinkId>{0, 2, 4, 6});
}
