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

#include "dgsched/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "dgsched/instances.hpp"
#include "dgsched/interference.hpp"
#include "text_util.hpp"

namespace dgs {

namespace {

std::string describe(const Network& net, const std::vector<LinkId>& links) {
  std::string s = "{";
  for (std::size_t i = 0; i < links.size(); ++i) {
    if (i) s += ",";
    s += net.link_name(links[i]);
  }
  return s + "}";
}

std::size_t count_state(const std::vector<LinkState>& s, LinkState a, LinkState b) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [&](LinkState x) { return x == a || x == b; }));
}

}  // namespace

CheckResult check_greedy_equivalence(const Network& net, int k, const PriceVector& p,
                                     bool corrupt_tiebreak) {
  SimOptions opts;
  opts.reverse_ties = corrupt_tiebreak;
  opts.record_trace = false;
  const auto dist = run_distributed_greedy(net, k, p, opts).schedule.links;
  const auto cent = centralized_greedy(net, k, p).links;
  if (dist == cent) return std::nullopt;
  return "distributed " + describe(net, dist) + " != centralized " + describe(net, cent);
}

ProtocolChecks check_protocol(const Network& net, int k, const PriceVector& p) {
  ProtocolChecks out;
  DistributedResult run;
  try {
    run = run_distributed_greedy(net, k, p);
  } catch (const std::exception& e) {
    out.termination = e.what();
    return out;
  }
  const auto& trace = run.trace;
  const LinkOrder order{&net, &p};

  if (run.rounds > static_cast<int>(net.num_links())) {
    out.termination = "rounds " + std::to_string(run.rounds) + " > |L|";
  }
  for (int m = 1; m <= run.rounds && !out.termination; ++m) {
    const auto& start = trace[2 * (m - 1)].states;
    const auto& end = trace[2 * m].states;
    const std::size_t before = count_state(start, LinkState::kMarked, LinkState::kClosed);
    const std::size_t after = count_state(end, LinkState::kMarked, LinkState::kClosed);
    if (before < net.num_links() && after <= before) {
      out.termination = "MARKED u CLOSED did not grow in round " + std::to_string(m);
    }
  }

  for (std::size_t r = 0; r < trace.size() && !out.closed_witness; ++r) {
    const auto& s = trace[r].states;
    for (LinkId l = 0; l < s.size(); ++l) {
      if (s[l] != LinkState::kClosed) continue;
      bool witnessed = false;
      for (LinkId m = 0; m < s.size() && !witnessed; ++m) {
        witnessed = s[m] == LinkState::kMarked && net.link_distance(l, m) < k;
      }
      if (!witnessed) {
        out.closed_witness = "CLOSED link " + net.link_name(l) + " has no MARKED interferer at " +
                             trace[r].label;
        break;
      }
    }
  }

  for (int m = 1; m <= run.rounds && !out.check_safety; ++m) {
    const auto& s = trace[2 * (m - 1)].states;
    std::optional<LinkId> top;
    for (LinkId l = 0; l < s.size(); ++l) {
      if (s[l] == LinkState::kMarked || s[l] == LinkState::kClosed) continue;
      if (!top || order(l, *top)) top = l;
    }
    if (top && s[*top] != LinkState::kOpen) {
      out.check_safety = "top live link " + net.link_name(*top) + " is CHECK at start of round " +
                         std::to_string(m);
    }
  }

  for (std::size_t r = 0; r < trace.size() && !out.marked_valid; ++r) {
    std::vector<LinkId> marked;
    for (LinkId l = 0; l < trace[r].states.size(); ++l) {
      if (trace[r].states[l] == LinkState::kMarked) marked.push_back(l);
      if (r > 0) {
        const LinkState prev = trace[r - 1].states[l];
        if ((prev == LinkState::kMarked || prev == LinkState::kClosed) &&
            trace[r].states[l] != prev) {
          out.marked_valid = "link " + net.link_name(l) + " left an absorbing state at " +
                             trace[r].label;
        }
      }
    }
    if (!is_valid_k_matching(net, marked, k)) {
      out.marked_valid = "MARKED set " + describe(net, marked) + " is not a valid K-matching at " +
                         trace[r].label;
    }
  }

  // Reversed node order must reproduce the exact trace.
  SimOptions reversed;
  reversed.node_order.resize(net.num_nodes());
  std::iota(reversed.node_order.rbegin(), reversed.node_order.rend(), NodeIndex{0});
  const auto alt = run_distributed_greedy(net, k, p, reversed);
  bool same = alt.trace.size() == trace.size();
  for (std::size_t r = 0; same && r < trace.size(); ++r) same = alt.trace[r].states == trace[r].states;
  if (!same) out.order_independence = "trace depends on node processing order";
  return out;
}

CheckResult check_greedy_ratio(const Network& net, int k, const PriceVector& p) {
  const double opt = optimal_schedule(net, k, p).weight;
  const double grd = centralized_greedy(net, k, p).weight;
  if (grd == 0.0) {
    if (opt == 0.0) return std::nullopt;
    return "greedy weight 0 but optimal weight " + detail::format_double(opt);
  }
  const int degree = interference_degree_graph(net, k);
  if (opt / grd <= degree + 1e-12) return std::nullopt;
  return "ratio " + detail::format_double(opt / grd) + " exceeds d_K(G) = " + std::to_string(degree);
}

double epsilon_subgradient_slack(const DualEvaluator& eval, const PriceVector& p,
                                 const PriceVector& pbar) {
  const DualEvaluation at_p = eval.evaluate(p, SchedulerMode::kDistributedGreedy);
  const double d_bar = eval.evaluate(pbar, SchedulerMode::kOptimal).d;
  // D(p) - eps(p) is the greedy-scheduled dual value.
  double rhs = *at_p.exact() - *at_p.epsilon;
  for (std::size_t l = 0; l < p.size(); ++l) rhs += (pbar[l] - p[l]) * at_p.h[l];
  return d_bar - rhs;
}

CheckResult check_epsilon_subgradient(const DualEvaluator& eval, const PriceVector& p,
                                      const PriceVector& pbar, double tol) {
  const double slack = epsilon_subgradient_slack(eval, p, pbar);
  if (slack >= -tol) return std::nullopt;
  return "epsilon-subgradient inequality violated by " + detail::format_double(-slack);
}

CheckResult check_midpoint_convexity(const DualEvaluator& eval, const PriceVector& p1,
                                     const PriceVector& p2, double tol) {
  std::vector<double> mid(p1.size());
  for (std::size_t l = 0; l < mid.size(); ++l) mid[l] = 0.5 * (p1[l] + p2[l]);
  const double d1 = eval.evaluate(p1, SchedulerMode::kOptimal).d;
  const double d2 = eval.evaluate(p2, SchedulerMode::kOptimal).d;
  const double dm = eval.evaluate(PriceVector(mid), SchedulerMode::kOptimal).d;
  if (dm <= 0.5 * (d1 + d2) + tol) return std::nullopt;
  return "midpoint value " + detail::format_double(dm) + " above chord " +
         detail::format_double(0.5 * (d1 + d2));
}

void PropertyTally::record(const CheckResult& r) {
  if (!r) {
    ++passed;
    return;
  }
  ++failed;
  if (failures.size() < 5) failures.push_back(*r);
}

bool VerifyReport::ok() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyTally& t) { return t.failed == 0; });
}

std::string VerifyReport::text() const {
  std::ostringstream out;
  for (const PropertyTally& t : properties) {
    out << (t.failed == 0 ? "PASS " : "FAIL ") << t.name << ": passed=" << t.passed
        << " failed=" << t.failed << " skipped=" << t.skipped << '\n';
    for (const std::string& f : t.failures) out << "    " << f << '\n';
  }
  return out.str();
}

VerifyReport run_verification(const VerifyOptions& options, const Network* extra, int extra_k) {
  enum Prop {
    kEquivalence,
    kTermination,
    kClosedWitness,
    kCheckSafety,
    kMarkedValid,
    kOrderIndependence,
    kRatio,
    kSubgradient,
    kConvexity,
    kCount
  };
  VerifyReport report;
  report.properties.resize(kCount);
  const char* names[kCount] = {"greedy_equivalence",  "termination",
                               "closed_witness",      "check_safety",
                               "marked_valid",        "order_independence",
                               "greedy_ratio",        "epsilon_subgradient",
                               "midpoint_convexity"};
  for (int i = 0; i < kCount; ++i) report.properties[i].name = names[i];
  auto& P = report.properties;

  auto scheduling_checks = [&](const Network& net, int k, const PriceVector& p) {
    P[kEquivalence].record(check_greedy_equivalence(net, k, p, options.corrupt_tiebreak));
    const ProtocolChecks pc = check_protocol(net, k, p);
    P[kTermination].record(pc.termination);
    P[kClosedWitness].record(pc.closed_witness);
    P[kCheckSafety].record(pc.check_safety);
    P[kMarkedValid].record(pc.marked_valid);
    P[kOrderIndependence].record(pc.order_independence);
    if (net.num_links() <= kEnumerationGuard) {
      P[kRatio].record(check_greedy_ratio(net, k, p));
    } else {
      ++P[kRatio].skipped;
    }
  };

  std::mt19937_64 rng(options.seed);
  for (int i = 0; i < options.instances; ++i) {
    const int k = 1 + i % 3;
    const Network net = random_network(rng, {.min_links = 6, .max_links = 20});
    // Alternate continuous prices with tie-heavy integer prices.
    const PriceVector p = i % 2 == 0 ? random_prices(rng, net.num_links())
                                     : tied_prices(rng, net.num_links());
    scheduling_checks(net, k, p);

    const Network flow_net = random_network(
        rng, {.min_links = 6, .max_links = 12, .bidirectional = true, .num_flows = static_cast<std::size_t>(1 + i % 3)});
    const DualEvaluator eval(flow_net, k);
    const std::size_t L = flow_net.num_links();
    P[kSubgradient].record(check_epsilon_subgradient(eval, random_prices(rng, L, 0.0, 2.0),
                                                     random_prices(rng, L, 0.0, 2.0)));
    P[kConvexity].record(check_midpoint_convexity(eval, random_prices(rng, L, 0.0, 2.0),
                                                  random_prices(rng, L, 0.0, 2.0)));
  }

  if (extra != nullptr && extra->num_links() > 0) {
    std::mt19937_64 extra_rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
    for (int i = 0; i < 10; ++i) {
      const PriceVector p = random_prices(extra_rng, extra->num_links());
      scheduling_checks(*extra, extra_k, p);
      if (extra->num_links() <= kEnumerationGuard) {
        const DualEvaluator eval(*extra, extra_k);
        const std::size_t L = extra->num_links();
        P[kSubgradient].record(check_epsilon_subgradient(eval, random_prices(extra_rng, L, 0.0, 2.0),
                                                         random_prices(extra_rng, L, 0.0, 2.0)));
        P[kConvexity].record(check_midpoint_convexity(eval, random_prices(extra_rng, L, 0.0, 2.0),
                                                      random_prices(extra_rng, L, 0.0, 2.0)));
      } else {
        ++P[kSubgradient].skipped;
        ++P[kConvexity].skipped;
      }
    }
  }
  return report;
}

}  // namespace dgs
