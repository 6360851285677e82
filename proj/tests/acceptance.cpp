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

// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "dgsched/cli.hpp"
#include "dgsched/distributed.hpp"
#include "dgsched/dual.hpp"
#include "dgsched/instances.hpp"
#include "dgsched/routing.hpp"
#include "dgsched/verify.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace dgs;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body, double limit_s) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double elapsed = seconds_since(t0);
  if (o.pass && elapsed >= limit_s) {
    o.fail("took " + std::to_string(elapsed) + " s, limit " + std::to_string(limit_s) + " s");
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), elapsed,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kLineHeader =
    "K: 2\nnodes: [1, 2, 3, 4, 5, 6, 7]\n"
    "links: [[1, 2], [2, 3], [3, 4], [4, 5], [5, 6], [6, 7]]\n";

// Runs `dgsched trace` on the seven-node line and compares against the
// expected table, cell by cell.
void check_trace_table(Outcome& o, const std::string& tag, const std::string& prices,
                       const std::vector<std::vector<std::string>>& expected) {
  const fs::path dir = fs::temp_directory_path() / ("dgsched_acceptance_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "net.yaml") << kLineHeader << "prices: [" << prices << "]\n";
  std::ostringstream out, err;
  const int code = cli::run({"dgsched", "trace", "--config", (dir / "net.yaml").string(), "--out",
                             (dir / "out").string(), "--format", "csv"},
                            out, err);
  if (code != 0) return o.fail(tag + ": exit " + std::to_string(code) + " " + err.str());
  std::istringstream csv(out.str());
  std::string line;
  std::getline(csv, line);
  if (line != "time,\"(1,2)\",\"(2,3)\",\"(3,4)\",\"(4,5)\",\"(5,6)\",\"(6,7)\"") {
    return o.fail(tag + ": header " + line);
  }
  std::size_t row = 0;
  while (std::getline(csv, line)) {
    if (row >= expected.size()) return o.fail(tag + ": extra row " + line);
    std::string want;
    for (std::size_t c = 0; c < expected[row].size(); ++c) want += (c ? "," : "") + expected[row][c];
    if (line != want) return o.fail(tag + ": row " + std::to_string(row) + " is " + line);
    ++row;
  }
  if (row != expected.size()) o.fail(tag + ": " + std::to_string(row) + " rows");
  if (slurp(dir / "out" / "trace.csv") != out.str()) o.fail(tag + ": trace.csv differs from stdout");
}

Outcome criterion_tables() {
  Outcome o;
  check_trace_table(o, "fig2", "6, 5, 4, 3, 2, 1",
                    {{"0", "O", "O", "O", "O", "O", "O"},
                     {"T_L^1", "M", "CH", "CH", "CH", "CH", "CH"},
                     {"T_M^1", "M", "CL", "CL", "O", "O", "O"},
                     {"T_L^2", "M", "CL", "CL", "M", "CH", "CH"},
                     {"T_M^2", "M", "CL", "CL", "M", "CL", "CL"}});
  check_trace_table(o, "fig4", "5, 3, 2, 6, 4, 1",
                    {{"0", "O", "O", "O", "O", "O", "O"},
                     {"T_L^1", "O", "CH", "CH", "M", "CH", "CH"},
                     {"T_M^1", "O", "CL", "CL", "M", "CL", "CL"},
                     {"T_L^2", "M", "CL", "CL", "M", "CL", "CL"},
                     {"T_M^2", "M", "CL", "CL", "M", "CL", "CL"}});
  const Network net = testing::line7_network();
  for (const auto& prices : {std::vector<double>{6, 5, 4, 3, 2, 1}, std::vector<double>{5, 3, 2, 6, 4, 1}}) {
    const DistributedResult r = run_distributed_greedy(net, 2, PriceVector(prices));
    if (r.schedule.links != std::vector<LinkId>{0, 3}) o.fail("final schedule is not {(1,2),(4,5)}");
  }
  return o;
}

struct Instance {
  Network net;
  int k;
  PriceVector p;
};

// 500 random connected graphs, 6-20 links, K cycling 1..3, uniform prices.
const std::vector<Instance>& scheduling_instances() {
  static const std::vector<Instance> instances = [] {
    std::mt19937_64 rng(20260101);
    std::vector<Instance> out;
    for (int i = 0; i < 500; ++i) {
      Network net = random_network(rng, {.min_links = 6, .max_links = 20});
      PriceVector p = random_prices(rng, net.num_links());
      out.push_back({std::move(net), 1 + i % 3, std::move(p)});
    }
    return out;
  }();
  return instances;
}

Outcome criterion_equivalence() {
  Outcome o;
  int agree = 0;
  for (const Instance& in : scheduling_instances()) {
    if (const CheckResult r = check_greedy_equivalence(in.net, in.k, in.p)) {
      o.fail(*r);
    } else {
      ++agree;
    }
  }
  o.detail = std::to_string(agree) + "/" + std::to_string(scheduling_instances().size()) +
             " agree" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion_termination() {
  Outcome o;
  int max_rounds = 0;
  for (const Instance& in : scheduling_instances()) {
    const DistributedResult r = run_distributed_greedy(in.net, in.k, in.p);
    max_rounds = std::max(max_rounds, r.rounds);
    if (r.rounds > static_cast<int>(in.net.num_links())) o.fail("rounds exceed |L|");
    if (const CheckResult c = check_protocol(in.net, in.k, in.p).termination) o.fail(*c);
  }
  if (o.pass) o.detail = "max rounds " + std::to_string(max_rounds);
  return o;
}

Outcome criterion_ratio() {
  Outcome o;
  std::mt19937_64 rng(20260202);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const Network net = random_network(rng, {.min_links = 6, .max_links = 20});
    const int k = 1 + i % 3;
    const PriceVector p = random_prices(rng, net.num_links());
    if (const CheckResult r = check_greedy_ratio(net, k, p)) o.fail(*r);
    ++checked;
  }
  if (o.pass) o.detail = std::to_string(checked) + " instances";
  return o;
}

Network flow_network(std::mt19937_64& rng, int i) {
  return random_network(rng, {.min_links = 6,
                              .max_links = 16,
                              .bidirectional = true,
                              .num_flows = static_cast<std::size_t>(1 + i % 3)});
}

Outcome criterion_subgradient() {
  Outcome o;
  std::mt19937_64 rng(20260303);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const Network net = flow_network(rng, i);
    const DualEvaluator eval(net, 1 + i % 3);
    const PriceVector p = random_prices(rng, net.num_links());
    const PriceVector pbar = random_prices(rng, net.num_links());
    const double slack = epsilon_subgradient_slack(eval, p, pbar);
    worst = std::min(worst, slack);
    if (slack < -1e-9) o.fail("slack " + std::to_string(slack));
  }
  if (o.pass) {
    std::ostringstream s;
    s << "100 pairs, min slack " << worst;
    o.detail = s.str();
  }
  return o;
}

Outcome criterion_convexity() {
  Outcome o;
  std::mt19937_64 rng(20260404);
  for (int i = 0; i < 100; ++i) {
    const Network net = flow_network(rng, i);
    const DualEvaluator eval(net, 1 + i % 3);
    const PriceVector p1 = random_prices(rng, net.num_links(), 0.0, 2.0);
    const PriceVector p2 = random_prices(rng, net.num_links(), 0.0, 2.0);
    if (const CheckResult r = check_midpoint_convexity(eval, p1, p2, 1e-9)) o.fail(*r);
  }
  if (o.pass) o.detail = "100 pairs";
  return o;
}

SolverConfig band_config() {
  SolverConfig cfg;
  cfg.step = 0.01;
  cfg.iterations = 20000;
  cfg.mode = SchedulerMode::kDistributedGreedy;
  return cfg;
}

// min_p D(p) over p in [0, 2] with spacing 1e-4.
double single_link_grid_optimum() {
  const Network net = testing::single_link_network();
  const DualEvaluator eval(net, 1);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 20000; ++i) {
    const double d = *eval.evaluate(PriceVector({i * 1e-4}), SchedulerMode::kOptimal).exact();
    best = std::min(best, d);
  }
  return best;
}

std::string band_detail(const BandReport& r) {
  std::ostringstream s;
  s.precision(10);
  s << "cesaro " << r.cesaro << " in [" << r.low_edge << ", " << r.high_edge_analytic << "]";
  return s.str();
}

std::string csv_single, csv_line;

Outcome criterion_band_single() {
  Outcome o;
  const Network net = testing::single_link_network();
  const double d_star = single_link_grid_optimum();
  const SolverTrajectory t = run_solver(net, 1, band_config());
  csv_single = trajectory_csv(net, t);
  const BandReport r = cesaro_report_exact(t, d_star, t.trailing_epsilon.value_or(0.0));
  if (!r.inside_analytic) o.fail(band_detail(r));
  if (o.pass) o.detail = band_detail(r);
  return o;
}

Outcome criterion_band_line() {
  Outcome o;
  const Network net = testing::line7_network(true);
  const DualBracket b = bracket_dual_optimum(net, 2);
  const SolverTrajectory t = run_solver(net, 2, band_config());
  csv_line = trajectory_csv(net, t);
  const BandReport r = cesaro_report(t, b.lower, b.upper, t.trailing_epsilon.value_or(0.0));
  if (!r.inside_analytic) o.fail(band_detail(r));
  if (o.pass) o.detail = band_detail(r);
  return o;
}

Outcome criterion_bracket() {
  Outcome o;
  std::ostringstream s;
  s.precision(6);
  const Network single = testing::single_link_network();
  const Network line = testing::line7_network(true);
  for (const auto& [name, net, k] :
       {std::tuple<const char*, const Network*, int>{"single", &single, 1}, {"line", &line, 2}}) {
    const DualBracket b = bracket_dual_optimum(*net, k);
    const double rel = b.width() / std::abs(b.upper);
    s << name << " [" << b.lower << ", " << b.upper << "] rel width " << rel << "; ";
    if (b.lower > b.upper) o.fail(std::string(name) + ": lower above upper");
    if (!(rel < 0.05)) o.fail(std::string(name) + ": relative width " + std::to_string(rel));
    const FeasibilityReport f =
        primal_feasibility_check(*net, k, b.witness.allocation, b.witness.shares);
    if (!f.feasible) o.fail(std::string(name) + ": witness infeasible");
  }
  if (o.pass) o.detail = s.str();
  return o;
}

Outcome criterion_determinism() {
  Outcome o;
  const Network single = testing::single_link_network();
  const Network line = testing::line7_network(true);
  if (trajectory_csv(single, run_solver(single, 1, band_config())) != csv_single) {
    o.fail("single-link CSV differs");
  }
  if (trajectory_csv(line, run_solver(line, 2, band_config())) != csv_line) {
    o.fail("line CSV differs");
  }
  if (csv_single.empty() || csv_line.empty()) o.fail("reference runs missing");
  return o;
}

Outcome criterion_source_rate() {
  Outcome o;
  const Flow f{0, 0, 1, UtilityFunction(UtilityFunction::Kind::kLog1p, 1.0)};
  const std::pair<double, double> cases[] = {{0.8, 0.25}, {1.0, 0.0}, {1.5, 0.0}, {0.0, 1.0}};
  for (const auto& [cost, rate] : cases) {
    if (source_rate(f, cost) != rate) {
      o.fail("p=" + std::to_string(cost) + " gives " + std::to_string(source_rate(f, cost)));
    }
  }
  return o;
}

}  // namespace

int main() {
  report(1, "trace tables on the seven-node line", criterion_tables, 1.0);
  report(2, "distributed equals centralized greedy", criterion_equivalence, 30.0);
  report(3, "termination within |L| rounds, strict progress", criterion_termination, 30.0);
  report(4, "greedy ratio within interference degree", criterion_ratio, 30.0);
  report(5, "epsilon-subgradient inequality", criterion_subgradient, 30.0);
  report(6, "midpoint convexity of D", criterion_convexity, 30.0);
  report(7, "Cesaro band, single link", criterion_band_single, 120.0);
  report(7, "Cesaro band, seven-node line with two flows", criterion_band_line, 120.0);
  report(8, "primal-dual bracket width below 5%", criterion_bracket, 120.0);
  report(9, "byte-identical trajectory CSVs", criterion_determinism, 240.0);
  report(10, "source rate closed form", criterion_source_rate, 1.0);
  return failures;
}
