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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dgsched/interference.hpp"
#include "dgsched/network.hpp"
#include "dgsched/routing.hpp"
#include "dgsched/schedule.hpp"

namespace dgs {

enum class SchedulerMode { kDistributedGreedy, kCentralizedGreedy, kOptimal };

// Accepts "dgrd", "grd", "opt". Throws InputError otherwise.
SchedulerMode parse_mode(std::string_view s);
std::string_view mode_name(SchedulerMode m);

struct SolverConfig {
  double step = 0.01;                  // constant step size, > 0
  int iterations = 1000;               // >= 1
  std::vector<double> initial_prices;  // empty: all zero
  SchedulerMode mode = SchedulerMode::kDistributedGreedy;
  // Compute epsilon(p) with the exact scheduler when the network is within
  // the enumeration guard.
  bool use_oracle = true;

  void validate(const Network& net) const;
};

struct DualEvaluation {
  double d1 = 0.0;
  double d2 = 0.0;  // weight of the schedule chosen by the evaluated mode
  double d = 0.0;   // d1 + d2
  ScheduleSet schedule;
  std::vector<double> rates;  // x_f
  std::vector<double> y;      // aggregate link flow
  std::vector<double> h;      // c(p) - y(p)
  double h_norm = 0.0;
  // p^T (c_opt - c_mode); only when the exact scheduler ran.
  std::optional<double> epsilon;

  // Exact dual value D(p) = d1 + optimal weight, when known.
  std::optional<double> exact() const;
};

// Evaluates D(p) repeatedly on one network, caching the enumeration.
class DualEvaluator {
 public:
  DualEvaluator(const Network& net, int k, bool use_oracle = true);

  bool oracle_available() const { return optimal_.has_value(); }
  // Throws CapacityError for kOptimal when the oracle is unavailable.
  DualEvaluation evaluate(const PriceVector& p, SchedulerMode mode) const;
  const OptimalScheduler* oracle() const { return optimal_ ? &*optimal_ : nullptr; }

 private:
  const Network& net_;
  int k_;
  std::optional<OptimalScheduler> optimal_;
};

DualEvaluation evaluate_dual(const Network& net, int k, const PriceVector& p, SchedulerMode mode);

// p' = max(0, p + step (y - c)), entrywise.
PriceVector price_update(const PriceVector& p, std::span<const double> y, std::span<const double> c,
                         double step);

struct IterationRecord {
  int iter = 0;  // 1-based
  PriceVector prices;
  DualEvaluation eval;
  double cesaro = 0.0;  // mean of the tracked dual value over iterations 1..iter
};

struct SolverTrajectory {
  double step = 0.0;
  std::vector<IterationRecord> records;
  double observed_h = 0.0;  // max_j ||h(p[j])||_2
  double analytic_h = 0.0;  // sqrt(|L|) * max(1, |F|)
  // Max epsilon over the last 25% of iterations; empty without the oracle.
  std::optional<double> trailing_epsilon;
  // True when cesaro tracks the exact D(p) (d + epsilon); false when it falls
  // back to the evaluated mode's d.
  bool exact_dual = false;

  double final_cesaro() const { return records.empty() ? 0.0 : records.back().cesaro; }
};

// Dual value the Cesaro average is taken over.
double tracked_dual(const DualEvaluation& e);

SolverTrajectory run_solver(const Network& net, int k, const SolverConfig& config);

// iter,D,D1,D2,epsilon,cesaro_avg,h_norm,p_<link>...,x_<flow>...
std::string trajectory_csv(const Network& net, const SolverTrajectory& traj);

struct BandReport {
  double cesaro = 0.0;
  double d_lower = 0.0;  // lower bracket of D(p*)
  double d_upper = 0.0;  // upper bracket of D(p*)
  double step = 0.0;
  double eps_bound = 0.0;
  double analytic_h = 0.0;
  double observed_h = 0.0;
  double rel_tol = 0.0;
  double low_edge = 0.0;
  double high_edge_analytic = 0.0;
  double high_edge_observed = 0.0;
  bool inside_analytic = false;
  bool inside_observed = false;
  // Observed trailing epsilon exceeds the supplied eps_bound.
  bool epsilon_bound_risk = false;
  std::optional<double> observed_epsilon;
};

inline constexpr double kBandLowTolerance = 1e-6;
inline constexpr double kBandRelTolerance = 1e-2;

// Band [d_lower - 1e-6, d_upper + step H^2/2 + eps_bound + rel_tol |d_upper|]
// under the analytic and the observed H.
BandReport cesaro_report(const SolverTrajectory& traj, double d_lower, double d_upper,
                         double eps_bound, double rel_tol = kBandRelTolerance);
inline BandReport cesaro_report_exact(const SolverTrajectory& traj, double d_star,
                                      double eps_bound, double rel_tol = kBandRelTolerance) {
  return cesaro_report(traj, d_star, d_star, eps_bound, rel_tol);
}
std::string band_report_text(const BandReport& r);

struct FeasibilityReport {
  bool feasible = false;
  std::vector<std::string> violations;
  double utility = 0.0;  // sum_f U(x_f), meaningful when feasible
};

// Checks conservation per flow, 0 <= x_f <= 1, sum_f y_f <= M a and that the
// shares form a convex combination over `sets`.
FeasibilityReport primal_feasibility_check(const Network& net, const IndependentSetCollection& sets,
                                           const FlowAllocation& allocation,
                                           std::span<const double> shares, double tol = 1e-9);
FeasibilityReport primal_feasibility_check(const Network& net, int k,
                                           const FlowAllocation& allocation,
                                           std::span<const double> shares, double tol = 1e-9);

struct BracketConfig {
  double step = 0.5;  // step_j = step / sqrt(j)
  int iterations = 20000;
};

struct PrimalWitness {
  FlowAllocation allocation;
  std::vector<double> shares;  // over enumerate_maximal_independent_sets
  double utility = 0.0;
};

struct DualBracket {
  double lower = 0.0;  // best primal-feasible aggregate utility
  double upper = 0.0;  // min D(p[j]) over the exact-scheduler run
  PrimalWitness witness;
  std::vector<double> best_prices;
  double width() const { return upper - lower; }
};

// Throws CapacityError above the enumeration guard.
DualBracket bracket_dual_optimum(const Network& net, int k, const BracketConfig& config = {});
std::string bracket_report_text(const Network& net, const DualBracket& b);

}  // namespace dgs
