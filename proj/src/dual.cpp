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

#include "dgsched/dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "dgsched/distributed.hpp"
#include "dgsched/errors.hpp"
#include "text_util.hpp"

namespace dgs {

SchedulerMode parse_mode(std::string_view s) {
  if (s == "dgrd") return SchedulerMode::kDistributedGreedy;
  if (s == "grd") return SchedulerMode::kCentralizedGreedy;
  if (s == "opt") return SchedulerMode::kOptimal;
  throw InputError("unknown scheduler mode '" + std::string(s) + "' (expected dgrd, grd or opt)");
}

std::string_view mode_name(SchedulerMode m) {
  switch (m) {
    case SchedulerMode::kDistributedGreedy:
      return "dgrd";
    case SchedulerMode::kCentralizedGreedy:
      return "grd";
    case SchedulerMode::kOptimal:
      return "opt";
  }
  return "?";
}

void SolverConfig::validate(const Network& net) const {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw InputError("step size must be positive, got " + std::to_string(step));
  }
  if (iterations < 1) throw InputError("iterations must be >= 1, got " + std::to_string(iterations));
  if (!initial_prices.empty() && initial_prices.size() != net.num_links()) {
    throw InputError("initial_prices has " + std::to_string(initial_prices.size()) +
                     " entries, expected " + std::to_string(net.num_links()));
  }
  if (!initial_prices.empty()) static_cast<void>(PriceVector(initial_prices));  // throws on bad entries
  if (mode == SchedulerMode::kOptimal && net.num_links() > kEnumerationGuard) {
    throw CapacityError("mode opt needs exact enumeration, which is limited to " +
                        std::to_string(kEnumerationGuard) + " links");
  }
}

std::optional<double> DualEvaluation::exact() const {
  if (!epsilon) return std::nullopt;
  return d + *epsilon;
}

double tracked_dual(const DualEvaluation& e) { return e.exact().value_or(e.d); }

DualEvaluator::DualEvaluator(const Network& net, int k, bool use_oracle)
    : net_(net), k_(InterferenceModel(k).k()) {
  if (use_oracle && net.num_links() <= kEnumerationGuard) optimal_.emplace(net, k);
}

DualEvaluation DualEvaluator::evaluate(const PriceVector& p, SchedulerMode mode) const {
  check_price_length(net_, p);
  DualEvaluation e;
  D1Result d1 = solve_d1(net_, p);
  e.d1 = d1.value;
  e.rates = std::move(d1.allocation.rates);
  e.y = std::move(d1.allocation.aggregate);

  switch (mode) {
    case SchedulerMode::kDistributedGreedy: {
      SimOptions opts;
      opts.record_trace = false;
      e.schedule = run_distributed_greedy(net_, k_, p, std::move(opts)).schedule;
      break;
    }
    case SchedulerMode::kCentralizedGreedy:
      e.schedule = centralized_greedy(net_, k_, p);
      break;
    case SchedulerMode::kOptimal:
      if (!optimal_) {
        throw CapacityError("optimal scheduler unavailable: network exceeds the enumeration guard");
      }
      e.schedule = optimal_->schedule(p);
      break;
  }
  e.d2 = e.schedule.weight;
  e.d = e.d1 + e.d2;

  e.h.resize(net_.num_links());
  double sq = 0.0;
  for (LinkId l = 0; l < net_.num_links(); ++l) {
    e.h[l] = e.schedule.indicator[l] - e.y[l];
    sq += e.h[l] * e.h[l];
  }
  e.h_norm = std::sqrt(sq);

  if (mode == SchedulerMode::kOptimal) {
    e.epsilon = 0.0;
  } else if (optimal_) {
    e.epsilon = optimal_->schedule(p).weight - e.d2;
  }
  return e;
}

DualEvaluation evaluate_dual(const Network& net, int k, const PriceVector& p, SchedulerMode mode) {
  return DualEvaluator(net, k).evaluate(p, mode);
}

PriceVector price_update(const PriceVector& p, std::span<const double> y, std::span<const double> c,
                         double step) {
  if (y.size() != p.size() || c.size() != p.size()) {
    throw InputError("price_update: vectors must have equal length");
  }
  if (!(step > 0.0)) throw InputError("price_update: step must be positive");
  std::vector<double> next(p.size());
  for (std::size_t l = 0; l < p.size(); ++l) {
    next[l] = std::max(0.0, p[l] + step * (y[l] - c[l]));
  }
  return PriceVector(std::move(next));
}

SolverTrajectory run_solver(const Network& net, int k, const SolverConfig& config) {
  config.validate(net);
  const DualEvaluator evaluator(net, k, config.use_oracle);
  SolverTrajectory traj;
  traj.step = config.step;
  traj.analytic_h = std::sqrt(static_cast<double>(net.num_links())) *
                    std::max<double>(1.0, static_cast<double>(net.num_flows()));
  traj.exact_dual = evaluator.oracle_available();
  traj.records.reserve(config.iterations);

  PriceVector p = config.initial_prices.empty() ? PriceVector::Zero(net.num_links())
                                                : PriceVector(config.initial_prices);
  double running = 0.0;
  for (int j = 1; j <= config.iterations; ++j) {
    DualEvaluation e = evaluator.evaluate(p, config.mode);
    running += tracked_dual(e);
    traj.observed_h = std::max(traj.observed_h, e.h_norm);
    PriceVector next = price_update(p, e.y, e.schedule.indicator, config.step);
    traj.records.push_back({j, std::move(p), std::move(e), running / j});
    p = std::move(next);
  }

  if (traj.exact_dual) {
    const std::size_t n = traj.records.size();
    const std::size_t window = std::max<std::size_t>(1, (n + 3) / 4);
    double eps = 0.0;
    for (std::size_t i = n - window; i < n; ++i) {
      eps = std::max(eps, *traj.records[i].eval.epsilon);
    }
    traj.trailing_epsilon = eps;
  }
  return traj;
}

std::string trajectory_csv(const Network& net, const SolverTrajectory& traj) {
  using detail::csv_field;
  using detail::format_double;
  std::ostringstream out;
  out << "iter,D,D1,D2,epsilon,cesaro_avg,h_norm";
  for (LinkId l = 0; l < net.num_links(); ++l) out << ',' << csv_field("p" + net.link_name(l));
  for (std::size_t f = 0; f < net.num_flows(); ++f) out << ",x" << f;
  out << '\n';
  for (const IterationRecord& r : traj.records) {
    const DualEvaluation& e = r.eval;
    out << r.iter << ',' << format_double(e.d) << ',' << format_double(e.d1) << ','
        << format_double(e.d2) << ',' << (e.epsilon ? format_double(*e.epsilon) : std::string())
        << ',' << format_double(r.cesaro) << ',' << format_double(e.h_norm);
    for (double v : r.prices.values()) out << ',' << format_double(v);
    for (double x : e.rates) out << ',' << format_double(x);
    out << '\n';
  }
  return out.str();
}

BandReport cesaro_report(const SolverTrajectory& traj, double d_lower, double d_upper,
                         double eps_bound, double rel_tol) {
  BandReport r;
  r.cesaro = traj.final_cesaro();
  r.d_lower = d_lower;
  r.d_upper = d_upper;
  r.step = traj.step;
  r.eps_bound = eps_bound;
  r.analytic_h = traj.analytic_h;
  r.observed_h = traj.observed_h;
  r.rel_tol = rel_tol;
  r.low_edge = d_lower - kBandLowTolerance;
  const double slack = eps_bound + rel_tol * std::abs(d_upper);
  r.high_edge_analytic = d_upper + traj.step * r.analytic_h * r.analytic_h / 2.0 + slack;
  r.high_edge_observed = d_upper + traj.step * r.observed_h * r.observed_h / 2.0 + slack;
  r.inside_analytic = r.cesaro >= r.low_edge && r.cesaro <= r.high_edge_analytic;
  r.inside_observed = r.cesaro >= r.low_edge && r.cesaro <= r.high_edge_observed;
  r.observed_epsilon = traj.trailing_epsilon;
  r.epsilon_bound_risk = traj.trailing_epsilon && *traj.trailing_epsilon > eps_bound;
  return r;
}

std::string band_report_text(const BandReport& r) {
  using detail::format_double;
  std::ostringstream out;
  out << "cesaro_average: " << format_double(r.cesaro) << '\n'
      << "dual_optimum_bracket: [" << format_double(r.d_lower) << ", " << format_double(r.d_upper)
      << "]\n"
      << "step: " << format_double(r.step) << '\n'
      << "epsilon_bound: " << format_double(r.eps_bound) << '\n'
      << "observed_trailing_epsilon: "
      << (r.observed_epsilon ? format_double(*r.observed_epsilon) : std::string("unavailable"))
      << '\n'
      << "H_analytic: " << format_double(r.analytic_h) << '\n'
      << "H_observed: " << format_double(r.observed_h) << '\n'
      << "band_analytic: [" << format_double(r.low_edge) << ", "
      << format_double(r.high_edge_analytic) << "] inside=" << (r.inside_analytic ? "yes" : "no")
      << '\n'
      << "band_observed: [" << format_double(r.low_edge) << ", "
      << format_double(r.high_edge_observed) << "] inside=" << (r.inside_observed ? "yes" : "no")
      << '\n';
  if (r.epsilon_bound_risk) {
    out << "warning: observed trailing epsilon exceeds epsilon_bound; band may be violated\n";
  }
  return out.str();
}

FeasibilityReport primal_feasibility_check(const Network& net, const IndependentSetCollection& sets,
                                           const FlowAllocation& allocation,
                                           std::span<const double> shares, double tol) {
  FeasibilityReport rep;
  auto& v = rep.violations;
  const std::size_t L = net.num_links();

  if (shares.size() != sets.count()) {
    v.push_back("shares: " + std::to_string(shares.size()) + " entries for " +
                std::to_string(sets.count()) + " independent sets");
  } else if (sets.count() > 0) {
    double sum = 0.0;
    for (std::size_t k = 0; k < shares.size(); ++k) {
      if (shares[k] < -tol) v.push_back("share " + std::to_string(k) + " is negative");
      sum += shares[k];
    }
    if (std::abs(sum - 1.0) > tol) {
      v.push_back("shares sum to " + detail::format_double(sum) + ", expected 1");
    }
  }
  if (allocation.rates.size() != net.num_flows() || allocation.per_flow.size() != net.num_flows()) {
    v.push_back("allocation does not cover every flow");
    return rep;
  }

  std::vector<double> capacity(L, 0.0);
  if (shares.size() == sets.count()) {
    for (std::size_t k = 0; k < sets.count(); ++k) {
      for (LinkId l : sets.sets[k]) capacity[l] += shares[k] * net.alpha(l);
    }
  }
  std::vector<double> load(L, 0.0);
  for (const Flow& f : net.flows()) {
    const std::string tag = "flow " + std::to_string(f.id);
    const double x = allocation.rates[f.id];
    const auto& yf = allocation.per_flow[f.id];
    if (yf.size() != L) {
      v.push_back(tag + ": per-link vector has wrong length");
      continue;
    }
    if (x < -tol) v.push_back(tag + ": negative rate");
    if (x > 1.0 + tol) v.push_back(tag + ": rate " + detail::format_double(x) + " exceeds 1");
    for (LinkId l = 0; l < L; ++l) {
      if (yf[l] < -tol) v.push_back(tag + ": negative flow on link " + net.link_name(l));
      load[l] += yf[l];
    }
    for (NodeIndex n = 0; n < net.num_nodes(); ++n) {
      double net_out = 0.0;
      for (LinkId l = 0; l < L; ++l) net_out += net.incidence(n, l) * yf[l];
      double expected = 0.0;
      if (n == f.source) expected = x;
      if (n == f.destination) expected = -x;
      if (std::abs(net_out - expected) > tol) {
        v.push_back(tag + ": conservation violated at node " + std::to_string(net.label(n)));
      }
    }
  }
  for (LinkId l = 0; l < L; ++l) {
    if (load[l] > capacity[l] + tol) {
      v.push_back("link " + net.link_name(l) + ": load " + detail::format_double(load[l]) +
                  " exceeds time-shared capacity " + detail::format_double(capacity[l]));
    }
  }
  rep.feasible = v.empty();
  for (const Flow& f : net.flows()) rep.utility += f.utility.value(allocation.rates[f.id]);
  return rep;
}

FeasibilityReport primal_feasibility_check(const Network& net, int k,
                                           const FlowAllocation& allocation,
                                           std::span<const double> shares, double tol) {
  return primal_feasibility_check(net, enumerate_maximal_independent_sets(net, k), allocation,
                                  shares, tol);
}

namespace {

// Step-weighted running averages of the primal quantities produced by the
// exact-scheduler dual iteration.
struct ErgodicAverage {
  double weight = 0.0;
  std::vector<double> rates;
  std::vector<std::vector<double>> per_flow;
  std::vector<double> shares;

  ErgodicAverage(std::size_t flows, std::size_t links, std::size_t sets)
      : rates(flows, 0.0), per_flow(flows, std::vector<double>(links, 0.0)), shares(sets, 0.0) {}

  void add(double w, const D1Result& d1, std::size_t set_index) {
    weight += w;
    for (std::size_t f = 0; f < rates.size(); ++f) {
      rates[f] += w * d1.allocation.rates[f];
      for (std::size_t l = 0; l < per_flow[f].size(); ++l) {
        per_flow[f][l] += w * d1.allocation.per_flow[f][l];
      }
    }
    if (!shares.empty()) shares[set_index] += w;
  }
};

// Turns averaged (rates, routes, shares) into a feasible point: scale every
// flow down uniformly until all links fit, then greedily raise individual
// flows into leftover capacity.
PrimalWitness make_feasible(const Network& net, const IndependentSetCollection& sets,
                            const ErgodicAverage& avg) {
  const std::size_t L = net.num_links();
  const std::size_t F = net.num_flows();
  PrimalWitness w;
  w.shares.resize(avg.shares.size());
  for (std::size_t k = 0; k < avg.shares.size(); ++k) w.shares[k] = avg.shares[k] / avg.weight;

  std::vector<double> capacity(L, 0.0);
  for (std::size_t k = 0; k < sets.count(); ++k) {
    for (LinkId l : sets.sets[k]) capacity[l] += w.shares[k] * net.alpha(l);
  }
  std::vector<double> rate(F);
  std::vector<std::vector<double>> route(F, std::vector<double>(L, 0.0));  // y_fl per unit rate
  for (std::size_t f = 0; f < F; ++f) {
    rate[f] = avg.rates[f] / avg.weight;
    if (rate[f] > 0.0) {
      for (LinkId l = 0; l < L; ++l) route[f][l] = (avg.per_flow[f][l] / avg.weight) / rate[f];
    } else {
      // No averaged traffic: fall back to the zero-price path.
      const PricedPath path = least_priced_path(net, net.flows()[f], PriceVector::Zero(L));
      for (LinkId l : path.links) route[f][l] = 1.0;
      rate[f] = 0.0;
    }
  }

  auto load_on = [&](LinkId l) {
    double s = 0.0;
    for (std::size_t f = 0; f < F; ++f) s += rate[f] * route[f][l];
    return s;
  };
  double theta = 1.0;
  for (LinkId l = 0; l < L; ++l) {
    const double load = load_on(l);
    if (load > capacity[l]) theta = std::min(theta, capacity[l] / load);
  }
  for (double& x : rate) x *= theta;

  for (int sweep = 0; sweep < 2; ++sweep) {
    for (std::size_t f = 0; f < F; ++f) {
      double room = 1.0 - rate[f];
      for (LinkId l = 0; l < L; ++l) {
        if (route[f][l] > 0.0) {
          room = std::min(room, (capacity[l] - load_on(l)) / route[f][l]);
        }
      }
      // Stay strictly inside to absorb rounding in the feasibility check.
      if (room > 1e-12) rate[f] += room * (1.0 - 1e-12);
    }
  }

  w.allocation.rates = rate;
  w.allocation.aggregate.assign(L, 0.0);
  w.allocation.paths.resize(F);
  for (std::size_t f = 0; f < F; ++f) {
    std::vector<double> yf(L);
    for (LinkId l = 0; l < L; ++l) {
      yf[l] = rate[f] * route[f][l];
      w.allocation.aggregate[l] += yf[l];
      if (route[f][l] > 0.0) w.allocation.paths[f].push_back(l);
    }
    w.allocation.per_flow.push_back(std::move(yf));
  }
  for (const Flow& f : net.flows()) w.utility += f.utility.value(rate[f.id]);
  return w;
}

}  // namespace

DualBracket bracket_dual_optimum(const Network& net, int k, const BracketConfig& config) {
  if (!(config.step > 0.0) || config.iterations < 1) {
    throw InputError("bracket run needs a positive step and at least one iteration");
  }
  const OptimalScheduler scheduler(net, k);
  const IndependentSetCollection& sets = scheduler.collection();
  const std::size_t L = net.num_links();
  const std::size_t F = net.num_flows();
  const int n = config.iterations;

  // Averages over the trailing half, quarter and tenth of the run.
  const int starts[] = {n / 2, n - n / 4, n - n / 10};
  std::vector<ErgodicAverage> windows(std::size(starts), ErgodicAverage(F, L, sets.count()));

  DualBracket b;
  b.upper = std::numeric_limits<double>::infinity();
  PriceVector p = PriceVector::Zero(L);
  for (int j = 1; j <= n; ++j) {
    const D1Result d1 = solve_d1(net, p);
    const std::size_t best = sets.count() > 0 ? scheduler.best_index(p) : 0;
    const ScheduleSet sched =
        sets.count() > 0 ? make_schedule(net, sets.sets[best], p) : make_schedule(net, {}, p);
    const double d = d1.value + sched.weight;
    if (d < b.upper) {
      b.upper = d;
      b.best_prices = p.values();
    }
    const double step = config.step / std::sqrt(static_cast<double>(j));
    for (std::size_t w = 0; w < windows.size(); ++w) {
      if (j > starts[w]) windows[w].add(step, d1, best);
    }
    p = price_update(p, d1.allocation.aggregate, sched.indicator, step);
  }

  b.lower = -std::numeric_limits<double>::infinity();
  for (const ErgodicAverage& avg : windows) {
    if (avg.weight <= 0.0) continue;
    PrimalWitness w = make_feasible(net, sets, avg);
    const FeasibilityReport rep = primal_feasibility_check(net, sets, w.allocation, w.shares);
    if (!rep.feasible) continue;
    if (w.utility > b.lower) {
      b.lower = w.utility;
      b.witness = std::move(w);
    }
  }
  if (!std::isfinite(b.lower)) {
    throw InvariantViolation("bracket_dual_optimum: no feasible primal witness recovered");
  }
  return b;
}

std::string bracket_report_text(const Network& net, const DualBracket& b) {
  using detail::format_double;
  std::ostringstream out;
  out << "lower_primal_utility: " << format_double(b.lower) << '\n'
      << "upper_dual_value: " << format_double(b.upper) << '\n'
      << "width: " << format_double(b.width()) << '\n';
  for (std::size_t f = 0; f < b.witness.allocation.rates.size(); ++f) {
    out << "witness_rate_flow" << f << ": " << format_double(b.witness.allocation.rates[f]) << '\n';
  }
  for (LinkId l = 0; l < b.best_prices.size(); ++l) {
    out << "best_price" << net.link_name(l) << ": " << format_double(b.best_prices[l]) << '\n';
  }
  return out.str();
}

}  // namespace dgs
