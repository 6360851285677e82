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

#include "dgsched/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "dgsched/config.hpp"
#include "dgsched/distributed.hpp"
#include "dgsched/dual.hpp"
#include "dgsched/errors.hpp"
#include "dgsched/interference.hpp"
#include "dgsched/schedule.hpp"
#include "dgsched/verify.hpp"
#include "text_util.hpp"

#ifndef DGSCHED_VERSION
#define DGSCHED_VERSION "0.0.0"
#endif

namespace dgs::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string command;
  std::string config;
  std::uint64_t seed = 1;
  std::string out_dir = "dgsched_out";
  std::string format = "table";
  std::string mode;
  int iterations = 0;
  double step = 0.0;
  int instances = 200;
  std::vector<double> prices;
  bool corrupt_tiebreak = false;
  std::vector<std::string> argv;
};

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open network document '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  f << content;
}

std::string json_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void write_manifest(const Options& o, const fs::path& dir, const std::string& config_text) {
  std::ostringstream m;
  m << "{\n"
    << "  \"tool\": \"dgsched\",\n"
    << "  \"version\": \"" << DGSCHED_VERSION << "\",\n"
    << "  \"command\": \"" << o.command << "\",\n"
    << "  \"config\": \"" << json_escape(o.config) << "\",\n"
    << "  \"config_sha256\": \"" << (o.config.empty() ? "" : sha256_hex(config_text)) << "\",\n"
    << "  \"seed\": " << o.seed << "\n"
    << "}\n";
  write_file(dir / "manifest.json", m.str());
}

fs::path prepare_out(const Options& o) {
  fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + o.out_dir + "': " + ec.message());
  return dir;
}

struct Loaded {
  std::string text;
  ExperimentDocument doc;
};

Loaded load(const Options& o) {
  if (o.config.empty()) throw InputError("--config is required for '" + o.command + "'");
  if (!fs::exists(o.config)) throw InputError("network document not found: '" + o.config + "'");
  Loaded l;
  l.text = read_file(o.config);
  l.doc = parse_document(l.text, o.config);
  return l;
}

PriceVector prices_for(const Options& o, const ExperimentDocument& doc, const Network& net) {
  std::vector<double> values;
  if (!o.prices.empty()) {
    values = o.prices;
  } else if (doc.prices) {
    values = *doc.prices;
  } else {
    throw InputError("'" + o.command + "' needs a price vector: add 'prices' to " + o.config +
                     " or pass --prices");
  }
  PriceVector p(values);
  check_price_length(net, p);
  return p;
}

std::string set_name(const Network& net, const std::vector<LinkId>& links) {
  std::string s = "{";
  for (std::size_t i = 0; i < links.size(); ++i) s += (i ? "," : "") + net.link_name(links[i]);
  return s + "}";
}

int cmd_solve(const Options& o, std::ostream& out) {
  const Loaded in = load(o);
  const Network net = build_network(in.doc);
  SolverConfig cfg;
  cfg.step = o.step > 0.0 ? o.step : in.doc.solver.step;
  cfg.iterations = o.iterations > 0 ? o.iterations : in.doc.solver.iterations;
  cfg.mode = o.mode.empty() ? in.doc.solver.mode : parse_mode(o.mode);
  cfg.initial_prices = in.doc.solver.initial_prices;
  const SolverTrajectory traj = run_solver(net, in.doc.k, cfg);

  const fs::path dir = prepare_out(o);
  write_file(dir / "trajectory.csv", trajectory_csv(net, traj));
  std::ostringstream band;
  band << "mode: " << mode_name(cfg.mode) << '\n'
       << "iterations: " << cfg.iterations << '\n';
  if (net.num_links() <= kEnumerationGuard) {
    const DualBracket bracket = bracket_dual_optimum(net, in.doc.k, in.doc.bracket);
    write_file(dir / "bracket_report.txt", bracket_report_text(net, bracket));
    const BandReport r =
        cesaro_report(traj, bracket.lower, bracket.upper, traj.trailing_epsilon.value_or(0.0));
    band << band_report_text(r);
  } else {
    write_file(dir / "bracket_report.txt",
               "unavailable: network exceeds the enumeration guard\n");
    band << "cesaro_average: " << detail::format_double(traj.final_cesaro()) << '\n'
         << "band: unavailable (no exact scheduler above " << kEnumerationGuard << " links)\n";
  }
  write_file(dir / "band_report.txt", band.str());
  write_manifest(o, dir, in.text);
  out << band.str();
  return kExitOk;
}

int cmd_schedule(const Options& o, std::ostream& out) {
  const Loaded in = load(o);
  const Network net = build_network(in.doc);
  const PriceVector p = prices_for(o, in.doc, net);
  std::ostringstream s;
  auto line = [&](std::string_view name, const ScheduleSet& set) {
    s << name << ": " << set_name(net, set.links) << " weight=" << detail::format_double(set.weight)
      << '\n';
  };
  const std::string only = o.mode;
  if (only.empty() || only == "dgrd") {
    line("dgrd", run_distributed_greedy(net, in.doc.k, p).schedule);
  }
  if (only.empty() || only == "grd") line("grd", centralized_greedy(net, in.doc.k, p));
  if (only.empty() || only == "opt") {
    if (net.num_links() <= kEnumerationGuard) {
      line("opt", optimal_schedule(net, in.doc.k, p));
    } else if (only == "opt") {
      throw CapacityError("optimal schedule needs exact enumeration (guard " +
                          std::to_string(kEnumerationGuard) + " links)");
    } else {
      s << "opt: skipped (network exceeds the enumeration guard)\n";
    }
  }
  const fs::path dir = prepare_out(o);
  write_file(dir / "schedule.txt", s.str());
  write_manifest(o, dir, in.text);
  out << s.str();
  return kExitOk;
}

int cmd_trace(const Options& o, std::ostream& out) {
  const Loaded in = load(o);
  const Network net = build_network(in.doc);
  const PriceVector p = prices_for(o, in.doc, net);
  const DistributedResult run = run_distributed_greedy(net, in.doc.k, p);
  const std::string table = render_trace(net, run.trace);
  const std::string csv = trace_csv(net, run.trace);
  const fs::path dir = prepare_out(o);
  write_file(dir / "trace.txt", table);
  write_file(dir / "trace.csv", csv);
  write_manifest(o, dir, in.text);
  out << (o.format == "csv" ? csv : table);
  if (o.format != "csv") {
    out << "schedule: " << set_name(net, run.schedule.links) << " rounds: " << run.rounds << '\n';
  }
  return kExitOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const Loaded in = load(o);
  const Network net = build_network(in.doc);
  const IndependentSetCollection sets = enumerate_maximal_independent_sets(net, in.doc.k);
  std::ostringstream s;
  s << "maximal independent sets (K=" << in.doc.k << "): " << sets.count() << '\n';
  for (const auto& set : sets.sets) s << set_name(net, set) << '\n';
  const fs::path dir = prepare_out(o);
  write_file(dir / "independent_sets.txt", s.str());
  write_manifest(o, dir, in.text);
  out << s.str();
  return kExitOk;
}

int cmd_degree(const Options& o, std::ostream& out) {
  const Loaded in = load(o);
  const Network net = build_network(in.doc);
  std::ostringstream s;
  s << "link,interference_set_size,degree\n";
  for (LinkId l = 0; l < net.num_links(); ++l) {
    s << detail::csv_field(net.link_name(l)) << ',' << interference_set(net, l, in.doc.k).size()
      << ',' << interference_degree_link(net, l, in.doc.k) << '\n';
  }
  const int graph = interference_degree_graph(net, in.doc.k);
  const fs::path dir = prepare_out(o);
  write_file(dir / "degree.csv", s.str());
  write_manifest(o, dir, in.text);
  out << s.str() << "graph_degree: " << graph << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  VerifyOptions vo;
  vo.seed = o.seed;
  vo.instances = o.instances;
  vo.corrupt_tiebreak = o.corrupt_tiebreak;
  std::optional<Loaded> in;
  std::optional<Network> net;
  if (!o.config.empty()) {
    in = load(o);
    net.emplace(build_network(in->doc));
  }
  const VerifyReport report = run_verification(vo, net ? &*net : nullptr, in ? in->doc.k : 1);
  const fs::path dir = prepare_out(o);
  write_file(dir / "verify_report.txt", report.text());
  write_manifest(o, dir, in ? in->text : std::string());
  out << report.text();
  return report.ok() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dual-decomposition utility maximization with distributed greedy K-hop scheduling",
               "dgsched"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DGSCHED_VERSION);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Network/experiment YAML document");
    sub->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--format", o.format, "Console output format")
        ->check(CLI::IsMember({"csv", "table"}))
        ->capture_default_str();
    sub->add_option("--mode", o.mode, "Scheduler")->check(CLI::IsMember({"dgrd", "grd", "opt"}));
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  };
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"solve", "Run the epsilon-subgradient price iteration and report the Cesaro band"},
      {"schedule", "Schedule once at fixed prices with each scheduler"},
      {"trace", "Trace the distributed greedy protocol at fixed prices"},
      {"enumerate", "List all maximal independent sets of links"},
      {"degree", "K-hop interference degree per link and for the graph"},
      {"verify", "Run the randomized property suites"},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    sub->callback([&o, name = s.name] { o.command = name; });
    if (std::string_view(s.name) == "solve") {
      sub->add_option("--iterations", o.iterations, "Override solver.iterations");
      sub->add_option("--step", o.step, "Override solver.step");
    }
    if (std::string_view(s.name) == "schedule" || std::string_view(s.name) == "trace") {
      sub->add_option("--prices", o.prices, "Price vector, one entry per link")->delimiter(',');
    }
    if (std::string_view(s.name) == "verify") {
      sub->add_option("--instances", o.instances, "Random instances per suite")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
      // Negative control for the equivalence suite.
      sub->add_flag("--corrupt-tiebreak", o.corrupt_tiebreak)->group("");
    }
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (o.command == "solve") return cmd_solve(o, out);
    if (o.command == "schedule") return cmd_schedule(o, out);
    if (o.command == "trace") return cmd_trace(o, out);
    if (o.command == "enumerate") return cmd_enumerate(o, out);
    if (o.command == "degree") return cmd_degree(o, out);
    if (o.command == "verify") return cmd_verify(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RoutingError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace dgs::cli
