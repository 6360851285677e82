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

#include "dgsched/config.hpp"

#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "dgsched/errors.hpp"

namespace dgs {

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field,
                         const std::string& why) const {
    std::ostringstream msg;
    msg << source_;
    if (node.IsDefined() && node.Mark().line >= 0) msg << ':' << node.Mark().line + 1;
    msg << ": field '" << field << "': " << why;
    throw InputError(msg.str());
  }

  template <class T>
  T scalar(const YAML::Node& node, const std::string& field, const char* expected) const {
    if (!node.IsScalar()) fail(node, field, std::string("expected ") + expected);
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, field, std::string("expected ") + expected + ", got '" + node.Scalar() + "'");
    }
  }

  YAML::Node sequence(const YAML::Node& node, const std::string& field) const {
    if (!node.IsSequence()) fail(node, field, "expected a list");
    return node;
  }

  std::vector<double> doubles(const YAML::Node& node, const std::string& field) const {
    std::vector<double> out;
    sequence(node, field);
    for (std::size_t i = 0; i < node.size(); ++i) {
      out.push_back(scalar<double>(node[i], field + "[" + std::to_string(i) + "]", "a number"));
    }
    return out;
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

}  // namespace

ExperimentDocument parse_document(std::string_view text, std::string_view source) {
  Reader rd{std::string(source)};
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw InputError(std::string(source) + ":" + std::to_string(e.mark.line + 1) +
                     ": syntax error: " + e.msg);
  }
  if (!root.IsMap()) throw InputError(std::string(source) + ": document must be a mapping");

  ExperimentDocument doc;
  doc.source = source;
  for (const char* required : {"K", "nodes", "links"}) {
    if (!root[required]) rd.fail(root, required, "missing required section");
  }
  doc.k = rd.scalar<int>(root["K"], "K", "an integer");
  if (doc.k < 1) rd.fail(root["K"], "K", "must be >= 1");
  if (root["capacity"]) {
    doc.capacity = rd.scalar<double>(root["capacity"], "capacity", "a number");
    if (!(doc.capacity > 0.0)) rd.fail(root["capacity"], "capacity", "must be positive");
  }

  const YAML::Node nodes = rd.sequence(root["nodes"], "nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    doc.network.nodes.push_back(
        rd.scalar<int>(nodes[i], "nodes[" + std::to_string(i) + "]", "an integer node id"));
  }

  const YAML::Node links = rd.sequence(root["links"], "links");
  for (std::size_t i = 0; i < links.size(); ++i) {
    const std::string field = "links[" + std::to_string(i) + "]";
    const YAML::Node e = rd.sequence(links[i], field);
    if (e.size() < 2 || e.size() > 3) rd.fail(e, field, "expected [tail, head] or [tail, head, alpha]");
    NetworkSpec::LinkEntry entry;
    entry.tail = rd.scalar<int>(e[0], field + "[0]", "an integer node id");
    entry.head = rd.scalar<int>(e[1], field + "[1]", "an integer node id");
    if (e.size() == 3) {
      entry.alpha = rd.scalar<double>(e[2], field + "[2]", "a number");
      if (!(entry.alpha > 0.0 && entry.alpha <= 1.0)) rd.fail(e[2], field + "[2]", "alpha must be in (0,1]");
    }
    doc.network.links.push_back(entry);
  }

  if (root["flows"]) {
    const YAML::Node flows = rd.sequence(root["flows"], "flows");
    for (std::size_t i = 0; i < flows.size(); ++i) {
      const std::string field = "flows[" + std::to_string(i) + "]";
      const YAML::Node e = rd.sequence(flows[i], field);
      if (e.size() < 2 || e.size() > 4) {
        rd.fail(e, field, "expected [source, destination, kind, weight]");
      }
      NetworkSpec::FlowEntry entry;
      entry.source = rd.scalar<int>(e[0], field + "[0]", "an integer node id");
      entry.destination = rd.scalar<int>(e[1], field + "[1]", "an integer node id");
      const std::string kind =
          e.size() >= 3 ? rd.scalar<std::string>(e[2], field + "[2]", "a utility kind") : "log1p";
      const double weight = e.size() == 4 ? rd.scalar<double>(e[3], field + "[3]", "a number") : 1.0;
      try {
        entry.utility = UtilityFunction::Parse(kind, weight);
      } catch (const InputError& err) {
        rd.fail(e, field, err.what());
      }
      doc.network.flows.push_back(entry);
    }
  }

  if (root["prices"]) {
    doc.prices = rd.doubles(root["prices"], "prices");
    for (std::size_t i = 0; i < doc.prices->size(); ++i) {
      if ((*doc.prices)[i] < 0.0) rd.fail(root["prices"], "prices[" + std::to_string(i) + "]", "must be >= 0");
    }
  }

  if (const YAML::Node s = root["solver"]) {
    if (!s.IsMap()) rd.fail(s, "solver", "expected a mapping");
    if (s["step"]) doc.solver.step = rd.scalar<double>(s["step"], "solver.step", "a number");
    if (s["iterations"]) {
      doc.solver.iterations = rd.scalar<int>(s["iterations"], "solver.iterations", "an integer");
    }
    if (s["seed"]) doc.solver.seed = rd.scalar<std::uint64_t>(s["seed"], "solver.seed", "an integer");
    if (s["mode"]) {
      try {
        doc.solver.mode = parse_mode(rd.scalar<std::string>(s["mode"], "solver.mode", "a mode"));
      } catch (const InputError& err) {
        rd.fail(s["mode"], "solver.mode", err.what());
      }
    }
    if (s["initial_prices"]) {
      doc.solver.initial_prices = rd.doubles(s["initial_prices"], "solver.initial_prices");
    }
    if (!(doc.solver.step > 0.0)) rd.fail(s["step"], "solver.step", "must be positive");
    if (doc.solver.iterations < 1) rd.fail(s["iterations"], "solver.iterations", "must be >= 1");
  }

  if (const YAML::Node b = root["bracket"]) {
    if (!b.IsMap()) rd.fail(b, "bracket", "expected a mapping");
    if (b["step"]) doc.bracket.step = rd.scalar<double>(b["step"], "bracket.step", "a number");
    if (b["iterations"]) {
      doc.bracket.iterations = rd.scalar<int>(b["iterations"], "bracket.iterations", "an integer");
    }
    if (!(doc.bracket.step > 0.0)) rd.fail(b["step"], "bracket.step", "must be positive");
    if (doc.bracket.iterations < 1) rd.fail(b["iterations"], "bracket.iterations", "must be >= 1");
  }
  return doc;
}

ExperimentDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open network document '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), path.string());
}

Network build_network(const ExperimentDocument& doc) {
  try {
    return Network(doc.network);
  } catch (const InputError& e) {
    throw InputError(doc.source + ": " + e.what());
  }
}

}  // namespace dgs
