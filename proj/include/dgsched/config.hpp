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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dgsched/dual.hpp"
#include "dgsched/network.hpp"

namespace dgs {

struct SolverSettings {
  double step = 0.01;
  int iterations = 1000;
  SchedulerMode mode = SchedulerMode::kDistributedGreedy;
  std::uint64_t seed = 1;
  std::vector<double> initial_prices;
};

// One YAML document describing a network and the experiments run on it.
//
//   K: 2
//   capacity: 1.0                # C; display only, rates stay normalized
//   nodes: [1, 2, 3]
//   links:                       # [tail, head, alpha]; alpha defaults to 1
//     - [1, 2, 1.0]
//   flows:                       # [source, destination, kind, weight]
//     - [1, 3, log1p, 1.0]
//   prices: [1.0, 2.0]           # optional, used by trace/schedule
//   solver: {step: 0.01, iterations: 20000, mode: dgrd, seed: 7}
//   bracket: {step: 0.5, iterations: 20000}
struct ExperimentDocument {
  std::string source;
  NetworkSpec network;
  int k = 1;
  double capacity = 1.0;
  std::optional<std::vector<double>> prices;
  SolverSettings solver;
  BracketConfig bracket;
};

// Errors are InputError with "<source>:<line>: field '<path>': <reason>".
ExperimentDocument parse_document(std::string_view text, std::string_view source = "<string>");
ExperimentDocument load_document(const std::filesystem::path& path);

// Builds the Network, prefixing invariant violations with the source name.
Network build_network(const ExperimentDocument& doc);

}  // namespace dgs
