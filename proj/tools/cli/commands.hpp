// Copyright 2026 The ca-harvest Authors.
//
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

#ifndef CAHARVEST_TOOLS_CLI_COMMANDS_HPP_
#define CAHARVEST_TOOLS_CLI_COMMANDS_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "caharvest/labels.hpp"
#include "cli/context.hpp"

namespace caharvest::cli {

struct Command {
  CLI::App* app = nullptr;
  // Long option names that must be set by a flag or the config file.
  std::vector<std::string> required;
  std::function<void(RunContext&)> run;
};

using CommandList = std::vector<Command>;

// ingest, dedup, embed
void add_corpus_commands(CLI::App& root, CommandList& commands);
// tune-dict, centroid-train, merge-train, weights
void add_training_commands(CLI::App& root, CommandList& commands);
// classify, evaluate, perturb
void add_classify_commands(CLI::App& root, CommandList& commands);
// aggregate, alpha, extend
void add_annotation_commands(CLI::App& root, CommandList& commands);
// rank, crosstab, dims
void add_analysis_commands(CLI::App& root, CommandList& commands);

// Writes `records` one per line.
template <class Range>
void write_records(std::ostream& out, const Range& records) {
  for (const auto& r : records) write_record(out, r);
}

// Splits "a,b,c" into its non-empty parts.
std::vector<std::string> split_list(const std::string& s);

// Accepts "participation", "none" or a participation level.
std::optional<BinaryLabel> parse_binary_or_level(std::string_view s);

}  // namespace caharvest::cli

#endif  // CAHARVEST_TOOLS_CLI_COMMANDS_HPP_
