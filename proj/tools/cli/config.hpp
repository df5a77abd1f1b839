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

// Flat key=value configuration files.
//
//   # comment
//   seed = 7
//   lexicon = data/lexicon.txt
//   classify.stage1 = dict
//
// A bare key applies to every subcommand that has an option of that name;
// "<subcommand>.<key>" applies to one subcommand and wins over a bare key.
// Flags given on the command line win over both.

#ifndef CAHARVEST_TOOLS_CLI_CONFIG_HPP_
#define CAHARVEST_TOOLS_CLI_CONFIG_HPP_

#include <filesystem>
#include <istream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "caharvest/records.hpp"

namespace caharvest::cli {

using ConfigMap = std::map<std::string, std::string>;

// Throws UsageError on a line without '=' or an empty key.
ConfigMap parse_config(std::istream& in, const std::string& source);

// Fills options of `root` and `command` not given on the command line.
// Throws UsageError for a key that names no option anywhere.
void apply_config(const ConfigMap& config, CLI::App& root, CLI::App& command);

// Every option of `root` and `command` with its effective value.
OrderedRecord resolved_options(const CLI::App& root, const CLI::App& command);

}  // namespace caharvest::cli

#endif  // CAHARVEST_TOOLS_CLI_CONFIG_HPP_
