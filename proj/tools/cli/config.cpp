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

#include "cli/config.hpp"

#include "caharvest/text.hpp"
#include "cli/context.hpp"

namespace caharvest::cli {
namespace {

// Long name of a settable option; empty for help and positionals.
std::string option_key(const CLI::Option* opt) {
  const auto& names = opt->get_lnames();
  if (names.empty() || names.front() == "help") return {};
  return names.front();
}

CLI::Option* find_option(CLI::App& app, const std::string& key) {
  for (CLI::Option* opt : app.get_options({})) {
    if (option_key(opt) == key) return opt;
  }
  return nullptr;
}

void set_option(CLI::Option* opt, const std::string& key,
                const std::string& value) {
  try {
    opt->add_result(value);
    opt->run_callback();
  } catch (const CLI::Error& e) {
    throw UsageError("config key '" + key + "': " + e.what());
  }
}

}  // namespace

ConfigMap parse_config(std::istream& in, const std::string& source) {
  ConfigMap config;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    const std::string where = source + ":" + std::to_string(number);
    if (eq == std::string_view::npos) {
      throw UsageError(where + ": expected key = value");
    }
    std::string key(trim(body.substr(0, eq)));
    std::string_view value = trim(body.substr(eq + 1));
    if (key.empty()) throw UsageError(where + ": empty key");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    config[std::move(key)] = std::string(value);
  }
  return config;
}

void apply_config(const ConfigMap& config, CLI::App& root, CLI::App& command) {
  const auto subcommands = root.get_subcommands({});
  for (const auto& [key, value] : config) {
    const auto dot = key.find('.');
    bool known = false;
    if (dot != std::string::npos) {
      const std::string scope = key.substr(0, dot);
      for (CLI::App* sub : subcommands) {
        if (sub->get_name() == scope) {
          known = find_option(*sub, key.substr(dot + 1)) != nullptr;
        }
      }
    } else {
      known = find_option(root, key) != nullptr;
      for (CLI::App* sub : subcommands) {
        known = known || find_option(*sub, key) != nullptr;
      }
    }
    if (!known) throw UsageError("config key '" + key + "' names no option");
  }

  for (CLI::Option* opt : root.get_options({})) {
    const std::string key = option_key(opt);
    if (key.empty() || opt->count() > 0) continue;
    if (auto it = config.find(key); it != config.end()) set_option(opt, key, it->second);
  }
  for (CLI::Option* opt : command.get_options({})) {
    const std::string key = option_key(opt);
    if (key.empty() || opt->count() > 0) continue;
    auto it = config.find(command.get_name() + "." + key);
    if (it == config.end()) it = config.find(key);
    if (it != config.end()) set_option(opt, it->first, it->second);
  }
}

OrderedRecord resolved_options(const CLI::App& root, const CLI::App& command) {
  OrderedRecord r = OrderedRecord::object();
  auto add = [&](const CLI::App& app) {
    for (const CLI::Option* opt : app.get_options()) {
      const std::string key = option_key(opt);
      if (key.empty()) continue;
      std::string value;
      if (opt->count() > 0) {
        for (const auto& part : opt->results()) {
          if (!value.empty()) value += ',';
          value += part;
        }
      } else {
        value = opt->get_default_str();
      }
      if (value.empty()) {
        r[key] = nullptr;
      } else {
        r[key] = value;
      }
    }
  };
  add(root);
  add(command);
  return r;
}

}  // namespace caharvest::cli
