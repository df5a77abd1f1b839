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

#include "cli/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "caharvest/error.hpp"
#include "caharvest/kernels.hpp"
#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/context.hpp"

namespace caharvest::cli {

struct RunContext::Input {
  Input(std::string_view r, std::string p, std::unique_ptr<std::ifstream> f,
        std::streambuf* source)
      : role(r), path(std::move(p)), file(std::move(f)), buf(source), stream(&buf) {}

  std::string role;
  std::string path;
  std::unique_ptr<std::ifstream> file;
  DigestInputBuf buf;
  std::istream stream;
};

struct RunContext::Output {
  Output(std::string_view r, std::string p, std::unique_ptr<std::ofstream> f,
         std::streambuf* sink)
      : role(r), path(std::move(p)), file(std::move(f)), buf(sink), stream(&buf) {}

  std::string role;
  std::string path;
  std::unique_ptr<std::ofstream> file;
  DigestOutputBuf buf;
  std::ostream stream;
};

RunContext::RunContext(std::istream& in, std::ostream& out, std::ostream& err,
                       std::uint64_t seed)
    : in_(in), out_(out), err_(err), seed_(seed) {}

RunContext::~RunContext() = default;

std::istream& RunContext::input(std::string_view role, const std::string& path) {
  if (path.empty()) throw UsageError("no path given for " + std::string(role));
  std::unique_ptr<std::ifstream> file;
  std::streambuf* source = nullptr;
  if (path == "-") {
    if (stdin_taken_) {
      throw UsageError("standard input can feed only one input; " +
                       std::string(role) + " also asks for it");
    }
    stdin_taken_ = true;
    source = in_.rdbuf();
  } else {
    file = std::make_unique<std::ifstream>(open_input_file(path, std::ios::binary));
    source = file->rdbuf();
  }
  inputs_.push_back(std::make_unique<Input>(role, path, std::move(file), source));
  return inputs_.back()->stream;
}

std::ostream& RunContext::output(std::string_view role, const std::string& path) {
  if (path.empty()) throw UsageError("no path given for " + std::string(role));
  std::unique_ptr<std::ofstream> file;
  std::streambuf* sink = nullptr;
  if (path == "-") {
    sink = out_.rdbuf();
  } else {
    file = std::make_unique<std::ofstream>(
        open_output_file(path, std::ios::binary | std::ios::trunc));
    sink = file->rdbuf();
  }
  outputs_.push_back(std::make_unique<Output>(role, path, std::move(file), sink));
  return outputs_.back()->stream;
}

Lexicon RunContext::lexicon(const std::string& path) {
  std::istream& in = input("lexicon", path);
  const std::string name =
      path == "-" ? "stdin" : std::filesystem::path(path).stem().string();
  return parse_lexicon(in, name, path);
}

EmbeddingStore RunContext::store(const std::string& path) {
  return read_embedding_store(input("store", path), path);
}

std::shared_ptr<const Embedder> RunContext::embedder(const std::string& store_path,
                                                     std::size_t dimension) {
  if (store_path.empty()) return std::make_shared<HashEmbedder>(dimension);
  return std::make_shared<StoreEmbedder>(
      std::make_shared<const EmbeddingStore>(store(store_path)));
}

std::optional<std::string> RunContext::primary_output_path() const {
  for (const auto& o : outputs_) {
    if (o->path != "-") return o->path;
  }
  return std::nullopt;
}

void RunContext::finish() {
  for (auto& i : inputs_) {
    const std::string digest = i->buf.finish();
    manifest_.add_input(i->role, i->path, digest, i->buf.bytes());
  }
  for (auto& o : outputs_) {
    o->stream.flush();
    const std::string digest = o->buf.finish();
    if (o->file) o->file->close();
    if (!o->stream || (o->file && o->file->fail())) {
      throw Error("failed writing " + o->role + " to '" + o->path + "'");
    }
    manifest_.add_output(o->role, o->path, digest, o->buf.bytes());
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, ',')) {
    std::string_view t = trim(part);
    if (!t.empty()) parts.emplace_back(t);
  }
  return parts;
}

std::optional<BinaryLabel> parse_binary_or_level(std::string_view s) {
  if (auto b = parse_binary_label(s)) return b;
  if (auto l = parse_participation_label(s)) return binary_view(*l);
  return std::nullopt;
}

namespace {

void print_usage_error(std::ostream& err, const std::string& message,
                       const CLI::App& app) {
  err << "error: " << message << "\n\n" << app.help();
}

// First bare word, skipping the values of global options.
std::optional<std::string> first_positional(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (!a.starts_with("-")) return a;
    if (a.starts_with("--") && a.find('=') == std::string::npos && a != "--help") {
      ++i;  // --seed 7, --config path, ...
    }
  }
  return std::nullopt;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::istream& in,
                 std::ostream& out, std::ostream& err) {
  CLI::App app{"Harvest, classify and analyse expressions of participation in "
               "collective action from online discussions.",
               "ca-harvest"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int threads = 0;
  std::string config_path;
  std::string manifest_path;
  app.add_option("--seed", seed, "Seed for every randomised step")
      ->capture_default_str();
  app.add_option("--threads", threads, "Worker threads; 0 uses all cores")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  app.add_option("--config", config_path,
                 "key=value config file (default: $CA_HARVEST_CONFIG)");
  app.add_option("--manifest", manifest_path,
                 "Run manifest path (default: <output>.manifest.json, else "
                 "standard error)");

  CommandList commands;
  add_corpus_commands(app, commands);
  add_training_commands(app, commands);
  add_classify_commands(app, commands);
  add_annotation_commands(app, commands);
  add_analysis_commands(app, commands);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    if (app.get_subcommands().empty()) {
      if (auto word = first_positional(args)) {
        message = "unknown subcommand '" + *word + "'";
      }
    }
    print_usage_error(err, message, app);
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  Command* command = nullptr;
  for (auto& c : commands) {
    if (c.app == sub) command = &c;
  }

  std::string config_text;
  if (config_path.empty()) {
    if (const char* env = std::getenv("CA_HARVEST_CONFIG"); env && *env) {
      config_path = env;
    }
  }
  try {
    if (!config_path.empty()) {
      std::ifstream file(config_path, std::ios::binary);
      if (!file) throw UsageError("cannot read config file '" + config_path + "'");
      config_text.assign(std::istreambuf_iterator<char>(file), {});
      std::istringstream text(config_text);
      apply_config(parse_config(text, config_path), app, *sub);
    }
    for (const auto& name : command->required) {
      if (sub->get_option("--" + name)->count() == 0) {
        throw UsageError("--" + name + " is required");
      }
    }
  } catch (const UsageError& e) {
    print_usage_error(err, e.what(), *sub);
    return kExitUsage;
  }

  set_thread_count(threads);
  RunContext ctx(in, out, err, seed);
  ctx.manifest().set_command(sub->get_name());
  ctx.manifest().set_config(resolved_options(app, *sub));
  if (!config_path.empty()) {
    ctx.manifest().add_input("config", config_path, sha256_hex(config_text),
                             config_text.size());
  }

  try {
    command->run(ctx);
    ctx.finish();
  } catch (const UsageError& e) {
    print_usage_error(err, e.what(), *sub);
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }

  const OrderedRecord manifest = ctx.manifest().to_record(utc_timestamp());
  if (manifest_path.empty()) {
    if (auto primary = ctx.primary_output_path()) {
      manifest_path = *primary + ".manifest.json";
    }
  }
  if (manifest_path.empty()) {
    err << manifest.dump() << '\n';
    return kExitOk;
  }
  if (manifest_path == "-") {
    out << manifest.dump(2) << '\n';
    return kExitOk;
  }
  std::ofstream file(manifest_path, std::ios::binary | std::ios::trunc);
  file << manifest.dump(2) << '\n';
  if (!file) {
    err << "error: cannot write manifest '" << manifest_path << "'\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace caharvest::cli
