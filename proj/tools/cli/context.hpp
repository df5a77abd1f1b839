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

// Per-invocation state shared by the subcommands: stream plumbing with
// digests, the manifest, and loaders for the common input kinds.

#ifndef CAHARVEST_TOOLS_CLI_CONTEXT_HPP_
#define CAHARVEST_TOOLS_CLI_CONTEXT_HPP_

#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "caharvest/embeddings.hpp"
#include "caharvest/lexicon.hpp"
#include "caharvest/pipeline.hpp"
#include "cli/manifest.hpp"

namespace caharvest::cli {

// Bad invocation: reported with help text and exit status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RunContext {
 public:
  RunContext(std::istream& in, std::ostream& out, std::ostream& err,
             std::uint64_t seed);
  ~RunContext();
  RunContext(const RunContext&) = delete;
  RunContext& operator=(const RunContext&) = delete;

  // Opens `path` for reading ("-" is standard input, at most once).
  std::istream& input(std::string_view role, const std::string& path);
  // Opens `path` for writing ("-" is standard output).
  std::ostream& output(std::string_view role, const std::string& path);

  std::ostream& err() { return err_; }
  std::uint64_t seed() const { return seed_; }
  Manifest& manifest() { return manifest_; }

  Lexicon lexicon(const std::string& path);
  EmbeddingStore store(const std::string& path);
  // A store when `store_path` is set, otherwise the hashing fallback.
  std::shared_ptr<const Embedder> embedder(const std::string& store_path,
                                           std::size_t dimension);

  // First output opened from a real file; used to place the manifest.
  std::optional<std::string> primary_output_path() const;

  // Flushes outputs and records every digest in the manifest. Throws Error
  // when an output could not be written.
  void finish();

 private:
  struct Input;
  struct Output;

  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  std::uint64_t seed_;
  bool stdin_taken_ = false;
  Manifest manifest_;
  std::vector<std::unique_ptr<Input>> inputs_;
  std::vector<std::unique_ptr<Output>> outputs_;
};

}  // namespace caharvest::cli

#endif  // CAHARVEST_TOOLS_CLI_CONTEXT_HPP_
