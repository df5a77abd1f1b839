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

// ingest, dedup, embed.

#include <memory>

#include "caharvest/corpus.hpp"
#include "cli/commands.hpp"

namespace caharvest::cli {
namespace {

void add_ingest(CLI::App& root, CommandList& commands) {
  struct Options {
    std::string input = "-";
    std::string lexicon;
    std::string output = "-";
    std::size_t block_lines = IngestOptions{}.block_lines;
  };
  auto o = std::make_shared<Options>();
  CLI::App* app = root.add_subcommand(
      "ingest", "Parse comment records and extract lexicon-anchored snippets");
  app->add_option("--input", o->input, "Comment records")->capture_default_str();
  app->add_option("--lexicon", o->lexicon, "Lexicon file (required)");
  app->add_option("--output", o->output, "Snippet records")->capture_default_str();
  app->add_option("--block-lines", o->block_lines, "Lines per parallel block")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  commands.push_back({app, {"lexicon"}, [o](RunContext& ctx) {
    const Lexicon lexicon = ctx.lexicon(o->lexicon);
    std::istream& in = ctx.input("comments", o->input);
    std::ostream& out = ctx.output("snippets", o->output);
    IngestOptions options;
    options.block_lines = o->block_lines;
    const IngestStats stats = ingest_stream(
        in, lexicon, [&](const Snippet& s) { write_record(out, to_record(s)); },
        options);
    auto& m = ctx.manifest().stats();
    m["lines"] = stats.lines;
    m["comments"] = stats.comments;
    m["malformed"] = stats.malformed;
    m["duplicates"] = stats.duplicates;
    m["retained"] = stats.retained;
  }});
}

void add_dedup(CLI::App& root, CommandList& commands) {
  struct Options {
    std::string input = "-";
    std::string store;
    std::size_t dim = kDefaultFallbackDimension;
    double threshold = 0.95;
    std::string output = "-";
  };
  auto o = std::make_shared<Options>();
  CLI::App* app = root.add_subcommand(
      "dedup", "Drop snippets too similar to an earlier kept snippet");
  app->add_option("--input", o->input, "Snippet records")->capture_default_str();
  app->add_option("--store", o->store,
                  "Embedding store (default: hash embeddings of the text)");
  app->add_option("--dim", o->dim, "Hash embedding dimension")->capture_default_str();
  app->add_option("--threshold", o->threshold,
                  "Cosine above which a snippet is a near-duplicate")
      ->capture_default_str();
  app->add_option("--output", o->output, "Kept snippet records")
      ->capture_default_str();

  commands.push_back({app, {}, [o](RunContext& ctx) {
    const auto snippets = read_snippets(ctx.input("snippets", o->input));
    const EmbeddingStore vectors = o->store.empty()
                                       ? embed_snippets_fallback(snippets, o->dim)
                                       : ctx.store(o->store);
    const auto kept = filter_near_duplicates(snippets, vectors, o->threshold);
    std::ostream& out = ctx.output("snippets", o->output);
    for (const auto& s : kept) write_record(out, to_record(s));
    ctx.manifest().stats()["input"] = snippets.size();
    ctx.manifest().stats()["kept"] = kept.size();
  }});
}

void add_embed(CLI::App& root, CommandList& commands) {
  struct Options {
    std::string input = "-";
    std::size_t dim = kDefaultFallbackDimension;
    std::string output;
  };
  auto o = std::make_shared<Options>();
  CLI::App* app = root.add_subcommand(
      "embed", "Write hash embeddings of snippets as an embedding store");
  app->add_option("--input", o->input, "Snippet records")->capture_default_str();
  app->add_option("--dim", o->dim, "Embedding dimension")->capture_default_str();
  app->add_option("--output", o->output, "Embedding store (required)");

  commands.push_back({app, {"output"}, [o](RunContext& ctx) {
    const auto snippets = read_snippets(ctx.input("snippets", o->input));
    const EmbeddingStore store = embed_snippets_fallback(snippets, o->dim);
    write_embedding_store(ctx.output("store", o->output), store);
    ctx.manifest().stats()["vectors"] = store.size();
    ctx.manifest().stats()["dimension"] = store.dimension();
  }});
}

}  // namespace

void add_corpus_commands(CLI::App& root, CommandList& commands) {
  add_ingest(root, commands);
  add_dedup(root, commands);
  add_embed(root, commands);
}

}  // namespace caharvest::cli
