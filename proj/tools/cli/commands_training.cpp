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

// tune-dict, centroid-train, merge-train, weights.

#include <memory>

#include "caharvest/annotation.hpp"
#include "caharvest/error.hpp"
#include "caharvest/pipeline.hpp"
#include "cli/commands.hpp"

namespace caharvest::cli {
namespace {

void add_tune_dict(CLI::App& root, CommandList& commands) {
  struct Options {
    std::string input = "-";
    std::string lexicon;
    std::string output = "-";
  };
  auto o = std::make_shared<Options>();
  CLI::App* app = root.add_subcommand(
      "tune-dict", "Tune the dictionary threshold by Youden's J");
  app->add_option("--input", o->input,
                  "Labeled records carrying a 'score', or 'text' to score")
      ->capture_default_str();
  app->add_option("--lexicon", o->lexicon, "Lexicon (needed to score text)");
  app->add_option("--output", o->output, "Threshold model")->capture_default_str();

  commands.push_back({app, {}, [o](RunContext& ctx) {
    std::optional<Lexicon> lexicon;
    if (!o->lexicon.empty()) lexicon = ctx.lexicon(o->lexicon);
    std::vector<ScoredLabel> scored;
    for_each_record(ctx.input("labeled", o->input), [&](const Record& r,
                                                        std::size_t line) {
      const std::string name = require_string(r, "label", line);
      const auto label = parse_binary_or_level(name);
      if (!label) {
        throw FormatError("line " + std::to_string(line) + ": unknown label '" +
                              name + "'",
                          line);
      }
      double score = 0.0;
      if (r.contains("score")) {
        score = require_number(r, "score", line);
      } else if (lexicon) {
        score = dictionary_score(require_string(r, "text", line), *lexicon);
      } else {
        throw UsageError("records carry no 'score'; pass --lexicon to score text");
      }
      scored.push_back({score, *label});
    });
    const ThresholdModel model = tune_threshold(scored);
    save_threshold_model(ctx.output("model", o->output), model);
    ctx.manifest().stats()["samples"] = scored.size();
    ctx.manifest().stats()["tau"] = model.tau;
    ctx.manifest().stats()["j"] = model.j_statistic;
  }});
}

void add_centroid_train(CLI::App& root, CommandList& commands) {
  struct Options {
    std::string input = "-";
    std::string store;
    std::size_t dim = kDefaultFallbackDimension;
    bool binary = false;
    std::string output = "-";
  };
  auto o = std::make_shared<Options>();
  CLI::App* app = root.add_subcommand(
      "centroid-train", "Average labeled embeddings into class centroids");
  app->add_option("--input", o->input, "Labeled snippet records")
      ->capture_default_str();
  app->add_option("--store", o->store,
                  "Embedding store (default: hash embeddings of the text)");
  app->add_option("--dim", o->dim, "Hash embedding dimension")->capture_default_str();
  app->add_flag("--binary", o->binary, "Train participation/none centroids");
  app->add_option("--output", o->output, "Centroid model")->capture_default_str();

  commands.push_back({app, {}, [o](RunContext& ctx) {
    const auto samples = read_labeled_snippets(ctx.input("labeled", o->input));
    const auto embedder = ctx.embedder(o->store, o->dim);
    std::ostream& out = ctx.output("model", o->output);
    if (o->binary) {
      std::vector<std::pair<EmbeddingVector, BinaryLabel>> labeled;
      for (const auto& s : samples) {
        labeled.emplace_back(embedder->embed(s.snippet), binary_view(s.label));
      }
      const auto model = compute_centroids<BinaryLabel>(labeled);
      write_centroid_model(out, model);
      for (const auto& [label, n] : model.class_counts) {
        ctx.manifest().stats()[std::string(to_string(label))] = n;
      }
    } else {
      std::vector<std::pair<EmbeddingVector, ParticipationLabel>> labeled;
      for (const auto& s : samples) {
        labeled.emplace_back(embedder->embed(s.snippet), s.label);
      }
      const auto model = compute_centroids<ParticipationLabel>(labeled);
      write_centroid_model(out, model);
      for (const auto& [label, n] : model.class_counts) {
        ctx.manifest().stats()[std::string(to_string(label))] = n;
      }
    }
  }});
}

void add_merge_train(CLI::App& root, CommandList& commands) {
  struct Options {
    std::string cs;
    std::string synthetic;
    std::string extension;
    std::string variant;
    std::string output = "-";
  };
  auto o = std::make_shared<Options>();
  CLI::App* app = root.add_subcommand(
      "merge-train", "Assemble a training-set variant from its sources");
  app->add_option("--cs", o->cs, "Crowdsourced labeled snippets (required)");
  app->add_option("--synthetic", o->synthetic, "Synthetic candidate records");
  app->add_option("--extension", o->extension, "Thread-extension labeled snippets");
  app->add_option("--variant", o->variant,
                  "CS, CS+SynI/E, CS+SynA, Ext or Ext+SynI/E (required)");
  app->add_option("--output", o->output, "Labeled snippet records")
      ->capture_default_str();

  commands.push_back({app, {"cs", "variant"}, [o](RunContext& ctx) {
    const auto name = parse_variant(o->variant);
    if (!name) throw UsageError("unknown variant '" + o->variant + "'");
    const bool wants_synthetic = *name == VariantName::kCSSynIE ||
                                 *name == VariantName::kCSSynA ||
                                 *name == VariantName::kExtSynIE;
    const bool wants_extension =
        *name == VariantName::kExt || *name == VariantName::kExtSynIE;
    if (wants_synthetic && o->synthetic.empty()) {
      throw UsageError(o->variant + " needs --synthetic");
    }
    if (wants_extension && o->extension.empty()) {
      throw UsageError(o->variant + " needs --extension");
    }

    const auto cs = read_labeled_snippets(ctx.input("cs", o->cs));
    std::vector<SyntheticRecord> synthetic;
    std::vector<LabeledSnippet> extension;
    if (wants_synthetic) synthetic = read_synthetic(ctx.input("synthetic", o->synthetic));
    if (wants_extension) {
      extension = read_labeled_snippets(ctx.input("extension", o->extension));
    }
    const auto merged = merge_training_sets(cs, synthetic, extension, o->variant);
    std::ostream& out = ctx.output("training", o->output);
    for (const auto& s : merged.samples) write_record(out, to_record(s));
    auto& stats = ctx.manifest().stats();
    for (ParticipationLabel l : kAllLabels) {
      stats[std::string(short_name(l))] = merged.counts.at(l);
    }
    stats["total"] = merged.samples.size();
  }});
}

void add_weights(CLI::App& root, CommandList& commands) {
  struct Options {
    std::string input = "-";
    bool binary = false;
    std::string output = "-";
  };
  auto o = std::make_shared<Options>();
  CLI::App* app = root.add_subcommand(
      "weights", "Class weights total / (2 * n_class) for a training set");
  app->add_option("--input", o->input, "Labeled snippet records")
      ->capture_default_str();
  app->add_flag("--binary", o->binary, "Weights for participation/none");
  app->add_option("--output", o->output, "Weight records")->capture_default_str();

  commands.push_back({app, {}, [o](RunContext& ctx) {
    const auto samples = read_labeled_snippets(ctx.input("labeled", o->input));
    std::vector<std::string> order;
    std::map<std::string, std::size_t> counts;
    if (o->binary) {
      for (BinaryLabel l : kBinaryLabels) order.emplace_back(to_string(l));
      for (const auto& s : samples) ++counts[std::string(to_string(binary_view(s.label)))];
    } else {
      for (ParticipationLabel l : kAllLabels) order.emplace_back(to_string(l));
      for (const auto& s : samples) ++counts[std::string(to_string(s.label))];
    }
    for (const auto& name : order) counts.try_emplace(name, 0);
    const ClassWeights weights = class_weights(counts);
    std::ostream& out = ctx.output("weights", o->output);
    for (const auto& name : order) {
      OrderedRecord r;
      r["label"] = name;
      r["count"] = counts.at(name);
      r["weight"] = weights.weights.at(name);
      write_record(out, r);
    }
    ctx.manifest().stats()["samples"] = samples.size();
  }});
}

}  // namespace

void add_training_commands(CLI::App& root, CommandList& commands) {
  add_tune_dict(root, commands);
  add_centroid_train(root, commands);
  add_merge_train(root, commands);
  add_weights(root, commands);
}

}  // namespace caharvest::cli
