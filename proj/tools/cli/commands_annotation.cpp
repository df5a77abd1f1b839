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

// aggregate, alpha, extend.

#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "caharvest/annotation.hpp"
#include "caharvest/error.hpp"
#include "cli/commands.hpp"

namespace caharvest::cli {
namespace {

void add_aggregate(CLI::App& root, CommandList& commands) {
  struct Options {
    std::string input = "-";
    std::string snippets;
    std::string output = "-";
    std::string workers;
    std::string rejections;
  };
  auto o = std::make_shared<Options>();
  CLI::App* app = root.add_subcommand(
      "aggregate", "Score workers on control items and majority-vote labels");
  app->add_option("--input", o->input, "Annotation records")->capture_default_str();
  app->add_option("--snippets", o->snippets,
                  "Snippet records; when given, emit labeled snippets");
  app->add_option("--output", o->output, "Aggregated records")->capture_default_str();
  app->add_option("--workers", o->workers, "Per-worker control scores");
  app->add_option("--rejections", o->rejections, "Rejected samples with reasons");

  commands.push_back({app, {}, [o](RunContext& ctx) {
    const auto records = read_annotations(ctx.input("annotations", o->input));
    const auto scores = score_workers(records);
    const auto retained = retained_workers(scores);
    const Aggregation agg = aggregate_majority(records, retained);

    std::unordered_map<std::string, Snippet> snippets;
    if (!o->snippets.empty()) {
      for (auto& s : read_snippets(ctx.input("snippets", o->snippets))) {
        std::string id = s.comment_id;
        snippets.emplace(std::move(id), std::move(s));
      }
    }
    std::ostream& out = ctx.output("aggregated", o->output);
    for (const auto& a : agg.samples) {
      if (o->snippets.empty()) {
        OrderedRecord r;
        r["sample_id"] = a.sample_id;
        r["label"] = to_string(a.label);
        r["n_annotators"] = a.n_annotators;
        r["vote_margin"] = a.vote_margin;
        write_record(out, r);
        continue;
      }
      auto it = snippets.find(a.sample_id);
      if (it == snippets.end()) {
        throw LookupError("no snippet for annotated sample '" + a.sample_id + "'");
      }
      write_record(out, to_record(LabeledSnippet{it->second, a.label}));
    }
    if (!o->workers.empty()) {
      std::ostream& w = ctx.output("workers", o->workers);
      for (const auto& [worker, s] : scores) {
        OrderedRecord r;
        r["worker_id"] = worker;
        r["controls_seen"] = s.controls_seen;
        r["controls_passed"] = s.controls_passed;
        r["pass_rate"] = s.pass_rate ? OrderedRecord(*s.pass_rate) : OrderedRecord();
        r["discard"] = s.discard;
        write_record(w, r);
      }
    }
    if (!o->rejections.empty()) {
      std::ostream& rej = ctx.output("rejections", o->rejections);
      for (const auto& [id, reason] : agg.log.rejected) {
        OrderedRecord r;
        r["sample_id"] = id;
        r["reason"] = to_string(reason);
        write_record(rej, r);
      }
    }
    auto& stats = ctx.manifest().stats();
    stats["annotations"] = records.size();
    stats["workers"] = scores.size();
    stats["discarded_workers"] = scores.size() - retained.size();
    stats["filtered_annotations"] = agg.log.filtered_annotations;
    stats["control_samples"] = agg.log.control_samples;
    stats["too_few_annotators"] = agg.log.too_few_annotators;
    stats["no_clear_majority"] = agg.log.no_clear_majority;
    stats["aggregated"] = agg.samples.size();
  }});
}

void add_alpha(CLI::App& root, CommandList& commands) {
  struct Options {
    std::string input = "-";
    bool retained_only = false;
    std::string output = "-";
  };
  auto o = std::make_shared<Options>();
  CLI::App* app = root.add_subcommand(
      "alpha", "Nominal Krippendorff's alpha over annotation records");
  app->add_option("--input", o->input, "Annotation records")->capture_default_str();
  app->add_flag("--retained-only", o->retained_only,
                "Skip control items and workers who fail quality control");
  app->add_option("--output", o->output, "Alpha record")->capture_default_str();

  commands.push_back({app, {}, [o](RunContext& ctx) {
    auto records = read_annotations(ctx.input("annotations", o->input));
    if (o->retained_only) {
      const auto retained = retained_workers(score_workers(records));
      std::erase_if(records, [&](const AnnotationRecord& r) {
        return r.is_control || !retained.contains(r.worker_id);
      });
    }
    std::unordered_set<std::string> units;
    for (const auto& r : records) units.insert(r.sample_id);
    const double alpha = krippendorff_alpha(records);
    OrderedRecord r;
    r["alpha"] = alpha;
    r["annotations"] = records.size();
    r["samples"] = units.size();
    write_record(ctx.output("alpha", o->output), r);
    ctx.manifest().stats()["alpha"] = alpha;
  }});
}

void add_extend(CLI::App& root, CommandList& commands) {
  struct Options {
    std::string anchors;
    std::string pool;
    std::string store;
    std::size_t dim = kDefaultFallbackDimension;
    double top_fraction = ExtensionOptions{}.top_fraction;
    double bot_threshold = ExtensionOptions{}.bot_threshold;
    std::string output = "-";
  };
  auto o = std::make_shared<Options>();
  CLI::App* app = root.add_subcommand(
      "extend", "Propagate labels to the most similar same-thread snippets");
  app->add_option("--anchors", o->anchors, "Labeled snippet records (required)");
  app->add_option("--pool", o->pool, "Unlabeled snippet records (required)");
  app->add_option("--store", o->store,
                  "Embedding store (default: hash embeddings of the text)");
  app->add_option("--dim", o->dim, "Hash embedding dimension")->capture_default_str();
  app->add_option("--top-fraction", o->top_fraction,
                  "Fraction of a thread's candidates to label")
      ->capture_default_str();
  app->add_option("--bot-threshold", o->bot_threshold,
                  "Cosine above which a candidate counts as a repost")
      ->capture_default_str();
  app->add_option("--output", o->output, "Extension labeled snippets")
      ->capture_default_str();

  commands.push_back({app, {"anchors", "pool"}, [o](RunContext& ctx) {
    const auto anchors = read_labeled_snippets(ctx.input("anchors", o->anchors));
    const auto pool = read_snippets(ctx.input("pool", o->pool));

    std::unordered_set<std::string> anchor_ids;
    for (const auto& a : anchors) anchor_ids.insert(a.snippet.comment_id);
    // Candidates per thread, in pool order; labeled snippets are not
    // candidates.
    std::unordered_map<std::string, std::vector<Snippet>> threads;
    for (const auto& s : pool) {
      if (!anchor_ids.contains(s.comment_id)) threads[s.thread_id].push_back(s);
    }

    EmbeddingStore vectors;
    if (!o->store.empty()) {
      vectors = ctx.store(o->store);
    } else {
      std::vector<Snippet> all;
      std::unordered_set<std::string> seen;
      for (const auto& a : anchors) {
        if (seen.insert(a.snippet.comment_id).second) all.push_back(a.snippet);
      }
      for (const auto& s : pool) {
        if (seen.insert(s.comment_id).second) all.push_back(s);
      }
      vectors = embed_snippets_fallback(all, o->dim);
    }

    ExtensionOptions options{o->top_fraction, o->bot_threshold};
    std::unordered_set<std::string> emitted;
    std::size_t conflicts = 0;
    std::ostream& out = ctx.output("extension", o->output);
    for (const auto& anchor : anchors) {
      if (anchor.snippet.thread_id.empty()) continue;
      auto it = threads.find(anchor.snippet.thread_id);
      if (it == threads.end()) continue;
      for (const auto& s : extend_reddit_informed(anchor, it->second, vectors, options)) {
        // A candidate near two anchors keeps the first anchor's label.
        if (!emitted.insert(s.snippet.comment_id).second) {
          ++conflicts;
          continue;
        }
        write_record(out, to_record(s));
      }
    }
    ctx.manifest().stats()["anchors"] = anchors.size();
    ctx.manifest().stats()["extended"] = emitted.size();
    ctx.manifest().stats()["conflicts"] = conflicts;
  }});
}

}  // namespace

void add_annotation_commands(CLI::App& root, CommandList& commands) {
  add_aggregate(root, commands);
  add_alpha(root, commands);
  add_extend(root, commands);
}

}  // namespace caharvest::cli
