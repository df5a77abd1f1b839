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

// rank, crosstab, dims.

#include <memory>

#include "caharvest/analytics.hpp"
#include "caharvest/corpus.hpp"
#include "caharvest/error.hpp"
#include "cli/commands.hpp"

namespace caharvest::cli {
namespace {

Prediction to_prediction(const std::string& id, const ExternalPrediction& e) {
  Prediction p;
  p.sample_id = id;
  p.stage1 = e.binary;
  if (e.binary == BinaryLabel::Participation) p.stage2 = e.level;
  p.scores = e.scores;
  return p;
}

OrderedRecord stats_record(const CommunityStats& s) {
  OrderedRecord r;
  r["community"] = s.community;
  r["n_comments"] = s.n_comments;
  r["keyword_fraction"] = s.keyword_fraction;
  r["participation_fraction"] = s.participation_fraction;
  OrderedRecord levels = OrderedRecord::object();
  for (const auto& [label, fraction] : s.level_fractions) {
    levels[std::string(to_string(label))] = fraction;
  }
  r["level_fractions"] = std::move(levels);
  return r;
}

void add_rank(CLI::App& root, CommandList& commands) {
  struct Options {
    std::string comments = "-";
    std::string lexicon;
    std::string predictions;
    std::size_t min_comments = kDefaultMinComments;
    std::string output = "-";
    std::string stats_output;
  };
  auto o = std::make_shared<Options>();
  CLI::App* app = root.add_subcommand(
      "rank", "Rank communities by keyword and participation fractions");
  app->add_option("--comments", o->comments, "Comment records")
      ->capture_default_str();
  app->add_option("--lexicon", o->lexicon, "Lexicon (required)");
  app->add_option("--predictions", o->predictions,
                  "Prediction records keyed by comment id (required)");
  app->add_option("--min-comments", o->min_comments,
                  "Communities with fewer comments are not ranked")
      ->capture_default_str();
  app->add_option("--output", o->output, "Ranking records")->capture_default_str();
  app->add_option("--stats-output", o->stats_output,
                  "Per-community statistics, unranked communities included");

  commands.push_back({app, {"lexicon", "predictions"}, [o](RunContext& ctx) {
    const Lexicon lexicon = ctx.lexicon(o->lexicon);
    const auto predictions =
        read_external_predictions(ctx.input("predictions", o->predictions));
    const CommentBatch batch = parse_comment_stream(ctx.input("comments", o->comments));

    std::vector<ClassifiedComment> classified;
    classified.reserve(batch.comments.size());
    std::size_t unclassified = 0;
    for (const auto& c : batch.comments) {
      ClassifiedComment cc;
      cc.community = c.community;
      cc.has_keywords = count_lexicon_matches(c.body, lexicon) > 0;
      auto it = predictions.find(c.id);
      if (it == predictions.end()) {
        // No snippet, hence no prediction: the comment counts as None.
        ++unclassified;
        cc.prediction.sample_id = c.id;
      } else {
        if (it->second.binary == BinaryLabel::Participation && !it->second.level) {
          throw PipelineError("prediction for '" + c.id +
                              "' has no participation level");
        }
        cc.prediction = to_prediction(c.id, it->second);
      }
      classified.push_back(std::move(cc));
    }

    const auto stats = community_stats(classified);
    const CommunityRanking ranking = rank_communities(stats, o->min_comments);
    std::ostream& out = ctx.output("ranking", o->output);
    auto emit = [&](std::string_view name, const std::vector<CommunityStats>& list) {
      for (std::size_t i = 0; i < list.size(); ++i) {
        OrderedRecord r;
        r["ranking"] = name;
        r["rank"] = i + 1;
        r["community"] = list[i].community;
        r["n_comments"] = list[i].n_comments;
        r["keyword_fraction"] = list[i].keyword_fraction;
        r["participation_fraction"] = list[i].participation_fraction;
        write_record(out, r);
      }
    };
    emit("keywords", ranking.by_keywords);
    emit("participation", ranking.by_participation);
    OrderedRecord summary;
    summary["spearman"] = ranking.spearman ? OrderedRecord(*ranking.spearman)
                                           : OrderedRecord();
    summary["ranked"] = ranking.by_keywords.size();
    summary["excluded"] = ranking.excluded;
    write_record(out, summary);

    if (!o->stats_output.empty()) {
      std::ostream& s = ctx.output("community-stats", o->stats_output);
      for (const auto& c : stats) write_record(s, stats_record(c));
    }
    auto& m = ctx.manifest().stats();
    m["comments"] = batch.comments.size();
    m["malformed"] = batch.malformed;
    m["duplicates"] = batch.duplicates;
    m["unclassified"] = unclassified;
    m["communities"] = stats.size();
  }});
}

void add_crosstab(CLI::App& root, CommandList& commands) {
  struct Options {
    std::string predictions = "-";
    std::string categories;
    std::string output = "-";
  };
  auto o = std::make_shared<Options>();
  CLI::App* app = root.add_subcommand(
      "crosstab", "Participation against an external categorisation");
  app->add_option("--predictions", o->predictions, "Prediction records")
      ->capture_default_str();
  app->add_option("--categories", o->categories,
                  "Records {sample_id, category} (required)");
  app->add_option("--output", o->output, "Cross-tabulation rows")
      ->capture_default_str();

  commands.push_back({app, {"categories"}, [o](RunContext& ctx) {
    std::vector<Prediction> predictions;
    for (const auto& [id, e] :
         read_external_predictions(ctx.input("predictions", o->predictions))) {
      predictions.push_back(to_prediction(id, e));
    }
    std::map<std::string, std::string, std::less<>> categories;
    for_each_record(ctx.input("categories", o->categories),
                    [&](const Record& r, std::size_t line) {
                      std::string id = require_string(r, "sample_id", line);
                      if (!categories.emplace(id, require_string(r, "category", line))
                               .second) {
                        throw FormatError("duplicate sample_id '" + id +
                                              "' at line " + std::to_string(line),
                                          line);
                      }
                    });
    std::ostream& out = ctx.output("crosstab", o->output);
    for (const auto& row : crosstab(predictions, categories)) {
      OrderedRecord r;
      r["category"] = row.category;
      r["participation"] = row.participation;
      r["none"] = row.none;
      r["participation_fraction"] = row.participation_fraction;
      r["none_fraction"] = row.none_fraction;
      write_record(out, r);
    }
    ctx.manifest().stats()["predictions"] = predictions.size();
  }});
}

void add_dims(CLI::App& root, CommandList& commands) {
  struct Options {
    std::string store;
    std::string axes;
    std::string output = "-";
    std::string fractions;
    std::size_t bins = kDefaultBins;
    std::string bins_output = "-";
  };
  auto o = std::make_shared<Options>();
  CLI::App* app = root.add_subcommand(
      "dims", "Score communities on social dimensions and bin by quantile");
  app->add_option("--store", o->store, "Community vectors (required)");
  app->add_option("--axes", o->axes,
                  "Records {axis, vector}; axis is age, gender or "
                  "partisanship (required)");
  app->add_option("--output", o->output, "Dimension score records")
      ->capture_default_str();
  app->add_option("--fractions", o->fractions,
                  "Community statistics from rank --stats-output; enables binning");
  app->add_option("--bins", o->bins, "Quantile bins per axis")->capture_default_str();
  app->add_option("--bins-output", o->bins_output, "Bin records")
      ->capture_default_str();

  commands.push_back({app, {"store", "axes"}, [o](RunContext& ctx) {
    const EmbeddingStore vectors = ctx.store(o->store);
    std::vector<std::pair<Axis, EmbeddingVector>> axes;
    for_each_record(ctx.input("axes", o->axes), [&](const Record& r, std::size_t line) {
      const std::string name = require_string(r, "axis", line);
      const auto axis = parse_axis(name);
      auto v = r.find("vector");
      if (!axis || v == r.end() || !v->is_array()) {
        throw FormatError("line " + std::to_string(line) +
                              ": expected {\"axis\": age|gender|partisanship, "
                              "\"vector\": [...]}",
                          line);
      }
      std::vector<double> values;
      for (const auto& x : *v) {
        if (!x.is_number()) {
          throw FormatError("line " + std::to_string(line) + ": non-numeric vector",
                            line);
        }
        values.push_back(x.get<double>());
      }
      axes.emplace_back(*axis, EmbeddingVector(std::move(values)));
    });

    std::ostream& out = ctx.output("scores", o->output);
    std::map<Axis, std::vector<std::pair<std::string, double>>> by_axis;
    for (const auto& [axis, axis_vector] : axes) {
      for (const auto& [community, v] : vectors.entries()) {
        const double score = dimension_score(v, axis_vector);
        by_axis[axis].emplace_back(community, score);
        OrderedRecord r;
        r["community"] = community;
        r["axis"] = to_string(axis);
        r["score"] = score;
        write_record(out, r);
      }
    }
    if (o->fractions.empty()) return;

    std::map<std::string, double, std::less<>> fractions;
    for_each_record(ctx.input("fractions", o->fractions),
                    [&](const Record& r, std::size_t line) {
                      fractions[require_string(r, "community", line)] =
                          require_number(r, "participation_fraction", line);
                    });
    std::ostream& bins_out = ctx.output("bins", o->bins_output);
    std::size_t unmatched = 0;
    for (const auto& [axis, scores] : by_axis) {
      std::vector<std::pair<std::string, double>> matched;
      for (const auto& s : scores) {
        if (fractions.contains(s.first)) {
          matched.push_back(s);
        } else {
          ++unmatched;
        }
      }
      for (const auto& bin : quantile_bins(matched, o->bins, fractions)) {
        OrderedRecord r;
        r["axis"] = to_string(axis);
        r["bin"] = bin.index;
        r["lower"] = bin.lower;
        r["upper"] = bin.upper;
        r["mean_fraction"] =
            bin.mean_fraction ? OrderedRecord(*bin.mean_fraction) : OrderedRecord();
        r["n_communities"] = bin.n_communities;
        r["communities"] = bin.communities;
        write_record(bins_out, r);
      }
    }
    ctx.manifest().stats()["communities"] = vectors.size();
    ctx.manifest().stats()["unmatched_scores"] = unmatched;
  }});
}

}  // namespace

void add_analysis_commands(CLI::App& root, CommandList& commands) {
  add_rank(root, commands);
  add_crosstab(root, commands);
  add_dims(root, commands);
}

}  // namespace caharvest::cli
