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

// classify, evaluate, perturb.

#include <cstdio>
#include <memory>
#include <set>

#include "caharvest/annotation.hpp"
#include "caharvest/error.hpp"
#include "caharvest/eval.hpp"
#include "caharvest/kernels.hpp"
#include "caharvest/pipeline.hpp"
#include "caharvest/text.hpp"
#include "cli/commands.hpp"

namespace caharvest::cli {
namespace {

constexpr std::string_view kExternalPrefix = "external:";

// Everything needed to build a stage from a spec such as "dict",
// "centroid" or "external:preds.jsonl".
struct StageOptions {
  std::string lexicon;
  std::string dict_model;
  std::string model;
  std::string stage1_model;
  std::string store;
  std::size_t dim = kDefaultFallbackDimension;
  double external_threshold = kDefaultDecisionThreshold;
};

void add_stage_options(CLI::App* app, StageOptions& s) {
  app->add_option("--lexicon", s.lexicon, "Lexicon (dictionary stage)");
  app->add_option("--dict-model", s.dict_model, "Threshold model (dictionary stage)");
  app->add_option("--model", s.model, "Centroid model");
  app->add_option("--stage1-model", s.stage1_model,
                  "Centroid model for stage 1 (default: --model)");
  app->add_option("--store", s.store,
                  "Embedding store (default: hash embeddings of the text)");
  app->add_option("--dim", s.dim, "Hash embedding dimension")->capture_default_str();
  app->add_option("--external-threshold", s.external_threshold,
                  "Score threshold for external stage-1 decisions")
      ->capture_default_str();
}

class StageFactory {
 public:
  StageFactory(RunContext& ctx, const StageOptions& options)
      : ctx_(ctx), options_(options) {}

  std::unique_ptr<StageClassifier> make(const std::string& spec, bool stage1) {
    if (spec == "dict" || spec == "dictionary") {
      if (options_.lexicon.empty() || options_.dict_model.empty()) {
        throw UsageError("the dictionary stage needs --lexicon and --dict-model");
      }
      return std::make_unique<DictionaryStage>(
          ctx_.lexicon(options_.lexicon),
          load_threshold_model(ctx_.input("dict-model", options_.dict_model)));
    }
    if (spec == "centroid") {
      const std::string& path = stage1 && !options_.stage1_model.empty()
                                    ? options_.stage1_model
                                    : options_.model;
      if (path.empty()) throw UsageError("the centroid stage needs --model");
      LoadedCentroidModel model =
          read_centroid_model(ctx_.input(stage1 ? "stage1-model" : "model", path));
      if (!embedder_) embedder_ = ctx_.embedder(options_.store, options_.dim);
      if (model.binary) {
        return std::make_unique<CentroidStage>(std::move(model.binary_model), embedder_);
      }
      return std::make_unique<CentroidStage>(std::move(model.multiclass), embedder_);
    }
    if (spec.starts_with(kExternalPrefix)) {
      const std::string path = spec.substr(kExternalPrefix.size());
      return std::make_unique<ExternalStage>(
          read_external_predictions(
              ctx_.input(stage1 ? "stage1-predictions" : "stage2-predictions", path)),
          options_.external_threshold);
    }
    throw UsageError("unknown stage '" + spec +
                     "' (expected dict, centroid or external:<path>)");
  }

 private:
  RunContext& ctx_;
  const StageOptions& options_;
  std::shared_ptr<const Embedder> embedder_;
};

void add_classify(CLI::App& root, CommandList& commands) {
  struct Options {
    std::string input = "-";
    std::string stage1;
    std::string stage2;
    bool direct = false;
    std::string output = "-";
    StageOptions stages;
  };
  auto o = std::make_shared<Options>();
  CLI::App* app = root.add_subcommand(
      "classify", "Layered (or direct five-way) participation classification");
  app->add_option("--input", o->input, "Snippet records")->capture_default_str();
  app->add_option("--stage1", o->stage1, "dict, centroid or external:<path>");
  app->add_option("--stage2", o->stage2, "centroid or external:<path>");
  app->add_flag("--direct", o->direct, "Classify with --stage2 alone, five-way");
  app->add_option("--output", o->output, "Prediction records")->capture_default_str();
  add_stage_options(app, o->stages);

  commands.push_back({app, {"stage2"}, [o](RunContext& ctx) {
    if (o->direct && !o->stage1.empty()) {
      throw UsageError("--direct classifies with --stage2 alone; drop --stage1");
    }
    if (!o->direct && o->stage1.empty()) {
      throw UsageError("--stage1 is required unless --direct is given");
    }
    const auto snippets = read_snippets(ctx.input("snippets", o->input));
    StageFactory factory(ctx, o->stages);
    std::vector<Prediction> predictions;
    std::size_t stage2_calls = 0;
    if (o->direct) {
      const auto classifier = factory.make(o->stage2, false);
      predictions = run_direct(snippets, *classifier);
      stage2_calls = classifier->level_calls();
    } else {
      const auto stage1 = factory.make(o->stage1, true);
      const auto stage2 = factory.make(o->stage2, false);
      predictions = run_layered(snippets, *stage1, *stage2);
      stage2_calls = stage2->level_calls();
    }
    std::ostream& out = ctx.output("predictions", o->output);
    std::map<ParticipationLabel, std::size_t> counts;
    for (const auto& p : predictions) {
      write_record(out, to_record(p));
      ++counts[p.final_label()];
    }
    auto& stats = ctx.manifest().stats();
    stats["samples"] = predictions.size();
    stats["stage2_calls"] = stage2_calls;
    for (ParticipationLabel l : kAllLabels) {
      stats[std::string(short_name(l))] = counts[l];
    }
  }});
}

void add_evaluate(CLI::App& root, CommandList& commands) {
  struct Options {
    std::string gold;
    std::string predictions;
    std::string task = "levels";
    std::string output = "-";
    std::string table;
  };
  auto o = std::make_shared<Options>();
  CLI::App* app = root.add_subcommand(
      "evaluate", "Precision, recall and F1 of predictions against gold labels");
  app->add_option("--gold", o->gold, "Gold label records (required)");
  app->add_option("--predictions", o->predictions, "Prediction records (required)");
  app->add_option("--task", o->task, "levels (five-way) or binary")
      ->capture_default_str()
      ->check(CLI::IsMember({"levels", "binary"}));
  app->add_option("--output", o->output, "Report records")->capture_default_str();
  app->add_option("--table", o->table,
                  "Human-readable report (default: standard error)");

  commands.push_back({app, {"gold", "predictions"}, [o](RunContext& ctx) {
    const auto gold = read_labels(ctx.input("gold", o->gold));
    const auto preds = read_external_predictions(ctx.input("predictions", o->predictions));
    const bool binary = o->task == "binary";

    std::vector<ParticipationLabel> gold_levels;
    std::vector<ParticipationLabel> pred_levels;
    std::vector<BinaryLabel> gold_binary;
    std::vector<BinaryLabel> pred_binary;
    for (const auto& [id, label] : gold) {
      auto it = preds.find(id);
      if (it == preds.end()) throw EvalError("no prediction for sample '" + id + "'");
      if (binary) {
        gold_binary.push_back(binary_view(label));
        pred_binary.push_back(it->second.binary);
      } else {
        if (!it->second.level) {
          throw EvalError("prediction for sample '" + id +
                          "' has no participation level");
        }
        gold_levels.push_back(label);
        pred_levels.push_back(*it->second.level);
      }
    }
    const ConfusionMatrix conf = binary ? confusion(gold_binary, pred_binary)
                                        : confusion(gold_levels, pred_levels);
    const EvalReport rep = report(conf);

    std::ostream& out = ctx.output("report", o->output);
    write_records(out, report_records(rep, o->task));
    OrderedRecord matrix;
    matrix["report"] = o->task;
    matrix["labels"] = conf.labels;
    matrix["confusion"] = conf.counts;
    write_record(out, matrix);

    const std::string table = format_report(rep, o->task);
    if (o->table.empty()) {
      ctx.err() << table;
    } else {
      ctx.output("table", o->table) << table;
    }
    ctx.manifest().stats()["evaluated"] = gold.size();
    ctx.manifest().stats()["unmatched_predictions"] = preds.size() - gold.size();
  }});
}

std::string format_real(double v) { return OrderedRecord(v).dump(); }

void add_perturb(CLI::App& root, CommandList& commands) {
  struct Options {
    std::string input = "-";
    std::string modes = "remove_lexicon,replace_lexicon,remove_random,replace_random";
    std::string vocab;
    std::string output = "-";
    std::string classifier = "none";
    std::string report;
    std::string plot;
    std::string table;
    StageOptions stages;
  };
  auto o = std::make_shared<Options>();
  CLI::App* app = root.add_subcommand(
      "perturb", "Perturb snippets and measure the classifier's response");
  app->add_option("--input", o->input, "Snippet records")->capture_default_str();
  app->add_option("--modes", o->modes, "Comma-separated perturbation modes")
      ->capture_default_str();
  app->add_option("--vocab", o->vocab,
                  "Replacement vocabulary, one token per line (default: the "
                  "input's own tokens)");
  app->add_option("--output", o->output, "Perturbed snippet records")
      ->capture_default_str();
  app->add_option("--classifier", o->classifier, "none, dict or centroid")
      ->capture_default_str()
      ->check(CLI::IsMember({"none", "dict", "centroid"}));
  app->add_option("--report", o->report, "Robustness records");
  app->add_option("--emit-plot-data", o->plot, "Per-mode fractions as CSV");
  app->add_option("--table", o->table,
                  "Human-readable robustness table (default: standard error)");
  add_stage_options(app, o->stages);

  commands.push_back({app, {"lexicon"}, [o](RunContext& ctx) {
    std::vector<PerturbationMode> modes;
    for (const auto& name : split_list(o->modes)) {
      const auto kind = parse_perturbation(name);
      if (!kind) throw UsageError("unknown perturbation mode '" + name + "'");
      modes.push_back({*kind, ctx.seed()});
    }
    if (modes.empty()) throw UsageError("--modes names no mode");
    if (o->classifier == "none" && (!o->report.empty() || !o->plot.empty())) {
      throw UsageError("--report and --emit-plot-data need --classifier");
    }

    const Lexicon lexicon = ctx.lexicon(o->stages.lexicon);
    const auto snippets = read_snippets(ctx.input("snippets", o->input));
    std::vector<std::string> vocabulary;
    if (!o->vocab.empty()) {
      std::istream& in = ctx.input("vocab", o->vocab);
      std::string line;
      while (std::getline(in, line)) {
        std::string_view word = trim(line);
        if (!word.empty() && word.front() != '#') vocabulary.emplace_back(word);
      }
    } else {
      std::set<std::string> words;
      for (const auto& s : snippets) {
        for (auto& t : tokenize(s.text)) words.insert(std::move(t));
      }
      vocabulary.assign(words.begin(), words.end());
    }

    std::ostream& out = ctx.output("perturbed", o->output);
    auto& stats = ctx.manifest().stats();
    for (const PerturbationMode& mode : modes) {
      const auto results = omp::perturb_batch(snippets, lexicon, mode, vocabulary);
      std::size_t clamped = 0;
      for (std::size_t i = 0; i < snippets.size(); ++i) {
        OrderedRecord r;
        r["comment_id"] = snippets[i].comment_id;
        r["mode"] = to_string(mode.kind);
        r["text"] = results[i].text;
        r["budget"] = results[i].budget;
        r["applied"] = results[i].applied;
        r["clamped"] = results[i].clamped;
        write_record(out, r);
        if (results[i].clamped) ++clamped;
      }
      stats[std::string(to_string(mode.kind)) + "_clamped"] = clamped;
      if (clamped > 0) {
        ctx.err() << "warning: " << to_string(mode.kind) << ": " << clamped
                  << " text(s) had fewer non-lexicon tokens than their budget\n";
      }
    }
    if (o->classifier == "none") return;

    StageOptions stages = o->stages;
    StageFactory factory(ctx, stages);
    const auto classifier =
        factory.make(o->classifier == "dict" ? "dict" : "centroid", true);
    const RobustnessReport rep =
        robustness_report(snippets, *classifier, lexicon, modes, vocabulary);

    std::vector<std::pair<std::string, double>> rows = {{"baseline", rep.baseline}};
    for (const auto& [kind, fraction] : rep.fractions) {
      rows.emplace_back(to_string(kind), fraction);
    }
    if (!o->report.empty()) {
      std::ostream& records = ctx.output("robustness", o->report);
      for (const auto& [mode, fraction] : rows) {
        OrderedRecord r;
        r["mode"] = mode;
        r["participation_fraction"] = fraction;
        r["samples"] = rep.samples;
        write_record(records, r);
      }
    }
    if (!o->plot.empty()) {
      std::ostream& csv = ctx.output("plot-data", o->plot);
      csv << "mode,participation_fraction,samples\n";
      for (const auto& [mode, fraction] : rows) {
        csv << mode << ',' << format_real(fraction) << ',' << rep.samples << '\n';
      }
    }
    std::string table = "mode              participation\n";
    for (const auto& [mode, fraction] : rows) {
      char line[96];
      std::snprintf(line, sizeof(line), "%-17s %13.4f\n", mode.c_str(), fraction);
      table += line;
    }
    if (o->table.empty()) {
      ctx.err() << table;
    } else {
      ctx.output("table", o->table) << table;
    }
    stats["baseline"] = rep.baseline;
  }});
}

}  // namespace

void add_classify_commands(CLI::App& root, CommandList& commands) {
  add_classify(root, commands);
  add_evaluate(root, commands);
  add_perturb(root, commands);
}

}  // namespace caharvest::cli
