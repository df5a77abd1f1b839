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

#include "caharvest/pipeline.hpp"

#include "caharvest/error.hpp"
#include "caharvest/kernels.hpp"

namespace caharvest {

OrderedRecord to_record(const Prediction& p) {
  OrderedRecord r;
  r["sample_id"] = p.sample_id;
  r["stage1"] = to_string(p.stage1);
  if (p.stage2) r["stage2"] = to_string(*p.stage2);
  r["label"] = to_string(p.final_label());
  if (p.scores) r["scores"] = *p.scores;
  return r;
}

std::string_view to_string(StageKind kind) {
  switch (kind) {
    case StageKind::kDictionary: return "dictionary";
    case StageKind::kCentroid: return "centroid";
    case StageKind::kExternal: return "external";
  }
  return "external";
}

EmbeddingVector StoreEmbedder::embed(const Snippet& snippet) const {
  if (!store_->contains(snippet.comment_id)) {
    throw PipelineError("no embedding for sample '" + snippet.comment_id + "'");
  }
  return store_->at(snippet.comment_id);
}

EmbeddingVector HashEmbedder::embed(const Snippet& snippet) const {
  return fallback_hash_embed(snippet.text, dimension_);
}

BinaryDecision DictionaryStage::do_binary(const Snippet& snippet) const {
  double score = 0.0;
  try {
    score = dictionary_score(snippet.text, lexicon_);
  } catch (const ScoreError&) {
    throw PipelineError("sample '" + snippet.comment_id +
                        "' has no tokens to score");
  }
  return {classify_dictionary(score, model_), LabelScores{{"participation", score}}};
}

LevelDecision DictionaryStage::do_level(const Snippet&, bool) const {
  throw PipelineError("the dictionary classifier is binary only");
}

namespace {

CentroidModel without_none(const CentroidModel& model) {
  CentroidModel levels = model;
  levels.centroids.erase(ParticipationLabel::None);
  levels.class_counts.erase(ParticipationLabel::None);
  return levels;
}

}  // namespace

CentroidStage::CentroidStage(CentroidModel model,
                             std::shared_ptr<const Embedder> embedder)
    : model_(std::move(model)),
      levels_model_(without_none(*model_)),
      embedder_(std::move(embedder)) {
  if (model_->empty()) throw ModelError("centroid stage needs a nonempty model");
}

CentroidStage::CentroidStage(BinaryCentroidModel model,
                             std::shared_ptr<const Embedder> embedder)
    : binary_model_(std::move(model)), embedder_(std::move(embedder)) {
  if (binary_model_->empty()) {
    throw ModelError("centroid stage needs a nonempty model");
  }
}

EmbeddingVector CentroidStage::embed(const Snippet& snippet) const {
  try {
    return embedder_->embed(snippet);
  } catch (const PipelineError&) {
    throw;
  } catch (const Error& e) {
    throw PipelineError("cannot embed sample '" + snippet.comment_id +
                        "': " + e.what());
  }
}

BinaryDecision CentroidStage::do_binary(const Snippet& snippet) const {
  const EmbeddingVector v = embed(snippet);
  if (binary_model_) {
    const auto d = classify_centroid(v, *binary_model_);
    return {d.label, LabelScores{{std::string(to_string(d.label)), d.similarity}}};
  }
  const auto d = classify_centroid(v, *model_);
  return {binary_view(d.label),
          LabelScores{{std::string(to_string(d.label)), d.similarity}}};
}

LevelDecision CentroidStage::do_level(const Snippet& snippet,
                                      bool levels_only) const {
  if (!model_) {
    throw PipelineError("a binary centroid model cannot assign levels");
  }
  const CentroidModel& model = levels_only ? levels_model_ : *model_;
  if (model.empty()) {
    throw PipelineError("centroid model has no participation-level classes");
  }
  const auto d = classify_centroid(embed(snippet), model);
  return {d.label, LabelScores{{std::string(to_string(d.label)), d.similarity}}};
}

ExternalPredictions read_external_predictions(std::istream& in) {
  ExternalPredictions out;
  for_each_record(in, [&](const Record& r, std::size_t line) {
    std::string id = require_string(r, "sample_id", line);
    const std::string label = require_string(r, "label", line);
    ExternalPrediction p;
    if (auto level = parse_participation_label(label)) {
      p.level = *level;
      p.binary = binary_view(*level);
    } else if (label == "participation") {
      p.binary = BinaryLabel::Participation;
    } else {
      throw FormatError("line " + std::to_string(line) + ": unknown label '" +
                            label + "'",
                        line);
    }
    if (auto scores = r.find("scores"); scores != r.end() && !scores->is_null()) {
      if (!scores->is_object()) {
        throw FormatError("line " + std::to_string(line) +
                              ": 'scores' must be an object",
                          line);
      }
      LabelScores s;
      for (const auto& [key, value] : scores->items()) {
        if (!parse_participation_label(key) && key != "participation") {
          throw FormatError("line " + std::to_string(line) +
                                ": unknown score label '" + key + "'",
                            line);
        }
        if (!value.is_number()) {
          throw FormatError("line " + std::to_string(line) + ": score for '" +
                                key + "' is not a number",
                            line);
        }
        s[key] = value.get<double>();
      }
      p.scores = std::move(s);
    }
    if (!out.emplace(id, std::move(p)).second) {
      throw FormatError("duplicate sample_id '" + id + "' at line " +
                            std::to_string(line),
                        line);
    }
  });
  return out;
}

ExternalPredictions load_external_predictions(const std::filesystem::path& path) {
  auto in = open_input_file(path);
  return read_external_predictions(in);
}

const ExternalPrediction& ExternalStage::lookup(const Snippet& snippet) const {
  auto it = predictions_.find(snippet.comment_id);
  if (it == predictions_.end()) {
    throw PipelineError("no external prediction for sample '" +
                        snippet.comment_id + "'");
  }
  return it->second;
}

BinaryDecision ExternalStage::do_binary(const Snippet& snippet) const {
  const ExternalPrediction& p = lookup(snippet);
  if (!p.scores) return {p.binary, std::nullopt};

  std::optional<double> participation;
  if (auto it = p.scores->find("participation"); it != p.scores->end()) {
    participation = it->second;
  } else {
    double sum = 0.0;
    bool any = false;
    for (ParticipationLabel level : kLevelLabels) {
      if (auto it = p.scores->find(std::string(to_string(level)));
          it != p.scores->end()) {
        sum += it->second;
        any = true;
      }
    }
    if (any) {
      participation = sum;
    } else if (auto none = p.scores->find("none"); none != p.scores->end()) {
      participation = 1.0 - none->second;
    }
  }
  if (!participation) return {p.binary, p.scores};
  return {*participation >= threshold_ ? BinaryLabel::Participation
                                       : BinaryLabel::None,
          p.scores};
}

LevelDecision ExternalStage::do_level(const Snippet& snippet,
                                      bool levels_only) const {
  const ExternalPrediction& p = lookup(snippet);
  if (p.level && !(levels_only && *p.level == ParticipationLabel::None)) {
    return {*p.level, p.scores};
  }
  // Fall back to the best admissible score.
  if (p.scores) {
    std::optional<LevelDecision> best;
    double best_score = 0.0;
    for (ParticipationLabel label : kAllLabels) {
      if (levels_only && label == ParticipationLabel::None) continue;
      auto it = p.scores->find(std::string(to_string(label)));
      if (it == p.scores->end()) continue;
      if (!best || it->second > best_score) {
        best = LevelDecision{label, p.scores};
        best_score = it->second;
      }
    }
    if (best) return *best;
  }
  throw PipelineError("external prediction for sample '" + snippet.comment_id +
                      "' has no participation level");
}

Prediction predict_layered(const Snippet& snippet, const StageClassifier& stage1,
                           const StageClassifier& stage2) {
  Prediction p;
  p.sample_id = snippet.comment_id;
  const BinaryDecision gate = stage1.classify_binary(snippet);
  p.stage1 = gate.label;
  p.scores = gate.scores;
  if (gate.label == BinaryLabel::Participation) {
    LevelDecision level = stage2.classify_level(snippet, /*levels_only=*/true);
    p.stage2 = level.label;
    if (level.scores) p.scores = std::move(level.scores);
  }
  return p;
}

Prediction predict_direct(const Snippet& snippet,
                          const StageClassifier& classifier) {
  Prediction p;
  p.sample_id = snippet.comment_id;
  LevelDecision d = classifier.classify_level(snippet, /*levels_only=*/false);
  p.stage1 = binary_view(d.label);
  if (is_participation(d.label)) p.stage2 = d.label;
  p.scores = std::move(d.scores);
  return p;
}

std::vector<Prediction> run_layered(std::span<const Snippet> snippets,
                                    const StageClassifier& stage1,
                                    const StageClassifier& stage2) {
  if (!stage1.binary_capable()) {
    throw PipelineError(std::string(to_string(stage1.kind())) +
                        " classifier cannot serve as stage 1");
  }
  if (!stage2.multiclass_capable()) {
    throw PipelineError(std::string(to_string(stage2.kind())) +
                        " classifier cannot serve as stage 2");
  }
  return omp::layered(snippets, stage1, stage2);
}

std::vector<Prediction> run_direct(std::span<const Snippet> snippets,
                                   const StageClassifier& classifier) {
  if (!classifier.multiclass_capable()) {
    throw PipelineError(std::string(to_string(classifier.kind())) +
                        " classifier cannot classify levels directly");
  }
  return omp::direct(snippets, classifier);
}

ClassWeights class_weights(const std::map<std::string, std::size_t>& counts) {
  std::size_t total = 0;
  for (const auto& [label, n] : counts) {
    if (n == 0) throw WeightError("class '" + label + "' has no samples");
    total += n;
  }
  ClassWeights w;
  for (const auto& [label, n] : counts) {
    w.weights[label] = static_cast<double>(total) / (2.0 * static_cast<double>(n));
  }
  return w;
}

}  // namespace caharvest
