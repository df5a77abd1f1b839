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

// Layered two-stage classification.
//
// Stage 1 is a binary participation gate; stage 2 assigns one of the four
// participation levels and runs only on stage-1 positives. Stage
// classifiers are pluggable: a lexicon threshold, a nearest-centroid model,
// or predictions produced elsewhere and read from a file.

#ifndef CAHARVEST_PIPELINE_HPP_
#define CAHARVEST_PIPELINE_HPP_

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "caharvest/corpus.hpp"
#include "caharvest/embeddings.hpp"
#include "caharvest/labels.hpp"
#include "caharvest/lexicon.hpp"
#include "caharvest/records.hpp"

namespace caharvest {

using LabelScores = std::map<std::string, double>;

struct Prediction {
  std::string sample_id;
  BinaryLabel stage1 = BinaryLabel::None;
  // Present iff stage1 is Participation; never None.
  std::optional<ParticipationLabel> stage2;
  std::optional<LabelScores> scores;

  ParticipationLabel final_label() const {
    return stage1 == BinaryLabel::Participation && stage2
               ? *stage2
               : ParticipationLabel::None;
  }

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

// {"sample_id", "stage1", "stage2"?, "label", "scores"?}. The `label` key
// carries the final label, so the output can be read back as an external
// prediction file.
OrderedRecord to_record(const Prediction& p);

// Maps a snippet to its vector.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual EmbeddingVector embed(const Snippet& snippet) const = 0;
  // True when the vector is a function of snippet.text alone.
  virtual bool reads_text() const = 0;
};

// Looks vectors up by comment_id in a precomputed store.
class StoreEmbedder final : public Embedder {
 public:
  explicit StoreEmbedder(std::shared_ptr<const EmbeddingStore> store)
      : store_(std::move(store)) {}
  EmbeddingVector embed(const Snippet& snippet) const override;
  bool reads_text() const override { return false; }

 private:
  std::shared_ptr<const EmbeddingStore> store_;
};

class HashEmbedder final : public Embedder {
 public:
  explicit HashEmbedder(std::size_t dimension = kDefaultFallbackDimension)
      : dimension_(dimension) {}
  EmbeddingVector embed(const Snippet& snippet) const override;
  bool reads_text() const override { return true; }

 private:
  std::size_t dimension_;
};

enum class StageKind { kDictionary, kCentroid, kExternal };

std::string_view to_string(StageKind kind);

struct BinaryDecision {
  BinaryLabel label = BinaryLabel::None;
  std::optional<LabelScores> scores;
};

struct LevelDecision {
  ParticipationLabel label = ParticipationLabel::None;
  std::optional<LabelScores> scores;
};

// A classifier usable as a pipeline stage. Read-only after construction
// apart from the call counters, which are atomic.
class StageClassifier {
 public:
  virtual ~StageClassifier() = default;
  StageClassifier() = default;
  StageClassifier(const StageClassifier&) = delete;
  StageClassifier& operator=(const StageClassifier&) = delete;

  virtual StageKind kind() const = 0;
  virtual bool binary_capable() const = 0;
  virtual bool multiclass_capable() const = 0;
  // True when the decision depends only on snippet.text, so perturbed copies
  // of a snippet are classified on their own content.
  virtual bool reads_text() const = 0;

  BinaryDecision classify_binary(const Snippet& snippet) const {
    binary_calls_.fetch_add(1, std::memory_order_relaxed);
    return do_binary(snippet);
  }

  // With `levels_only`, None is not an admissible answer (stage 2 of the
  // layered pipeline).
  LevelDecision classify_level(const Snippet& snippet, bool levels_only) const {
    level_calls_.fetch_add(1, std::memory_order_relaxed);
    return do_level(snippet, levels_only);
  }

  std::size_t binary_calls() const { return binary_calls_.load(); }
  std::size_t level_calls() const { return level_calls_.load(); }
  void reset_counters() const {
    binary_calls_ = 0;
    level_calls_ = 0;
  }

 protected:
  virtual BinaryDecision do_binary(const Snippet& snippet) const = 0;
  virtual LevelDecision do_level(const Snippet& snippet, bool levels_only) const = 0;

 private:
  mutable std::atomic<std::size_t> binary_calls_{0};
  mutable std::atomic<std::size_t> level_calls_{0};
};

// Lexicon fraction against a tuned threshold. Binary only.
class DictionaryStage final : public StageClassifier {
 public:
  DictionaryStage(Lexicon lexicon, ThresholdModel model)
      : lexicon_(std::move(lexicon)), model_(model) {}

  StageKind kind() const override { return StageKind::kDictionary; }
  bool binary_capable() const override { return true; }
  bool multiclass_capable() const override { return false; }
  bool reads_text() const override { return true; }

  const ThresholdModel& model() const { return model_; }

 protected:
  BinaryDecision do_binary(const Snippet& snippet) const override;
  LevelDecision do_level(const Snippet& snippet, bool levels_only) const override;

 private:
  Lexicon lexicon_;
  ThresholdModel model_;
};

// Nearest centroid. A five-way model serves both stages (its binary
// decision is the binary view of the five-way label); a binary model
// serves stage 1 only.
class CentroidStage final : public StageClassifier {
 public:
  CentroidStage(CentroidModel model, std::shared_ptr<const Embedder> embedder);
  CentroidStage(BinaryCentroidModel model, std::shared_ptr<const Embedder> embedder);

  StageKind kind() const override { return StageKind::kCentroid; }
  bool binary_capable() const override { return true; }
  bool multiclass_capable() const override { return !binary_model_; }
  bool reads_text() const override { return embedder_->reads_text(); }

 protected:
  BinaryDecision do_binary(const Snippet& snippet) const override;
  LevelDecision do_level(const Snippet& snippet, bool levels_only) const override;

 private:
  EmbeddingVector embed(const Snippet& snippet) const;

  std::optional<CentroidModel> model_;
  CentroidModel levels_model_;  // model_ without the None class
  std::optional<BinaryCentroidModel> binary_model_;
  std::shared_ptr<const Embedder> embedder_;
};

struct ExternalPrediction {
  BinaryLabel binary = BinaryLabel::None;
  // Absent when the file says only "participation".
  std::optional<ParticipationLabel> level;
  std::optional<LabelScores> scores;
};

using ExternalPredictions = std::map<std::string, ExternalPrediction, std::less<>>;

// Records {"sample_id", "label", "scores"?}; label is a five-way name or
// "participation"; score keys must be label names. Throws FormatError
// naming the line for an unknown label and the id for a duplicate.
ExternalPredictions read_external_predictions(std::istream& in);
ExternalPredictions load_external_predictions(const std::filesystem::path& path);

inline constexpr double kDefaultDecisionThreshold = 0.5;

// Predictions computed elsewhere, looked up by sample id. When a record has
// scores, stage 1 compares the participation score against the decision
// threshold: scores["participation"] if given, else the sum of the level
// scores, else 1 - scores["none"].
class ExternalStage final : public StageClassifier {
 public:
  explicit ExternalStage(ExternalPredictions predictions,
                         double threshold = kDefaultDecisionThreshold)
      : predictions_(std::move(predictions)), threshold_(threshold) {}

  StageKind kind() const override { return StageKind::kExternal; }
  bool binary_capable() const override { return true; }
  bool multiclass_capable() const override { return true; }
  bool reads_text() const override { return false; }

 protected:
  BinaryDecision do_binary(const Snippet& snippet) const override;
  LevelDecision do_level(const Snippet& snippet, bool levels_only) const override;

 private:
  const ExternalPrediction& lookup(const Snippet& snippet) const;

  ExternalPredictions predictions_;
  double threshold_;
};

// Stage 2 is consulted only for stage-1 positives. Output order follows
// `snippets`. Throws PipelineError for an incapable stage or a sample the
// stages cannot classify.
std::vector<Prediction> run_layered(std::span<const Snippet> snippets,
                                    const StageClassifier& stage1,
                                    const StageClassifier& stage2);

// Single five-way stage; stage1 is derived as label != None.
std::vector<Prediction> run_direct(std::span<const Snippet> snippets,
                                   const StageClassifier& classifier);

struct ClassWeights {
  std::map<std::string, double> weights;
};

// w_c = total / (2 * n_c). Throws WeightError naming a class with count 0.
ClassWeights class_weights(const std::map<std::string, std::size_t>& counts);

}  // namespace caharvest

#endif  // CAHARVEST_PIPELINE_HPP_
