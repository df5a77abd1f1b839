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

// Crowdsourced annotation: worker quality control, majority aggregation,
// agreement, label propagation within threads, and assembly of the
// training-set variants.

#ifndef CAHARVEST_ANNOTATION_HPP_
#define CAHARVEST_ANNOTATION_HPP_

#include <array>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "caharvest/corpus.hpp"
#include "caharvest/embeddings.hpp"
#include "caharvest/labels.hpp"
#include "caharvest/records.hpp"

namespace caharvest {

struct AnnotationRecord {
  std::string sample_id;
  std::string worker_id;
  ParticipationLabel label = ParticipationLabel::None;
  bool is_control = false;
  std::optional<ParticipationLabel> gold;  // present iff is_control
};

// {"sample_id", "worker_id", "label", "is_control", "gold"?}. Throws
// FormatError, including when `gold` presence disagrees with is_control.
std::vector<AnnotationRecord> read_annotations(std::istream& in);

struct WorkerScore {
  std::size_t controls_seen = 0;
  std::size_t controls_passed = 0;
  std::optional<double> pass_rate;  // undefined without control exposure
  bool discard = false;             // failed strictly more than half
};

std::map<std::string, WorkerScore> score_workers(
    std::span<const AnnotationRecord> records);

std::set<std::string> retained_workers(
    const std::map<std::string, WorkerScore>& scores);

struct AggregatedSample {
  std::string sample_id;
  ParticipationLabel label = ParticipationLabel::None;
  std::size_t n_annotators = 0;
  std::size_t vote_margin = 0;  // winner votes minus runner-up votes
};

enum class RejectionReason { kTooFewAnnotators, kNoClearMajority };

std::string_view to_string(RejectionReason reason);

struct RejectionLog {
  std::size_t filtered_annotations = 0;  // from discarded workers
  std::size_t control_samples = 0;       // excluded from the dataset
  std::size_t too_few_annotators = 0;
  std::size_t no_clear_majority = 0;
  std::vector<std::pair<std::string, RejectionReason>> rejected;
};

struct Aggregation {
  std::vector<AggregatedSample> samples;  // first-appearance order
  RejectionLog log;
};

// Drops annotations from workers outside `retained`, then keeps each
// non-control sample with at least two surviving annotations whose top
// label is unique.
Aggregation aggregate_majority(std::span<const AnnotationRecord> records,
                               const std::set<std::string>& retained);

// Nominal Krippendorff's alpha from the coincidence matrix over units with
// at least two annotations. Returns 1 when expected disagreement is zero.
// Throws AgreementError when no unit has two annotations.
double krippendorff_alpha(std::span<const AnnotationRecord> records);

struct LabeledSnippet {
  Snippet snippet;
  ParticipationLabel label = ParticipationLabel::None;
};

// Snippet record keys plus "label". The id may be given as `comment_id` or
// `sample_id`; other snippet keys are optional.
std::vector<LabeledSnippet> read_labeled_snippets(std::istream& in);
OrderedRecord to_record(const LabeledSnippet& s);

// sample_id -> label from any record file with `sample_id` and `label`.
std::map<std::string, ParticipationLabel> read_labels(std::istream& in);

struct ExtensionOptions {
  double top_fraction = 0.05;
  double bot_threshold = 0.95;
};

// Candidates from the anchor's thread (the anchor itself excluded) with
// cosine above bot_threshold to the anchor are dropped; the
// ceil(top_fraction * remaining) most similar of the rest inherit the
// anchor's label. Ordered by similarity descending, then comment_id.
// Throws Error when a candidate belongs to another thread and LookupError
// for a missing vector.
std::vector<LabeledSnippet> extend_reddit_informed(
    const LabeledSnippet& anchor, std::span<const Snippet> thread,
    const EmbeddingStore& vectors, const ExtensionOptions& options = {});

// A generated candidate plus its manual review. Only candidates passing all
// five checks are used.
struct SyntheticRecord {
  std::string sample_id;
  std::string anchor_id;
  ParticipationLabel label = ParticipationLabel::None;
  std::string text;
  // semantic_similarity, structure, meaning, intent, key_details
  std::array<bool, 5> checks{};

  bool valid() const {
    for (bool c : checks) {
      if (!c) return false;
    }
    return true;
  }
};

inline constexpr std::array<std::string_view, 5> kValidityChecks = {
    "semantic_similarity", "structure", "meaning", "intent", "key_details"};

std::vector<SyntheticRecord> read_synthetic(std::istream& in);

enum class VariantName { kCS, kCSSynIE, kCSSynA, kExt, kExtSynIE };

// "CS", "CS+SynI/E", "CS+SynA", "Ext", "Ext+SynI/E".
std::string_view to_string(VariantName name);
std::optional<VariantName> parse_variant(std::string_view s);

struct TrainingSetVariant {
  VariantName name = VariantName::kCS;
  std::vector<LabeledSnippet> samples;
  std::map<ParticipationLabel, std::size_t> counts;
};

// Composes a named variant:
//   CS          cs
//   CS+SynI/E   cs + valid synthetic Intention/Execution
//   CS+SynA     cs + valid synthetic of every class but ProblemSolution
//   Ext         cs + extension
//   Ext+SynI/E  Ext + valid synthetic Intention/Execution
// Throws VariantError for an unknown name or a repeated sample id.
TrainingSetVariant merge_training_sets(std::span<const LabeledSnippet> cs,
                                       std::span<const SyntheticRecord> synthetic,
                                       std::span<const LabeledSnippet> extension,
                                       std::string_view variant);

std::map<ParticipationLabel, std::size_t> label_counts(
    std::span<const LabeledSnippet> samples);

}  // namespace caharvest

#endif  // CAHARVEST_ANNOTATION_HPP_
