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

#ifndef CAHARVEST_EVAL_HPP_
#define CAHARVEST_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "caharvest/corpus.hpp"
#include "caharvest/labels.hpp"
#include "caharvest/lexicon.hpp"
#include "caharvest/pipeline.hpp"
#include "caharvest/records.hpp"

namespace caharvest {

// Rows are gold, columns predicted.
struct ConfusionMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> counts;

  std::size_t total() const;
  std::optional<std::size_t> index_of(std::string_view label) const;
};

// `labels` fixes the row/column order; when empty, the sorted union of the
// observed labels is used. Throws EvalError on a length mismatch or a label
// outside an explicit `labels`.
ConfusionMatrix confusion(std::span<const std::string> gold,
                          std::span<const std::string> pred,
                          std::vector<std::string> labels = {});
// Rows/columns are all five labels in enum order.
ConfusionMatrix confusion(std::span<const ParticipationLabel> gold,
                          std::span<const ParticipationLabel> pred);
ConfusionMatrix confusion(std::span<const BinaryLabel> gold,
                          std::span<const BinaryLabel> pred);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;  // gold count
};

struct Averages {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  std::vector<std::pair<std::string, ClassMetrics>> per_class;
  Averages macro;     // unweighted mean over classes with gold support
  Averages weighted;  // weighted by gold support
  std::size_t total = 0;
};

// Zero denominators give 0 for the affected ratio.
EvalReport report(const ConfusionMatrix& conf);

std::string format_report(const EvalReport& report, std::string_view title);
std::vector<OrderedRecord> report_records(const EvalReport& report,
                                          std::string_view title);

enum class PerturbationKind {
  kRemoveLexicon,
  kReplaceLexicon,
  kRemoveRandom,
  kReplaceRandom,
};

inline constexpr std::array<PerturbationKind, 4> kAllPerturbations = {
    PerturbationKind::kRemoveLexicon, PerturbationKind::kReplaceLexicon,
    PerturbationKind::kRemoveRandom, PerturbationKind::kReplaceRandom};

std::string_view to_string(PerturbationKind kind);
std::optional<PerturbationKind> parse_perturbation(std::string_view s);

struct PerturbationMode {
  PerturbationKind kind = PerturbationKind::kRemoveLexicon;
  std::uint64_t seed = 0;
};

struct PerturbResult {
  std::string text;
  std::size_t budget = 0;   // lexicon tokens in the input
  std::size_t applied = 0;  // tokens actually removed or replaced
  bool clamped = false;     // random modes: fewer candidates than budget
};

// remove_lexicon deletes every lexicon token; replace_lexicon swaps each for
// a vocabulary token. The random modes remove/replace k uniformly chosen
// non-lexicon tokens, k being the lexicon-token count of the text (clamped
// to what is available). Replacement tokens are drawn uniformly from the
// vocabulary entries that are not lexicon terms. When anything changes,
// whitespace is collapsed; otherwise the text is returned untouched.
//
// The random stream is derived from (mode.seed, stream_key, mode.kind), so
// results do not depend on call order or thread count. Throws PerturbError
// when a replace mode has no usable vocabulary.
PerturbResult perturb(std::string_view text, const Lexicon& lexicon,
                      const PerturbationMode& mode,
                      std::span<const std::string> vocabulary,
                      std::string_view stream_key = {});

struct RobustnessReport {
  std::size_t samples = 0;
  double baseline = 0.0;  // unperturbed Participation fraction
  std::vector<std::pair<PerturbationKind, double>> fractions;
  std::size_t clamped = 0;  // perturbed texts whose budget was clamped
};

// Classifies every snippet unperturbed and under each mode with the
// stage-1 decision of `classifier`. The classifier must read text (see
// StageClassifier::reads_text); throws PipelineError otherwise.
RobustnessReport robustness_report(std::span<const Snippet> testset,
                                   const StageClassifier& classifier,
                                   const Lexicon& lexicon,
                                   std::span<const PerturbationMode> modes,
                                   std::span<const std::string> vocabulary);

}  // namespace caharvest

#endif  // CAHARVEST_EVAL_HPP_
