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

// Serial reference kernels. Keep these as plain loops: they are the
// baseline the OpenMP kernels are tested and benchmarked against.

#include "caharvest/kernels.hpp"

namespace caharvest::serial {

std::vector<LineOutcome> ingest_block(std::span<const std::string> lines,
                                      const Lexicon& lexicon) {
  std::vector<LineOutcome> out;
  out.reserve(lines.size());
  for (const auto& line : lines) out.push_back(ingest_line(line, lexicon));
  return out;
}

std::vector<double> dictionary_scores(std::span<const Snippet> snippets,
                                      const Lexicon& lexicon) {
  std::vector<double> out;
  out.reserve(snippets.size());
  for (const auto& s : snippets) out.push_back(dictionary_score(s.text, lexicon));
  return out;
}

std::vector<EmbeddingVector> hash_embed(std::span<const Snippet> snippets,
                                        std::size_t dimension) {
  std::vector<EmbeddingVector> out;
  out.reserve(snippets.size());
  for (const auto& s : snippets) out.push_back(fallback_hash_embed(s.text, dimension));
  return out;
}

std::vector<CentroidDecision> classify_centroids(
    std::span<const EmbeddingVector> queries, const CentroidModel& model) {
  std::vector<CentroidDecision> out;
  out.reserve(queries.size());
  for (const auto& q : queries) out.push_back(classify_centroid(q, model));
  return out;
}

std::vector<Prediction> layered(std::span<const Snippet> snippets,
                                const StageClassifier& stage1,
                                const StageClassifier& stage2) {
  std::vector<Prediction> out;
  out.reserve(snippets.size());
  for (const auto& s : snippets) out.push_back(predict_layered(s, stage1, stage2));
  return out;
}

std::vector<Prediction> direct(std::span<const Snippet> snippets,
                               const StageClassifier& classifier) {
  std::vector<Prediction> out;
  out.reserve(snippets.size());
  for (const auto& s : snippets) out.push_back(predict_direct(s, classifier));
  return out;
}

std::vector<PerturbResult> perturb_batch(std::span<const Snippet> snippets,
                                         const Lexicon& lexicon,
                                         const PerturbationMode& mode,
                                         std::span<const std::string> vocabulary) {
  std::vector<PerturbResult> out;
  out.reserve(snippets.size());
  for (const auto& s : snippets) {
    out.push_back(perturb(s.text, lexicon, mode, vocabulary, s.comment_id));
  }
  return out;
}

std::vector<BinaryLabel> binary_labels(std::span<const Snippet> snippets,
                                       const StageClassifier& classifier) {
  std::vector<BinaryLabel> out;
  out.reserve(snippets.size());
  for (const auto& s : snippets) out.push_back(classifier.classify_binary(s).label);
  return out;
}

}  // namespace caharvest::serial
