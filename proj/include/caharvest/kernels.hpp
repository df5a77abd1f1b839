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

// Per-item batch kernels. Each exists twice with identical signatures:
//
//   caharvest::serial  plain loops, the reference the tests compare against
//   caharvest::omp     OpenMP data-parallel versions used by the library
//
// Both produce identical output for any thread count. When items throw,
// the omp version rethrows the exception of the lowest failing index, which
// is what the serial loop would have thrown.

#ifndef CAHARVEST_KERNELS_HPP_
#define CAHARVEST_KERNELS_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "caharvest/corpus.hpp"
#include "caharvest/embeddings.hpp"
#include "caharvest/eval.hpp"
#include "caharvest/lexicon.hpp"
#include "caharvest/pipeline.hpp"

namespace caharvest {

// Result of parsing + snippeting one ingestion line.
struct LineOutcome {
  bool parsed = false;
  std::string id;                  // set when parsed
  std::optional<Snippet> snippet;  // set when the comment passes the gate
};

// Single-item work shared by both kernel families.
LineOutcome ingest_line(std::string_view line, const Lexicon& lexicon);
Prediction predict_layered(const Snippet& snippet, const StageClassifier& stage1,
                           const StageClassifier& stage2);
Prediction predict_direct(const Snippet& snippet,
                          const StageClassifier& classifier);

#define CAHARVEST_KERNEL_DECLS                                                 \
  std::vector<LineOutcome> ingest_block(std::span<const std::string> lines,    \
                                        const Lexicon& lexicon);               \
  std::vector<double> dictionary_scores(std::span<const Snippet> snippets,     \
                                        const Lexicon& lexicon);               \
  std::vector<EmbeddingVector> hash_embed(std::span<const Snippet> snippets,   \
                                          std::size_t dimension);              \
  std::vector<CentroidDecision> classify_centroids(                            \
      std::span<const EmbeddingVector> queries, const CentroidModel& model);   \
  std::vector<Prediction> layered(std::span<const Snippet> snippets,           \
                                  const StageClassifier& stage1,               \
                                  const StageClassifier& stage2);              \
  std::vector<Prediction> direct(std::span<const Snippet> snippets,            \
                                 const StageClassifier& classifier);           \
  std::vector<PerturbResult> perturb_batch(                                    \
      std::span<const Snippet> snippets, const Lexicon& lexicon,               \
      const PerturbationMode& mode, std::span<const std::string> vocabulary);  \
  std::vector<BinaryLabel> binary_labels(std::span<const Snippet> snippets,    \
                                         const StageClassifier& classifier);

namespace serial {
CAHARVEST_KERNEL_DECLS
}  // namespace serial

namespace omp {
CAHARVEST_KERNEL_DECLS
}  // namespace omp

#undef CAHARVEST_KERNEL_DECLS

// Thread count for the omp kernels; 0 means all available cores.
void set_thread_count(int threads);
int thread_count();
int hardware_threads();

}  // namespace caharvest

#endif  // CAHARVEST_KERNELS_HPP_
