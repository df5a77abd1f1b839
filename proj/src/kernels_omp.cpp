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

// OpenMP kernels. Every loop writes only its own output slot, so results
// are independent of the schedule. Exceptions may not leave a parallel
// region; each worker records its failure and the lowest index is rethrown
// after the join.

#include <omp.h>

#include <cstddef>
#include <exception>
#include <limits>

#include "caharvest/kernels.hpp"

namespace caharvest {
namespace {

class FirstError {
 public:
  // Must be called from inside a catch block.
  void capture(std::ptrdiff_t index) {
#pragma omp critical(caharvest_first_error)
    {
      if (index < index_) {
        index_ = index;
        error_ = std::current_exception();
      }
    }
  }

  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::ptrdiff_t index_ = std::numeric_limits<std::ptrdiff_t>::max();
  std::exception_ptr error_;
};

// Runs out[i] = fn(items[i]) over all items.
template <class Out, class In, class Fn>
std::vector<Out> parallel_map(std::span<const In> items, Fn&& fn) {
  std::vector<Out> out(items.size());
  const auto n = static_cast<std::ptrdiff_t>(items.size());
  FirstError error;
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(items[static_cast<std::size_t>(i)]);
    } catch (...) {
      error.capture(i);
    }
  }
  error.rethrow();
  return out;
}

int g_threads = 0;

}  // namespace

void set_thread_count(int threads) {
  g_threads = threads > 0 ? threads : 0;
  omp_set_num_threads(g_threads > 0 ? g_threads : omp_get_num_procs());
}

int thread_count() { return g_threads > 0 ? g_threads : omp_get_num_procs(); }

int hardware_threads() { return omp_get_num_procs(); }

namespace omp {

std::vector<LineOutcome> ingest_block(std::span<const std::string> lines,
                                      const Lexicon& lexicon) {
  return parallel_map<LineOutcome>(
      lines, [&](const std::string& line) { return ingest_line(line, lexicon); });
}

std::vector<double> dictionary_scores(std::span<const Snippet> snippets,
                                      const Lexicon& lexicon) {
  return parallel_map<double>(snippets, [&](const Snippet& s) {
    return dictionary_score(s.text, lexicon);
  });
}

std::vector<EmbeddingVector> hash_embed(std::span<const Snippet> snippets,
                                        std::size_t dimension) {
  return parallel_map<EmbeddingVector>(snippets, [&](const Snippet& s) {
    return fallback_hash_embed(s.text, dimension);
  });
}

std::vector<CentroidDecision> classify_centroids(
    std::span<const EmbeddingVector> queries, const CentroidModel& model) {
  return parallel_map<CentroidDecision>(queries, [&](const EmbeddingVector& q) {
    return classify_centroid(q, model);
  });
}

std::vector<Prediction> layered(std::span<const Snippet> snippets,
                                const StageClassifier& stage1,
                                const StageClassifier& stage2) {
  return parallel_map<Prediction>(snippets, [&](const Snippet& s) {
    return predict_layered(s, stage1, stage2);
  });
}

std::vector<Prediction> direct(std::span<const Snippet> snippets,
                               const StageClassifier& classifier) {
  return parallel_map<Prediction>(
      snippets, [&](const Snippet& s) { return predict_direct(s, classifier); });
}

std::vector<PerturbResult> perturb_batch(std::span<const Snippet> snippets,
                                         const Lexicon& lexicon,
                                         const PerturbationMode& mode,
                                         std::span<const std::string> vocabulary) {
  return parallel_map<PerturbResult>(snippets, [&](const Snippet& s) {
    return perturb(s.text, lexicon, mode, vocabulary, s.comment_id);
  });
}

std::vector<BinaryLabel> binary_labels(std::span<const Snippet> snippets,
                                       const StageClassifier& classifier) {
  return parallel_map<BinaryLabel>(snippets, [&](const Snippet& s) {
    return classifier.classify_binary(s).label;
  });
}

}  // namespace omp
}  // namespace caharvest
