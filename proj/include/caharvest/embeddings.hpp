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

#ifndef CAHARVEST_EMBEDDINGS_HPP_
#define CAHARVEST_EMBEDDINGS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "caharvest/labels.hpp"

namespace caharvest {

class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  explicit EmbeddingVector(std::vector<double> values)
      : values_(std::move(values)) {}
  static EmbeddingVector zeros(std::size_t dimension) {
    return EmbeddingVector(std::vector<double>(dimension, 0.0));
  }

  std::size_t dimension() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

 private:
  std::vector<double> values_;
};

double dot(const EmbeddingVector& a, const EmbeddingVector& b);
double l2_norm(const EmbeddingVector& v);

// dot(a,b)/(|a||b|), clamped to [-1,1]. Throws SimilarityError on a
// dimension mismatch or a zero-norm argument.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

// Componentwise mean. Throws PoolingError on empty input or mixed
// dimensions.
EmbeddingVector mean_pool(std::span<const EmbeddingVector> windows);

inline constexpr std::size_t kDefaultFallbackDimension = 256;

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

// Deterministic bag-of-tokens embedder. Each normalized token t adds
// sign(t) to bucket fnv1a64(t) % dimension, where sign(t) is -1 when bit 63
// of the hash is set and +1 otherwise; the result is L2-normalized (left as
// is if every bucket cancels to zero). Throws EmbeddingError for
// dimension < 8 or text without tokens.
EmbeddingVector fallback_hash_embed(std::string_view text,
                                    std::size_t dimension = kDefaultFallbackDimension);

// In-memory id -> vector map with a shared dimension.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  EmbeddingStore(std::size_t dimension, std::string provenance)
      : dimension_(dimension), provenance_(std::move(provenance)) {}

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return entries_.size(); }
  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

  // Throws EmbeddingError on dimension mismatch, empty id, or duplicate id.
  void insert(std::string id, EmbeddingVector v);

  bool contains(std::string_view id) const;
  // Throws LookupError naming the id when absent.
  const EmbeddingVector& at(std::string_view id) const;

  // Entries in id order (byte-lexicographic).
  const std::map<std::string, EmbeddingVector, std::less<>>& entries() const {
    return entries_;
  }

 private:
  std::size_t dimension_ = 0;
  std::string provenance_;
  std::map<std::string, EmbeddingVector, std::less<>> entries_;
};

// Binary store, little-endian:
//   "CAES" | version u16 = 1 | dimension u32 | count u64 |
//   count x ( id_len u16 | id bytes | dimension x f32 )
// Records are sorted by id; readers reject unsorted or duplicate ids.
// Values are narrowed to f32 on write.
inline constexpr std::uint16_t kStoreFormatVersion = 1;

void write_embedding_store(std::ostream& out, const EmbeddingStore& store);
EmbeddingStore read_embedding_store(std::istream& in, std::string provenance);

void save_embedding_store(const EmbeddingStore& store,
                          const std::filesystem::path& path);
EmbeddingStore load_embedding_store(const std::filesystem::path& path);

// Nearest-centroid model over an arbitrary label enum (five-way or binary).
template <class Label>
struct BasicCentroidModel {
  std::map<Label, EmbeddingVector> centroids;
  std::map<Label, std::size_t> class_counts;

  bool empty() const { return centroids.empty(); }
  std::size_t dimension() const {
    return centroids.empty() ? 0 : centroids.begin()->second.dimension();
  }
};

using CentroidModel = BasicCentroidModel<ParticipationLabel>;
using BinaryCentroidModel = BasicCentroidModel<BinaryLabel>;

template <class Label>
struct BasicCentroidDecision {
  Label label{};
  double similarity = 0.0;
};

using CentroidDecision = BasicCentroidDecision<ParticipationLabel>;
using BinaryCentroidDecision = BasicCentroidDecision<BinaryLabel>;

// Per-class arithmetic mean of the raw vectors. Throws ModelError on empty
// input or mixed dimensions.
template <class Label>
BasicCentroidModel<Label> compute_centroids(
    std::span<const std::pair<EmbeddingVector, Label>> labeled);

// Argmax of cosine similarity over the model's classes; ties go to the
// class that comes first in enum order. Throws DegenerateModelError naming
// the class when a centroid has zero norm, ModelError for an empty model,
// and SimilarityError for a zero query.
template <class Label>
BasicCentroidDecision<Label> classify_centroid(
    const EmbeddingVector& v, const BasicCentroidModel<Label>& model);

// Model files are line-delimited records
//   {"label": ..., "count": n, "centroid": [reals...]}
// with reals in round-trip precision. A model whose labels are
// participation/none is binary.
void write_centroid_model(std::ostream& out, const CentroidModel& model);
void write_centroid_model(std::ostream& out, const BinaryCentroidModel& model);

// Reads either kind; exactly one of the two outputs is filled.
struct LoadedCentroidModel {
  bool binary = false;
  CentroidModel multiclass;
  BinaryCentroidModel binary_model;
};
LoadedCentroidModel read_centroid_model(std::istream& in);
LoadedCentroidModel load_centroid_model(const std::filesystem::path& path);

}  // namespace caharvest

#endif  // CAHARVEST_EMBEDDINGS_HPP_
