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

#include "caharvest/embeddings.hpp"

#include <algorithm>
#include <cmath>

#include "caharvest/error.hpp"
#include "caharvest/records.hpp"
#include "caharvest/text.hpp"

namespace caharvest {

double dot(const EmbeddingVector& a, const EmbeddingVector& b) {
  double sum = 0.0;
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) sum += av[i] * bv[i];
  return sum;
}

double l2_norm(const EmbeddingVector& v) { return std::sqrt(dot(v, v)); }

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dimension() != b.dimension()) {
    throw SimilarityError("cosine similarity of vectors with dimensions " +
                          std::to_string(a.dimension()) + " and " +
                          std::to_string(b.dimension()));
  }
  const auto av = a.values();
  const auto bv = b.values();
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < av.size(); ++i) {
    ab += av[i] * bv[i];
    aa += av[i] * av[i];
    bb += bv[i] * bv[i];
  }
  if (aa == 0.0 || bb == 0.0) {
    throw SimilarityError("cosine similarity with a zero-norm vector");
  }
  // sqrt(aa * bb) rather than sqrt(aa) * sqrt(bb): for a == b this is exactly
  // aa, so identical vectors score exactly 1.
  return std::clamp(ab / std::sqrt(aa * bb), -1.0, 1.0);
}

EmbeddingVector mean_pool(std::span<const EmbeddingVector> windows) {
  if (windows.empty()) throw PoolingError("mean pooling of zero windows");
  const std::size_t dim = windows.front().dimension();
  std::vector<double> sum(dim, 0.0);
  for (const auto& w : windows) {
    if (w.dimension() != dim) {
      throw PoolingError("mean pooling over mixed dimensions " +
                         std::to_string(dim) + " and " +
                         std::to_string(w.dimension()));
    }
    for (std::size_t i = 0; i < dim; ++i) sum[i] += w[i];
  }
  const auto n = static_cast<double>(windows.size());
  for (double& x : sum) x /= n;
  return EmbeddingVector(std::move(sum));
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

EmbeddingVector fallback_hash_embed(std::string_view text,
                                    std::size_t dimension) {
  if (dimension < 8) {
    throw EmbeddingError("fallback embedding dimension must be >= 8, got " +
                         std::to_string(dimension));
  }
  std::vector<double> v(dimension, 0.0);
  std::size_t tokens = 0;
  TokenScanner scanner(text);
  TokenSpan span;
  std::string token;
  while (scanner.next(span, token)) {
    const std::uint64_t h = fnv1a64(token);
    v[h % dimension] += (h >> 63) != 0 ? -1.0 : 1.0;
    ++tokens;
  }
  if (tokens == 0) throw EmbeddingError("cannot embed text without tokens");
  EmbeddingVector out(std::move(v));
  const double norm = l2_norm(out);
  if (norm > 0.0) {
    for (double& x : out.values()) x /= norm;
  }
  return out;
}

void EmbeddingStore::insert(std::string id, EmbeddingVector v) {
  if (id.empty()) throw EmbeddingError("embedding id must be nonempty");
  if (entries_.empty() && dimension_ == 0) dimension_ = v.dimension();
  if (v.dimension() != dimension_) {
    throw EmbeddingError("vector for '" + id + "' has dimension " +
                         std::to_string(v.dimension()) + ", store has " +
                         std::to_string(dimension_));
  }
  auto [it, inserted] = entries_.emplace(std::move(id), std::move(v));
  if (!inserted) throw EmbeddingError("duplicate embedding id '" + it->first + "'");
}

bool EmbeddingStore::contains(std::string_view id) const {
  return entries_.find(id) != entries_.end();
}

const EmbeddingVector& EmbeddingStore::at(std::string_view id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) {
    throw LookupError("no embedding for id '" + std::string(id) + "'");
  }
  return it->second;
}

template <class Label>
BasicCentroidModel<Label> compute_centroids(
    std::span<const std::pair<EmbeddingVector, Label>> labeled) {
  if (labeled.empty()) throw ModelError("cannot compute centroids of no vectors");
  const std::size_t dim = labeled.front().first.dimension();
  BasicCentroidModel<Label> model;
  for (const auto& [vec, label] : labeled) {
    if (vec.dimension() != dim) {
      throw ModelError("training vectors have mixed dimensions " +
                       std::to_string(dim) + " and " +
                       std::to_string(vec.dimension()));
    }
    auto [it, fresh] = model.centroids.try_emplace(label, EmbeddingVector::zeros(dim));
    auto sum = it->second.values();
    const auto v = vec.values();
    for (std::size_t i = 0; i < dim; ++i) sum[i] += v[i];
    ++model.class_counts[label];
  }
  for (auto& [label, centroid] : model.centroids) {
    const auto n = static_cast<double>(model.class_counts[label]);
    for (double& x : centroid.values()) x /= n;
  }
  return model;
}

template <class Label>
BasicCentroidDecision<Label> classify_centroid(
    const EmbeddingVector& v, const BasicCentroidModel<Label>& model) {
  if (model.empty()) throw ModelError("centroid model has no classes");
  BasicCentroidDecision<Label> best;
  bool first = true;
  for (const auto& [label, centroid] : model.centroids) {
    if (dot(centroid, centroid) == 0.0) {
      throw DegenerateModelError("centroid for class '" +
                                 std::string(to_string(label)) +
                                 "' has zero norm");
    }
    const double sim = cosine_similarity(v, centroid);
    if (first || sim > best.similarity) {
      best = {label, sim};
      first = false;
    }
  }
  return best;
}

template CentroidModel compute_centroids<ParticipationLabel>(
    std::span<const std::pair<EmbeddingVector, ParticipationLabel>>);
template BinaryCentroidModel compute_centroids<BinaryLabel>(
    std::span<const std::pair<EmbeddingVector, BinaryLabel>>);
template CentroidDecision classify_centroid<ParticipationLabel>(
    const EmbeddingVector&, const CentroidModel&);
template BinaryCentroidDecision classify_centroid<BinaryLabel>(
    const EmbeddingVector&, const BinaryCentroidModel&);

namespace {

template <class Label>
void write_model(std::ostream& out, const BasicCentroidModel<Label>& model) {
  for (const auto& [label, centroid] : model.centroids) {
    OrderedRecord r;
    r["label"] = to_string(label);
    r["count"] = model.class_counts.at(label);
    r["centroid"] = std::vector<double>(centroid.values().begin(),
                                        centroid.values().end());
    write_record(out, r);
  }
}

}  // namespace

void write_centroid_model(std::ostream& out, const CentroidModel& model) {
  write_model(out, model);
}

void write_centroid_model(std::ostream& out, const BinaryCentroidModel& model) {
  write_model(out, model);
}

LoadedCentroidModel read_centroid_model(std::istream& in) {
  struct Row {
    std::string label;
    std::size_t count;
    EmbeddingVector centroid;
    std::size_t line;
  };
  std::vector<Row> rows;
  for_each_record(in, [&](const Record& r, std::size_t line) {
    Row row;
    row.label = require_string(r, "label", line);
    row.line = line;
    const auto count = r.find("count");
    if (count == r.end() || !count->is_number_unsigned() || count->get<std::size_t>() == 0) {
      throw FormatError("line " + std::to_string(line) +
                            ": 'count' must be a positive integer",
                        line);
    }
    row.count = count->get<std::size_t>();
    const auto values = r.find("centroid");
    if (values == r.end() || !values->is_array() || values->empty()) {
      throw FormatError("line " + std::to_string(line) +
                            ": 'centroid' must be a nonempty array",
                        line);
    }
    std::vector<double> v;
    for (const auto& x : *values) {
      if (!x.is_number()) {
        throw FormatError("line " + std::to_string(line) +
                              ": non-numeric centroid entry",
                          line);
      }
      v.push_back(x.get<double>());
    }
    row.centroid = EmbeddingVector(std::move(v));
    rows.push_back(std::move(row));
  });
  if (rows.empty()) throw ModelError("centroid model file has no classes");

  LoadedCentroidModel loaded;
  loaded.binary = std::any_of(rows.begin(), rows.end(), [](const Row& r) {
    return r.label == "participation";
  });
  const std::size_t dim = rows.front().centroid.dimension();
  for (auto& row : rows) {
    if (row.centroid.dimension() != dim) {
      throw FormatError("line " + std::to_string(row.line) +
                            ": centroid dimension differs from first class",
                        row.line);
    }
    auto fail = [&] {
      throw FormatError("line " + std::to_string(row.line) + ": label '" +
                            row.label + "' does not fit a " +
                            (loaded.binary ? "binary" : "five-way") + " model",
                        row.line);
    };
    if (loaded.binary) {
      auto label = parse_binary_label(row.label);
      if (!label) fail();
      if (!loaded.binary_model.centroids.emplace(*label, std::move(row.centroid)).second) fail();
      loaded.binary_model.class_counts[*label] = row.count;
    } else {
      auto label = parse_participation_label(row.label);
      if (!label) fail();
      if (!loaded.multiclass.centroids.emplace(*label, std::move(row.centroid)).second) fail();
      loaded.multiclass.class_counts[*label] = row.count;
    }
  }
  return loaded;
}

LoadedCentroidModel load_centroid_model(const std::filesystem::path& path) {
  auto in = open_input_file(path);
  return read_centroid_model(in);
}

}  // namespace caharvest
