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

// Brute-force nearest centroid: means by plain summation, cosine from
// scratch, labels scanned in the fixed order None, problem-solution,
// call-to-action, intention, execution; the first maximum wins.

#ifndef CAHARVEST_TESTS_ORACLES_CENTROID_ORACLE_HPP_
#define CAHARVEST_TESTS_ORACLES_CENTROID_ORACLE_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

inline double cosine(const Vec& a, const Vec& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  double c = ab / std::sqrt(aa * bb);
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return c;
}

// Class index 0..4 per sample; returns per-class means (absent if unused).
inline std::vector<std::optional<Vec>> class_means(
    const std::vector<std::pair<Vec, int>>& labeled, int classes) {
  std::vector<std::optional<Vec>> sums(static_cast<std::size_t>(classes));
  std::vector<std::size_t> counts(static_cast<std::size_t>(classes), 0);
  for (const auto& [v, c] : labeled) {
    auto& s = sums[static_cast<std::size_t>(c)];
    if (!s) s = Vec(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) (*s)[i] += v[i];
    ++counts[static_cast<std::size_t>(c)];
  }
  for (std::size_t c = 0; c < sums.size(); ++c) {
    if (!sums[c]) continue;
    for (double& x : *sums[c]) x /= static_cast<double>(counts[c]);
  }
  return sums;
}

inline int argmax_class(const Vec& query, const std::vector<std::optional<Vec>>& means) {
  int best = -1;
  double best_sim = 0.0;
  for (std::size_t c = 0; c < means.size(); ++c) {
    if (!means[c]) continue;
    const double sim = cosine(query, *means[c]);
    if (best < 0 || sim > best_sim) {
      best = static_cast<int>(c);
      best_sim = sim;
    }
  }
  return best;
}

}  // namespace oracle

#endif  // CAHARVEST_TESTS_ORACLES_CENTROID_ORACLE_HPP_
