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

// Community-level aggregates over classified comments.

#ifndef CAHARVEST_ANALYTICS_HPP_
#define CAHARVEST_ANALYTICS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "caharvest/embeddings.hpp"
#include "caharvest/labels.hpp"
#include "caharvest/pipeline.hpp"

namespace caharvest {

struct ClassifiedComment {
  std::string community;
  bool has_keywords = false;
  Prediction prediction;
};

struct CommunityStats {
  std::string community;
  std::size_t n_comments = 0;
  double keyword_fraction = 0.0;
  double participation_fraction = 0.0;
  // Over all classified comments, None included; sums to 1.
  std::map<ParticipationLabel, double> level_fractions;
};

// One entry per community, sorted by name.
std::vector<CommunityStats> community_stats(
    std::span<const ClassifiedComment> comments);

inline constexpr std::size_t kDefaultMinComments = 100;

struct CommunityRanking {
  std::vector<CommunityStats> by_keywords;       // descending keyword_fraction
  std::vector<CommunityStats> by_participation;  // descending participation_fraction
  std::size_t excluded = 0;                      // below min_comments
  // Between the two fractions over ranked communities; absent when fewer
  // than two communities qualify or a fraction is constant.
  std::optional<double> spearman;
};

// Ties in either ranking are broken by community name.
CommunityRanking rank_communities(std::span<const CommunityStats> stats,
                                  std::size_t min_comments = kDefaultMinComments);

// 1-based ranks, ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of average ranks. Throws CorrelationError on length
// mismatch, fewer than two values, or zero rank variance.
double spearman(std::span<const double> x, std::span<const double> y);

struct CrossTabRow {
  std::string category;
  std::size_t participation = 0;
  std::size_t none = 0;
  double participation_fraction = 0.0;
  double none_fraction = 0.0;
};

// Rows sorted by category; only categories that occur appear. Throws
// LookupError naming a prediction whose sample has no category.
std::vector<CrossTabRow> crosstab(
    std::span<const Prediction> predictions,
    const std::map<std::string, std::string, std::less<>>& categories);

enum class Axis { kAge, kGender, kPartisanship };

std::string_view to_string(Axis axis);
std::optional<Axis> parse_axis(std::string_view s);

struct DimensionScore {
  std::string community;
  Axis axis = Axis::kAge;
  double score = 0.0;
};

// Cosine of a community vector with a social-dimension axis.
double dimension_score(const EmbeddingVector& community_vector,
                       const EmbeddingVector& axis_vector);

inline constexpr std::size_t kDefaultBins = 5;

struct QuantileBin {
  std::size_t index = 0;
  double lower = 0.0;  // [lower, upper); the last bin is closed
  double upper = 0.0;
  std::optional<double> mean_fraction;  // absent for an empty bin
  std::size_t n_communities = 0;
  std::vector<std::string> communities;
};

// Sample quantile at p with linear interpolation between order statistics
// (position p * (n - 1)), evaluated at p = i/k for i = 0..k.
std::vector<double> quantile_edges(std::span<const double> sorted_scores,
                                   std::size_t k);

// Bins communities by score at the quantile edges and averages their
// participation fractions per bin. Throws BinningError when k < 2, there are
// fewer than k communities, or k exceeds the number of distinct scores;
// LookupError for a community missing from `fractions`.
std::vector<QuantileBin> quantile_bins(
    std::span<const std::pair<std::string, double>> scores, std::size_t k,
    const std::map<std::string, double, std::less<>>& fractions);

}  // namespace caharvest

#endif  // CAHARVEST_ANALYTICS_HPP_
