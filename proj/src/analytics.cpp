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

#include "caharvest/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "caharvest/error.hpp"

namespace caharvest {
namespace {

struct Tally {
  std::size_t n = 0;
  std::size_t keywords = 0;
  std::array<std::size_t, kAllLabels.size()> labels{};
};

std::vector<CommunityStats> ranked(std::vector<CommunityStats> stats,
                                   double CommunityStats::*key) {
  std::sort(stats.begin(), stats.end(),
            [key](const CommunityStats& a, const CommunityStats& b) {
              if (a.*key != b.*key) return a.*key > b.*key;
              return a.community < b.community;
            });
  return stats;
}

bool constant(std::span<const double> v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

}  // namespace

std::vector<CommunityStats> community_stats(
    std::span<const ClassifiedComment> comments) {
  std::map<std::string, Tally> tallies;
  for (const auto& c : comments) {
    Tally& t = tallies[c.community];
    ++t.n;
    if (c.has_keywords) ++t.keywords;
    ++t.labels[static_cast<std::size_t>(c.prediction.final_label())];
  }
  std::vector<CommunityStats> out;
  out.reserve(tallies.size());
  for (const auto& [community, t] : tallies) {
    CommunityStats s;
    s.community = community;
    s.n_comments = t.n;
    const double n = static_cast<double>(t.n);
    s.keyword_fraction = static_cast<double>(t.keywords) / n;
    std::size_t participation = 0;
    for (ParticipationLabel l : kAllLabels) {
      const std::size_t count = t.labels[static_cast<std::size_t>(l)];
      s.level_fractions[l] = static_cast<double>(count) / n;
      if (is_participation(l)) participation += count;
    }
    s.participation_fraction = static_cast<double>(participation) / n;
    out.push_back(std::move(s));
  }
  return out;
}

CommunityRanking rank_communities(std::span<const CommunityStats> stats,
                                  std::size_t min_comments) {
  std::vector<CommunityStats> kept;
  CommunityRanking r;
  for (const auto& s : stats) {
    if (s.n_comments < min_comments) {
      ++r.excluded;
    } else {
      kept.push_back(s);
    }
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.community < b.community;
  });
  std::vector<double> keywords;
  std::vector<double> participation;
  for (const auto& s : kept) {
    keywords.push_back(s.keyword_fraction);
    participation.push_back(s.participation_fraction);
  }
  if (kept.size() >= 2 && !constant(keywords) && !constant(participation)) {
    r.spearman = spearman(keywords, participation);
  }
  r.by_keywords = ranked(kept, &CommunityStats::keyword_fraction);
  r.by_participation = ranked(std::move(kept), &CommunityStats::participation_fraction);
  return r;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 share ranks i+1..j; their mean is (i + j + 1) / 2.
    const double rank = static_cast<double>(i + j + 1) / 2.0;
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = rank;
    i = j;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw CorrelationError("spearman needs equal lengths, got " +
                           std::to_string(x.size()) + " and " +
                           std::to_string(y.size()));
  }
  if (x.size() < 2) throw CorrelationError("spearman needs at least two values");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  // Average ranks always have mean (n + 1) / 2.
  const double mean = static_cast<double>(x.size() + 1) / 2.0;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw CorrelationError("spearman is undefined for a constant input");
  }
  return sxy / std::sqrt(sxx * syy);
}

std::vector<CrossTabRow> crosstab(
    std::span<const Prediction> predictions,
    const std::map<std::string, std::string, std::less<>>& categories) {
  std::map<std::string, CrossTabRow> rows;
  for (const auto& p : predictions) {
    auto it = categories.find(p.sample_id);
    if (it == categories.end()) {
      throw LookupError("sample '" + p.sample_id + "' has no category");
    }
    CrossTabRow& row = rows[it->second];
    row.category = it->second;
    if (p.stage1 == BinaryLabel::Participation) {
      ++row.participation;
    } else {
      ++row.none;
    }
  }
  std::vector<CrossTabRow> out;
  out.reserve(rows.size());
  for (auto& [category, row] : rows) {
    const double n = static_cast<double>(row.participation + row.none);
    row.participation_fraction = static_cast<double>(row.participation) / n;
    row.none_fraction = static_cast<double>(row.none) / n;
    out.push_back(std::move(row));
  }
  return out;
}

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::kAge: return "age";
    case Axis::kGender: return "gender";
    case Axis::kPartisanship: return "partisanship";
  }
  return "age";
}

std::optional<Axis> parse_axis(std::string_view s) {
  for (Axis a : {Axis::kAge, Axis::kGender, Axis::kPartisanship}) {
    if (to_string(a) == s) return a;
  }
  return std::nullopt;
}

double dimension_score(const EmbeddingVector& community_vector,
                       const EmbeddingVector& axis_vector) {
  return cosine_similarity(community_vector, axis_vector);
}

std::vector<double> quantile_edges(std::span<const double> sorted_scores,
                                   std::size_t k) {
  if (k == 0) throw BinningError("quantile edges need k >= 1");
  if (sorted_scores.empty()) throw BinningError("quantile edges need scores");
  const std::size_t n = sorted_scores.size();
  std::vector<double> edges(k + 1);
  for (std::size_t i = 0; i <= k; ++i) {
    // Position (n - 1) * i / k, split exactly into integer and fraction.
    const std::size_t num = (n - 1) * i;
    const std::size_t lo = num / k;
    const std::size_t rem = num % k;
    double edge = sorted_scores[lo];
    if (rem != 0) {
      const double frac = static_cast<double>(rem) / static_cast<double>(k);
      edge += frac * (sorted_scores[lo + 1] - sorted_scores[lo]);
    }
    edges[i] = edge;
  }
  return edges;
}

std::vector<QuantileBin> quantile_bins(
    std::span<const std::pair<std::string, double>> scores, std::size_t k,
    const std::map<std::string, double, std::less<>>& fractions) {
  if (k < 2) throw BinningError("need at least 2 bins, got " + std::to_string(k));
  if (scores.size() < k) {
    throw BinningError("need at least " + std::to_string(k) +
                       " communities, got " + std::to_string(scores.size()));
  }
  std::vector<std::pair<std::string, double>> items(scores.begin(), scores.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });
  std::set<double> distinct;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!std::isfinite(items[i].second)) {
      throw BinningError("score for '" + items[i].first + "' is not finite");
    }
    distinct.insert(items[i].second);
  }
  {
    std::set<std::string_view> names;
    for (const auto& [name, score] : items) {
      if (!names.insert(name).second) {
        throw BinningError("community '" + name + "' is scored twice");
      }
    }
  }
  if (distinct.size() < k) {
    throw BinningError("only " + std::to_string(distinct.size()) +
                       " distinct scores for " + std::to_string(k) + " bins");
  }

  std::vector<double> sorted;
  sorted.reserve(items.size());
  for (const auto& [name, score] : items) sorted.push_back(score);
  const auto edges = quantile_edges(sorted, k);

  std::vector<QuantileBin> bins(k);
  std::vector<double> sums(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    bins[i].index = i;
    bins[i].lower = edges[i];
    bins[i].upper = edges[i + 1];
  }
  for (const auto& [name, score] : items) {
    auto f = fractions.find(name);
    if (f == fractions.end()) {
      throw LookupError("community '" + name + "' has no participation fraction");
    }
    // Bin index = number of interior edges <= score (bins are left-closed).
    const auto first = edges.begin() + 1;
    const auto last = edges.end() - 1;
    const auto b = static_cast<std::size_t>(std::upper_bound(first, last, score) - first);
    bins[b].communities.push_back(name);
    ++bins[b].n_communities;
    sums[b] += f->second;
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (bins[i].n_communities > 0) {
      bins[i].mean_fraction = sums[i] / static_cast<double>(bins[i].n_communities);
    }
  }
  return bins;
}

}  // namespace caharvest
