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

#include "caharvest/annotation.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "caharvest/error.hpp"

namespace caharvest {
namespace {

ParticipationLabel require_label(const Record& r, std::string_view key,
                                 std::size_t line) {
  const std::string name = require_string(r, key, line);
  auto label = parse_participation_label(name);
  if (!label) {
    throw FormatError("line " + std::to_string(line) + ": unknown label '" +
                          name + "' in field '" + std::string(key) + "'",
                      line);
  }
  return *label;
}

constexpr std::size_t kNumLabels = kAllLabels.size();

std::size_t index_of(ParticipationLabel label) {
  return static_cast<std::size_t>(label);
}

}  // namespace

std::vector<AnnotationRecord> read_annotations(std::istream& in) {
  std::vector<AnnotationRecord> out;
  for_each_record(in, [&](const Record& r, std::size_t line) {
    AnnotationRecord a;
    a.sample_id = require_string(r, "sample_id", line);
    a.worker_id = require_string(r, "worker_id", line);
    a.label = require_label(r, "label", line);
    a.is_control = require_bool(r, "is_control", line);
    const bool has_gold = r.contains("gold") && !r["gold"].is_null();
    if (has_gold != a.is_control) {
      throw FormatError("line " + std::to_string(line) +
                            ": 'gold' must be present exactly for control items",
                        line);
    }
    if (has_gold) a.gold = require_label(r, "gold", line);
    out.push_back(std::move(a));
  });
  return out;
}

std::map<std::string, WorkerScore> score_workers(
    std::span<const AnnotationRecord> records) {
  std::map<std::string, WorkerScore> scores;
  for (const auto& r : records) {
    WorkerScore& w = scores[r.worker_id];
    if (!r.is_control || !r.gold) continue;
    ++w.controls_seen;
    if (r.label == *r.gold) ++w.controls_passed;
  }
  for (auto& [worker, w] : scores) {
    if (w.controls_seen == 0) continue;
    w.pass_rate = static_cast<double>(w.controls_passed) /
                  static_cast<double>(w.controls_seen);
    const std::size_t failed = w.controls_seen - w.controls_passed;
    w.discard = 2 * failed > w.controls_seen;
  }
  return scores;
}

std::set<std::string> retained_workers(
    const std::map<std::string, WorkerScore>& scores) {
  std::set<std::string> out;
  for (const auto& [worker, w] : scores) {
    if (!w.discard) out.insert(worker);
  }
  return out;
}

std::string_view to_string(RejectionReason reason) {
  switch (reason) {
    case RejectionReason::kTooFewAnnotators: return "too-few-annotators";
    case RejectionReason::kNoClearMajority: return "no-clear-majority";
  }
  return "no-clear-majority";
}

Aggregation aggregate_majority(std::span<const AnnotationRecord> records,
                               const std::set<std::string>& retained) {
  Aggregation result;
  std::vector<std::string> order;
  std::unordered_map<std::string, std::array<std::size_t, kNumLabels>> votes;
  std::unordered_set<std::string> controls;

  for (const auto& r : records) {
    if (r.is_control) {
      controls.insert(r.sample_id);
      continue;
    }
    auto [it, fresh] = votes.try_emplace(r.sample_id);
    if (fresh) {
      it->second.fill(0);
      order.push_back(r.sample_id);
    }
    if (!retained.contains(r.worker_id)) {
      ++result.log.filtered_annotations;
      continue;
    }
    ++it->second[index_of(r.label)];
  }
  result.log.control_samples = controls.size();

  for (const auto& id : order) {
    const auto& v = votes[id];
    std::size_t total = 0;
    for (std::size_t c : v) total += c;
    if (total < 2) {
      ++result.log.too_few_annotators;
      result.log.rejected.emplace_back(id, RejectionReason::kTooFewAnnotators);
      continue;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < kNumLabels; ++i) {
      if (v[i] > v[best]) best = i;
    }
    std::size_t runner_up = 0;
    for (std::size_t i = 0; i < kNumLabels; ++i) {
      if (i != best) runner_up = std::max(runner_up, v[i]);
    }
    if (runner_up == v[best]) {
      ++result.log.no_clear_majority;
      result.log.rejected.emplace_back(id, RejectionReason::kNoClearMajority);
      continue;
    }
    result.samples.push_back(
        {id, kAllLabels[best], total, v[best] - runner_up});
  }
  return result;
}

double krippendorff_alpha(std::span<const AnnotationRecord> records) {
  std::unordered_map<std::string, std::array<std::size_t, kNumLabels>> units;
  for (const auto& r : records) {
    auto [it, fresh] = units.try_emplace(r.sample_id);
    if (fresh) it->second.fill(0);
    ++it->second[index_of(r.label)];
  }

  // Coincidence matrix: each unit with m values contributes its ordered
  // value pairs weighted by 1 / (m - 1).
  std::array<std::array<double, kNumLabels>, kNumLabels> o{};
  for (const auto& [id, counts] : units) {
    std::size_t m = 0;
    for (std::size_t c : counts) m += c;
    if (m < 2) continue;
    const double w = 1.0 / static_cast<double>(m - 1);
    for (std::size_t c = 0; c < kNumLabels; ++c) {
      for (std::size_t k = 0; k < kNumLabels; ++k) {
        const double nc = static_cast<double>(counts[c]);
        const double nk = static_cast<double>(counts[k]);
        o[c][k] += (c == k ? nc * (nc - 1.0) : nc * nk) * w;
      }
    }
  }

  std::array<double, kNumLabels> marginals{};
  double n = 0.0;
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    for (std::size_t k = 0; k < kNumLabels; ++k) marginals[c] += o[c][k];
    n += marginals[c];
  }
  if (n == 0.0) {
    throw AgreementError("agreement needs at least one unit with two annotations");
  }

  double observed = 0.0;  // sum of off-diagonal coincidences
  double expected = 0.0;  // sum of n_c * n_k over c != k
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    for (std::size_t k = 0; k < kNumLabels; ++k) {
      if (c == k) continue;
      observed += o[c][k];
      expected += marginals[c] * marginals[k];
    }
  }
  if (expected == 0.0) return 1.0;
  return 1.0 - (n - 1.0) * observed / expected;
}

std::vector<LabeledSnippet> read_labeled_snippets(std::istream& in) {
  std::vector<LabeledSnippet> out;
  for_each_record(in, [&](const Record& r, std::size_t line) {
    out.push_back({snippet_from_record(r, line), require_label(r, "label", line)});
  });
  return out;
}

OrderedRecord to_record(const LabeledSnippet& s) {
  OrderedRecord r = to_record(s.snippet);
  r["label"] = to_string(s.label);
  return r;
}

std::map<std::string, ParticipationLabel> read_labels(std::istream& in) {
  std::map<std::string, ParticipationLabel> out;
  for_each_record(in, [&](const Record& r, std::size_t line) {
    std::string id = r.contains("sample_id") ? require_string(r, "sample_id", line)
                                             : require_string(r, "comment_id", line);
    const ParticipationLabel label = require_label(r, "label", line);
    if (!out.emplace(id, label).second) {
      throw FormatError("duplicate sample_id '" + id + "' at line " +
                            std::to_string(line),
                        line);
    }
  });
  return out;
}

std::vector<LabeledSnippet> extend_reddit_informed(
    const LabeledSnippet& anchor, std::span<const Snippet> thread,
    const EmbeddingStore& vectors, const ExtensionOptions& options) {
  if (thread.empty()) return {};
  const EmbeddingVector& anchor_vec = vectors.at(anchor.snippet.comment_id);

  std::vector<std::pair<double, const Snippet*>> candidates;
  for (const auto& s : thread) {
    if (s.thread_id != anchor.snippet.thread_id) {
      throw Error("snippet '" + s.comment_id + "' is from thread '" +
                  s.thread_id + "', not the anchor's thread '" +
                  anchor.snippet.thread_id + "'");
    }
    if (s.comment_id == anchor.snippet.comment_id) continue;
    const double sim = cosine_similarity(anchor_vec, vectors.at(s.comment_id));
    if (sim > options.bot_threshold) continue;
    candidates.emplace_back(sim, &s);
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second->comment_id < b.second->comment_id;
  });

  // ceil(top_fraction * n), ignoring representation noise such as
  // 0.05 * 60 landing a hair above 3.
  const double raw = options.top_fraction * static_cast<double>(candidates.size());
  double quota = std::floor(raw);
  if (raw - quota > 1e-9) quota += 1.0;
  const auto take = std::min(candidates.size(), static_cast<std::size_t>(quota));

  std::vector<LabeledSnippet> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    out.push_back({*candidates[i].second, anchor.label});
  }
  return out;
}

std::vector<SyntheticRecord> read_synthetic(std::istream& in) {
  std::vector<SyntheticRecord> out;
  for_each_record(in, [&](const Record& r, std::size_t line) {
    SyntheticRecord s;
    s.sample_id = require_string(r, "sample_id", line);
    s.anchor_id = require_string(r, "anchor_id", line);
    s.label = require_label(r, "label", line);
    s.text = require_string(r, "text", line);
    for (std::size_t i = 0; i < kValidityChecks.size(); ++i) {
      auto it = r.find(kValidityChecks[i]);
      if (it == r.end() || it->is_null()) continue;  // unreviewed
      s.checks[i] = require_bool(r, kValidityChecks[i], line);
    }
    out.push_back(std::move(s));
  });
  return out;
}

std::string_view to_string(VariantName name) {
  switch (name) {
    case VariantName::kCS: return "CS";
    case VariantName::kCSSynIE: return "CS+SynI/E";
    case VariantName::kCSSynA: return "CS+SynA";
    case VariantName::kExt: return "Ext";
    case VariantName::kExtSynIE: return "Ext+SynI/E";
  }
  return "CS";
}

std::optional<VariantName> parse_variant(std::string_view s) {
  for (VariantName v : {VariantName::kCS, VariantName::kCSSynIE,
                        VariantName::kCSSynA, VariantName::kExt,
                        VariantName::kExtSynIE}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

std::map<ParticipationLabel, std::size_t> label_counts(
    std::span<const LabeledSnippet> samples) {
  std::map<ParticipationLabel, std::size_t> counts;
  for (ParticipationLabel l : kAllLabels) counts[l] = 0;
  for (const auto& s : samples) ++counts[s.label];
  return counts;
}

TrainingSetVariant merge_training_sets(std::span<const LabeledSnippet> cs,
                                       std::span<const SyntheticRecord> synthetic,
                                       std::span<const LabeledSnippet> extension,
                                       std::string_view variant) {
  const auto name = parse_variant(variant);
  if (!name) {
    throw VariantError("unknown training-set variant '" + std::string(variant) +
                       "' (expected CS, CS+SynI/E, CS+SynA, Ext or Ext+SynI/E)");
  }

  TrainingSetVariant out;
  out.name = *name;
  std::unordered_set<std::string> ids;
  auto add = [&](const LabeledSnippet& s) {
    if (!ids.insert(s.snippet.comment_id).second) {
      throw VariantError("sample id '" + s.snippet.comment_id +
                         "' appears twice in variant " + std::string(variant));
    }
    out.samples.push_back(s);
  };
  auto add_synthetic = [&](auto&& keep_label) {
    for (const auto& r : synthetic) {
      if (!r.valid() || !keep_label(r.label)) continue;
      LabeledSnippet s;
      s.snippet.comment_id = r.sample_id;
      s.snippet.text = r.text;
      s.label = r.label;
      add(s);
    }
  };
  auto minority = [](ParticipationLabel l) {
    return l == ParticipationLabel::Intention || l == ParticipationLabel::Execution;
  };

  for (const auto& s : cs) add(s);
  switch (*name) {
    case VariantName::kCS:
      break;
    case VariantName::kCSSynIE:
      add_synthetic(minority);
      break;
    case VariantName::kCSSynA:
      add_synthetic([](ParticipationLabel l) {
        return l != ParticipationLabel::ProblemSolution;
      });
      break;
    case VariantName::kExt:
      for (const auto& s : extension) add(s);
      break;
    case VariantName::kExtSynIE:
      for (const auto& s : extension) add(s);
      add_synthetic(minority);
      break;
  }
  out.counts = label_counts(out.samples);
  return out;
}

}  // namespace caharvest
