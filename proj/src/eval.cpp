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

#include "caharvest/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "caharvest/error.hpp"
#include "caharvest/kernels.hpp"

namespace caharvest {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

template <class Label, std::size_t N>
ConfusionMatrix enum_confusion(std::span<const Label> gold,
                               std::span<const Label> pred,
                               const std::array<Label, N>& order) {
  if (gold.size() != pred.size()) {
    throw EvalError("gold has " + std::to_string(gold.size()) +
                    " labels but predictions have " + std::to_string(pred.size()));
  }
  ConfusionMatrix m;
  for (Label l : order) m.labels.emplace_back(to_string(l));
  m.counts.assign(N, std::vector<std::size_t>(N, 0));
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++m.counts[static_cast<std::size_t>(gold[i])][static_cast<std::size_t>(pred[i])];
  }
  return m;
}

}  // namespace

std::size_t ConfusionMatrix::total() const {
  std::size_t n = 0;
  for (const auto& row : counts) {
    for (std::size_t c : row) n += c;
  }
  return n;
}

std::optional<std::size_t> ConfusionMatrix::index_of(std::string_view label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

ConfusionMatrix confusion(std::span<const std::string> gold,
                          std::span<const std::string> pred,
                          std::vector<std::string> labels) {
  if (gold.size() != pred.size()) {
    throw EvalError("gold has " + std::to_string(gold.size()) +
                    " labels but predictions have " + std::to_string(pred.size()));
  }
  if (labels.empty()) {
    std::set<std::string> seen(gold.begin(), gold.end());
    seen.insert(pred.begin(), pred.end());
    labels.assign(seen.begin(), seen.end());
  }
  ConfusionMatrix m;
  m.labels = std::move(labels);
  m.counts.assign(m.labels.size(), std::vector<std::size_t>(m.labels.size(), 0));
  for (std::size_t i = 0; i < gold.size(); ++i) {
    auto g = m.index_of(gold[i]);
    auto p = m.index_of(pred[i]);
    if (!g || !p) {
      throw EvalError("label '" + (g ? pred[i] : gold[i]) +
                      "' is not in the label set");
    }
    ++m.counts[*g][*p];
  }
  return m;
}

ConfusionMatrix confusion(std::span<const ParticipationLabel> gold,
                          std::span<const ParticipationLabel> pred) {
  return enum_confusion(gold, pred, kAllLabels);
}

ConfusionMatrix confusion(std::span<const BinaryLabel> gold,
                          std::span<const BinaryLabel> pred) {
  return enum_confusion(gold, pred, kBinaryLabels);
}

EvalReport report(const ConfusionMatrix& conf) {
  const std::size_t k = conf.labels.size();
  EvalReport r;
  r.total = conf.total();
  std::size_t supported = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t tp = conf.counts[c][c];
    std::size_t gold = 0;
    std::size_t predicted = 0;
    for (std::size_t j = 0; j < k; ++j) {
      gold += conf.counts[c][j];
      predicted += conf.counts[j][c];
    }
    ClassMetrics m;
    m.precision = ratio(tp, predicted);
    m.recall = ratio(tp, gold);
    // 2tp / (2tp + fp + fn) equals the harmonic mean of P and R.
    m.f1 = ratio(2 * tp, gold + predicted);
    m.support = gold;
    if (gold > 0) {
      ++supported;
      r.macro.precision += m.precision;
      r.macro.recall += m.recall;
      r.macro.f1 += m.f1;
      const double w = static_cast<double>(gold);
      r.weighted.precision += w * m.precision;
      r.weighted.recall += w * m.recall;
      r.weighted.f1 += w * m.f1;
    }
    r.per_class.emplace_back(conf.labels[c], m);
  }
  if (supported > 0) {
    const double s = static_cast<double>(supported);
    r.macro = {r.macro.precision / s, r.macro.recall / s, r.macro.f1 / s};
  }
  if (r.total > 0) {
    const double t = static_cast<double>(r.total);
    r.weighted = {r.weighted.precision / t, r.weighted.recall / t,
                  r.weighted.f1 / t};
  }
  return r;
}

std::string format_report(const EvalReport& report, std::string_view title) {
  std::string out;
  char line[160];
  out += title;
  out += '\n';
  std::snprintf(line, sizeof(line), "%-16s %9s %9s %9s %9s\n", "label",
                "precision", "recall", "f1", "support");
  out += line;
  for (const auto& [label, m] : report.per_class) {
    std::snprintf(line, sizeof(line), "%-16s %9.4f %9.4f %9.4f %9zu\n",
                  label.c_str(), m.precision, m.recall, m.f1, m.support);
    out += line;
  }
  std::snprintf(line, sizeof(line), "%-16s %9.4f %9.4f %9.4f %9zu\n", "macro avg",
                report.macro.precision, report.macro.recall, report.macro.f1,
                report.total);
  out += line;
  std::snprintf(line, sizeof(line), "%-16s %9.4f %9.4f %9.4f %9zu\n",
                "weighted avg", report.weighted.precision, report.weighted.recall,
                report.weighted.f1, report.total);
  out += line;
  return out;
}

std::vector<OrderedRecord> report_records(const EvalReport& report,
                                          std::string_view title) {
  std::vector<OrderedRecord> out;
  auto row = [&](std::string_view cls, double p, double r, double f1,
                 std::size_t support) {
    OrderedRecord rec;
    rec["report"] = title;
    rec["class"] = cls;
    rec["precision"] = p;
    rec["recall"] = r;
    rec["f1"] = f1;
    rec["support"] = support;
    out.push_back(std::move(rec));
  };
  for (const auto& [label, m] : report.per_class) {
    row(label, m.precision, m.recall, m.f1, m.support);
  }
  row("macro", report.macro.precision, report.macro.recall, report.macro.f1,
      report.total);
  row("weighted", report.weighted.precision, report.weighted.recall,
      report.weighted.f1, report.total);
  return out;
}

RobustnessReport robustness_report(std::span<const Snippet> testset,
                                   const StageClassifier& classifier,
                                   const Lexicon& lexicon,
                                   std::span<const PerturbationMode> modes,
                                   std::span<const std::string> vocabulary) {
  if (!classifier.reads_text()) {
    throw PipelineError(std::string(to_string(classifier.kind())) +
                        " classifier does not read snippet text, so perturbed "
                        "copies cannot be classified");
  }
  if (testset.empty()) throw EvalError("robustness test set is empty");

  auto fraction = [&](std::span<const Snippet> snippets) {
    const auto labels = omp::binary_labels(snippets, classifier);
    const auto hits = std::count(labels.begin(), labels.end(),
                                 BinaryLabel::Participation);
    return ratio(static_cast<std::size_t>(hits), labels.size());
  };

  RobustnessReport r;
  r.samples = testset.size();
  r.baseline = fraction(testset);
  for (const PerturbationMode& mode : modes) {
    const auto results = omp::perturb_batch(testset, lexicon, mode, vocabulary);
    std::vector<Snippet> perturbed(testset.begin(), testset.end());
    for (std::size_t i = 0; i < perturbed.size(); ++i) {
      perturbed[i].text = results[i].text;
      if (results[i].clamped) ++r.clamped;
    }
    r.fractions.emplace_back(mode.kind, fraction(perturbed));
  }
  return r;
}

}  // namespace caharvest
