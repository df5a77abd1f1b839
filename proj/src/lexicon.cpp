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

#include "caharvest/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <optional>

#include "caharvest/error.hpp"
#include "caharvest/records.hpp"
#include "caharvest/text.hpp"

namespace caharvest {

Lexicon::Lexicon(std::string name, std::string source,
                 const std::vector<std::string>& terms)
    : name_(std::move(name)), source_(std::move(source)) {
  for (const std::string& raw : terms) {
    const auto tokens = tokenize(raw);
    if (tokens.size() != 1 || tokens.front().size() != trim(raw).size()) {
      throw LexiconError("lexicon term '" + raw + "' is not a single token");
    }
    terms_.insert(tokens.front());
  }
  if (terms_.empty()) throw LexiconError("lexicon '" + name_ + "' is empty");
  lookup_.insert(terms_.begin(), terms_.end());
}

Lexicon parse_lexicon(std::istream& in, std::string name, std::string source) {
  std::vector<std::string> terms;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    terms.emplace_back(t);
  }
  return Lexicon(std::move(name), std::move(source), terms);
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  auto in = open_input_file(path);
  return parse_lexicon(in, path.stem().string(), path.string());
}

double dictionary_score(std::string_view text, const Lexicon& lexicon) {
  std::size_t total = 0;
  std::size_t hits = 0;
  TokenScanner scanner(text);
  TokenSpan span;
  std::string token;
  while (scanner.next(span, token)) {
    ++total;
    if (lexicon.contains(token)) ++hits;
  }
  if (total == 0) throw ScoreError("dictionary score undefined for text without tokens");
  return static_cast<double>(hits) / static_cast<double>(total);
}

ThresholdModel tune_threshold(std::span<const ScoredLabel> scored) {
  std::vector<ScoredLabel> sorted(scored.begin(), scored.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredLabel& a, const ScoredLabel& b) {
              return a.score < b.score;
            });
  std::int64_t positives = 0;
  for (const auto& s : sorted) {
    if (s.label == BinaryLabel::Participation) ++positives;
  }
  const auto negatives = static_cast<std::int64_t>(sorted.size()) - positives;
  if (positives == 0 || negatives == 0) {
    throw TuningError("threshold tuning needs both classes (got " +
                      std::to_string(positives) + " positive, " +
                      std::to_string(negatives) + " negative)");
  }

  // Walk unique scores upward; everything at index >= i scores >= tau.
  // J * P * N = tp * N - fp * P is compared exactly in integers.
  ThresholdModel best;
  std::optional<std::int64_t> best_key;
  std::int64_t pos_below = 0, neg_below = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double tau = sorted[i].score;
    const std::int64_t tp = positives - pos_below;
    const std::int64_t fp = negatives - neg_below;
    const std::int64_t key = tp * negatives - fp * positives;
    ++best.candidates_evaluated;
    if (!best_key || key > *best_key) {
      best_key = key;
      best.tau = tau;
      best.j_statistic = static_cast<double>(tp) / static_cast<double>(positives) -
                         static_cast<double>(fp) / static_cast<double>(negatives);
    }
    while (i < sorted.size() && sorted[i].score == tau) {
      if (sorted[i].label == BinaryLabel::Participation) {
        ++pos_below;
      } else {
        ++neg_below;
      }
      ++i;
    }
  }
  return best;
}

namespace {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void save_threshold_model(std::ostream& out, const ThresholdModel& model) {
  out << "tau=" << format_real(model.tau) << '\n'
      << "j=" << format_real(model.j_statistic) << '\n'
      << "candidates=" << model.candidates_evaluated << '\n';
}

ThresholdModel load_threshold_model(std::istream& in) {
  ThresholdModel model;
  bool have_tau = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("threshold model line " + std::to_string(line_no) +
                            ": expected key=value",
                        line_no);
    }
    const std::string_view key = trim(t.substr(0, eq));
    const std::string value(trim(t.substr(eq + 1)));
    try {
      if (key == "tau") {
        model.tau = std::stod(value);
        have_tau = true;
      } else if (key == "j") {
        model.j_statistic = std::stod(value);
      } else if (key == "candidates") {
        model.candidates_evaluated = std::stoull(value);
      }
    } catch (const std::exception&) {
      throw FormatError("threshold model line " + std::to_string(line_no) +
                            ": bad value '" + value + "'",
                        line_no);
    }
  }
  if (!have_tau) throw FormatError("threshold model has no tau", line_no);
  return model;
}

ThresholdModel load_threshold_model(const std::filesystem::path& path) {
  auto in = open_input_file(path);
  return load_threshold_model(in);
}

}  // namespace caharvest
