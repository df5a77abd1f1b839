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

#ifndef CAHARVEST_LEXICON_HPP_
#define CAHARVEST_LEXICON_HPP_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <istream>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "caharvest/labels.hpp"

namespace caharvest {

// A word list of single tokens, stored lowercase. Matching is exact token
// equality under the tokenizer in text.hpp.
class Lexicon {
 public:
  // Throws LexiconError when `terms` is empty or a term is not exactly one
  // token (whitespace, hyphens and similar separators are rejected).
  Lexicon(std::string name, std::string source,
          const std::vector<std::string>& terms);

  bool contains(std::string_view normalized_token) const {
    return lookup_.find(normalized_token) != lookup_.end();
  }

  const std::set<std::string>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const std::string& name() const { return name_; }
  const std::string& source() const { return source_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::string name_;
  std::string source_;
  std::set<std::string> terms_;
  std::unordered_set<std::string, Hash, std::equal_to<>> lookup_;
};

// One term per line; blank lines and lines starting with '#' are ignored.
Lexicon parse_lexicon(std::istream& in, std::string name, std::string source);
Lexicon load_lexicon(const std::filesystem::path& path);

// Fraction of tokens in `text` that are lexicon terms. Throws ScoreError
// when the text has no tokens.
double dictionary_score(std::string_view text, const Lexicon& lexicon);

struct ScoredLabel {
  double score = 0.0;
  BinaryLabel label = BinaryLabel::None;
};

struct ThresholdModel {
  double tau = 0.0;
  double j_statistic = 0.0;  // TPR - FPR at tau
  std::size_t candidates_evaluated = 0;
};

// Picks tau among the observed unique scores maximizing Youden's J under
// the rule score >= tau => Participation. Ties go to the smallest tau.
// Throws TuningError unless both classes are present.
ThresholdModel tune_threshold(std::span<const ScoredLabel> scored);

inline BinaryLabel classify_dictionary(double score,
                                       const ThresholdModel& model) {
  return score >= model.tau ? BinaryLabel::Participation : BinaryLabel::None;
}

// Flat key=value text: tau=, j=, candidates=. Reals are written with
// round-trip precision.
void save_threshold_model(std::ostream& out, const ThresholdModel& model);
ThresholdModel load_threshold_model(std::istream& in);
ThresholdModel load_threshold_model(const std::filesystem::path& path);

}  // namespace caharvest

#endif  // CAHARVEST_LEXICON_HPP_
