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

// Tokenization and sentence segmentation shared by corpus curation, the
// dictionary classifier and the perturbation harness.
//
// Token rule: a token is a maximal run of letters, digits and apostrophes,
// with leading/trailing apostrophes trimmed. ASCII and Latin-1 letters are
// lowercased; U+2018/U+2019/U+02BC are folded to '\''. Other non-ASCII code
// points count as letters unless they fall in a punctuation/symbol/emoji
// block. No stemming.
//
// Sentence rule: '.', '!' or '?' (a run of them, plus closing quotes or
// brackets) ends a sentence when followed by end of text, or by whitespace
// and then an uppercase ASCII letter (optionally behind opening quotes or
// brackets). A '.' that ends a known abbreviation ("e.g.", "Dr.", "U.S.",
// ...) never ends a sentence.

#ifndef CAHARVEST_TEXT_HPP_
#define CAHARVEST_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace caharvest {

struct TokenSpan {
  std::size_t begin = 0;  // byte offsets into the scanned text
  std::size_t end = 0;
};

// Streams tokens out of a text without allocating per token.
class TokenScanner {
 public:
  explicit TokenScanner(std::string_view text) : text_(text) {}

  // Advances to the next token. On success fills `span` and overwrites
  // `normalized` with the lowercased token text.
  bool next(TokenSpan& span, std::string& normalized);

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::vector<std::string> tokenize(std::string_view text);
std::size_t count_tokens(std::string_view text);

struct Sentence {
  std::size_t index = 0;
  std::string text;            // trimmed
  std::size_t term_count = 0;  // filled by lexicon-aware callers
  std::size_t begin = 0;       // byte range of `text` in the source
  std::size_t end = 0;
};

// Splits `text` into sentences in order. Whitespace-only input yields no
// sentences; any other input yields at least one.
std::vector<Sentence> split_sentences(std::string_view text);

// True when `word` (including its final '.') is on the abbreviation list,
// compared case-insensitively.
bool is_abbreviation(std::string_view word);

std::string_view trim(std::string_view s);

// Collapses whitespace runs to one space and trims both ends.
std::string normalize_whitespace(std::string_view s);

}  // namespace caharvest

#endif  // CAHARVEST_TEXT_HPP_
