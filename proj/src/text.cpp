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

#include "caharvest/text.hpp"

#include <algorithm>
#include <array>

namespace caharvest {
namespace {

struct Decoded {
  char32_t cp = 0;
  std::size_t len = 1;
  bool valid = false;
};

Decoded decode_utf8(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1, true};
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {0xFFFD, 1, false};
  }
  if (i + len > s.size()) return {0xFFFD, 1, false};
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return {0xFFFD, 1, false};
    cp = (cp << 6) | (b & 0x3F);
  }
  // Overlong forms and surrogates are treated as invalid bytes.
  static constexpr std::array<char32_t, 5> kMin = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return {0xFFFD, 1, false};
  }
  return {cp, len, true};
}

enum class CharClass { kSeparator, kWord, kApostrophe };

bool in_range(char32_t cp, char32_t lo, char32_t hi) {
  return cp >= lo && cp <= hi;
}

CharClass classify(const Decoded& d) {
  const char32_t cp = d.cp;
  if (cp < 0x80) {
    const auto c = static_cast<char>(cp);
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
        (c >= '0' && c <= '9')) {
      return CharClass::kWord;
    }
    return c == '\'' ? CharClass::kApostrophe : CharClass::kSeparator;
  }
  if (!d.valid) return CharClass::kSeparator;
  if (cp == 0x2018 || cp == 0x2019 || cp == 0x02BC) {
    return CharClass::kApostrophe;
  }
  if (cp <= 0xBF || cp == 0xD7 || cp == 0xF7 || in_range(cp, 0x2000, 0x206F) ||
      in_range(cp, 0x20A0, 0x20CF) || in_range(cp, 0x2190, 0x23FF) ||
      in_range(cp, 0x2460, 0x27BF) || in_range(cp, 0x2900, 0x2BFF) ||
      in_range(cp, 0x3000, 0x303F) || in_range(cp, 0xFE00, 0xFE0F) ||
      cp == 0xFEFF || in_range(cp, 0x1F000, 0x1FAFF) ||
      in_range(cp, 0xE0000, 0xE007F)) {
    return CharClass::kSeparator;
  }
  return CharClass::kWord;
}

void append_lowered(std::string& out, std::string_view text, const Decoded& d,
                    std::size_t at) {
  if (d.cp < 0x80) {
    char c = static_cast<char>(d.cp);
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    out.push_back(c);
    return;
  }
  // Latin-1 uppercase letters map to lowercase by +0x20; both encode in two
  // bytes.
  if (d.cp >= 0xC0 && d.cp <= 0xDE && d.cp != 0xD7) {
    const char32_t lower = d.cp + 0x20;
    out.push_back(static_cast<char>(0xC0 | (lower >> 6)));
    out.push_back(static_cast<char>(0x80 | (lower & 0x3F)));
    return;
  }
  out.append(text.substr(at, d.len));
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

// Length of a closing quote/bracket at `i`, or 0.
std::size_t closing_len(std::string_view s, std::size_t i) {
  const char c = s[i];
  if (c == ')' || c == ']' || c == '"' || c == '\'') return 1;
  if (s.substr(i, 3) == "\xE2\x80\x9D" || s.substr(i, 3) == "\xE2\x80\x99") {
    return 3;
  }
  return 0;
}

std::size_t opening_len(std::string_view s, std::size_t i) {
  const char c = s[i];
  if (c == '(' || c == '[' || c == '"' || c == '\'') return 1;
  if (s.substr(i, 3) == "\xE2\x80\x9C" || s.substr(i, 3) == "\xE2\x80\x98") {
    return 3;
  }
  return 0;
}

constexpr std::array<std::string_view, 17> kAbbreviations = {
    "e.g.", "i.e.", "mr.",  "mrs.", "ms.", "dr.",  "prof.", "sr.",    "jr.",
    "st.",  "vs.",  "u.s.", "u.k.", "u.n.", "cf.", "fig.", "approx."};

}  // namespace

bool TokenScanner::next(TokenSpan& span, std::string& normalized) {
  const std::size_t n = text_.size();
  while (pos_ < n) {
    Decoded d = decode_utf8(text_, pos_);
    if (classify(d) == CharClass::kSeparator) {
      pos_ += d.len;
      continue;
    }
    normalized.clear();
    std::size_t word_begin = 0, word_end = 0;
    std::size_t norm_begin = 0, norm_end = 0;
    bool has_word = false;
    while (pos_ < n) {
      d = decode_utf8(text_, pos_);
      const CharClass cls = classify(d);
      if (cls == CharClass::kSeparator) break;
      if (cls == CharClass::kApostrophe) {
        normalized.push_back('\'');
      } else {
        if (!has_word) {
          has_word = true;
          word_begin = pos_;
          norm_begin = normalized.size();
        }
        append_lowered(normalized, text_, d, pos_);
        word_end = pos_ + d.len;
        norm_end = normalized.size();
      }
      pos_ += d.len;
    }
    if (!has_word) continue;  // apostrophes only
    normalized.resize(norm_end);
    normalized.erase(0, norm_begin);
    span = {word_begin, word_end};
    return true;
  }
  return false;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  TokenScanner scanner(text);
  TokenSpan span;
  std::string token;
  while (scanner.next(span, token)) tokens.push_back(token);
  return tokens;
}

std::size_t count_tokens(std::string_view text) {
  std::size_t count = 0;
  TokenScanner scanner(text);
  TokenSpan span;
  std::string token;
  while (scanner.next(span, token)) ++count;
  return count;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string normalize_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

bool is_abbreviation(std::string_view word) {
  if (word.size() > 8) return false;
  std::string lower(word);
  for (char& c : lower) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) !=
         kAbbreviations.end();
}

std::vector<Sentence> split_sentences(std::string_view text) {
  std::vector<Sentence> out;
  const std::size_t n = text.size();

  auto emit = [&](std::size_t b, std::size_t e) {
    while (b < e && is_space(text[b])) ++b;
    while (e > b && is_space(text[e - 1])) --e;
    if (b == e) return;
    Sentence s;
    s.index = out.size();
    s.text = std::string(text.substr(b, e - b));
    s.begin = b;
    s.end = e;
    out.push_back(std::move(s));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < n) {
    if (!is_terminator(text[i])) {
      ++i;
      continue;
    }
    std::size_t last = i;
    while (last + 1 < n && is_terminator(text[last + 1])) ++last;
    std::size_t end = last + 1;
    while (end < n) {
      const std::size_t len = closing_len(text, end);
      if (len == 0) break;
      end += len;
    }
    std::size_t next = end;
    while (next < n && is_space(text[next])) ++next;

    bool boundary = false;
    if (next == n) {
      boundary = true;
    } else if (next > end) {
      std::size_t p = next;
      while (p < n) {
        const std::size_t len = opening_len(text, p);
        if (len == 0) break;
        p += len;
      }
      boundary = p < n && text[p] >= 'A' && text[p] <= 'Z';
      if (boundary && last == i && text[i] == '.') {
        std::size_t w = i;
        while (w > start && !is_space(text[w - 1])) --w;
        while (w < i && opening_len(text, w) > 0) w += opening_len(text, w);
        if (is_abbreviation(text.substr(w, i + 1 - w))) boundary = false;
      }
    }

    if (boundary) {
      emit(start, end);
      start = end;
      i = end;
    } else {
      i = last + 1;
    }
  }
  emit(start, n);
  return out;
}

}  // namespace caharvest
