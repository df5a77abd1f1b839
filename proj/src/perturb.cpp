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

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "caharvest/embeddings.hpp"
#include "caharvest/error.hpp"
#include "caharvest/eval.hpp"
#include "caharvest/text.hpp"

namespace caharvest {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform draw in [0, n) by rejection; std::uniform_int_distribution is
// implementation-defined, which would make outputs differ across toolchains.
std::size_t draw_below(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return static_cast<std::size_t>(r % bound);
}

struct Token {
  TokenSpan span;
  bool lexical = false;
};

bool is_replace(PerturbationKind kind) {
  return kind == PerturbationKind::kReplaceLexicon ||
         kind == PerturbationKind::kReplaceRandom;
}

}  // namespace

std::string_view to_string(PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::kRemoveLexicon: return "remove_lexicon";
    case PerturbationKind::kReplaceLexicon: return "replace_lexicon";
    case PerturbationKind::kRemoveRandom: return "remove_random";
    case PerturbationKind::kReplaceRandom: return "replace_random";
  }
  return "remove_lexicon";
}

std::optional<PerturbationKind> parse_perturbation(std::string_view s) {
  for (PerturbationKind k : kAllPerturbations) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

PerturbResult perturb(std::string_view text, const Lexicon& lexicon,
                      const PerturbationMode& mode,
                      std::span<const std::string> vocabulary,
                      std::string_view stream_key) {
  // Replacement pool: vocabulary entries that are a single non-lexicon token,
  // so a replacement can never reintroduce a lexicon match.
  std::vector<std::string> pool;
  if (is_replace(mode.kind)) {
    for (const auto& word : vocabulary) {
      auto tokens = tokenize(word);
      if (tokens.size() == 1 && !lexicon.contains(tokens[0])) {
        pool.push_back(std::move(tokens[0]));
      }
    }
    if (pool.empty()) {
      throw PerturbError("no usable replacement vocabulary for " +
                         std::string(to_string(mode.kind)));
    }
  }

  std::vector<Token> tokens;
  {
    TokenScanner scanner(text);
    Token t;
    std::string normalized;
    while (scanner.next(t.span, normalized)) {
      t.lexical = lexicon.contains(normalized);
      tokens.push_back(t);
    }
  }

  PerturbResult result;
  for (const Token& t : tokens) result.budget += t.lexical ? 1 : 0;

  std::uint64_t state = splitmix64(mode.seed);
  state = splitmix64(state ^ fnv1a64(stream_key));
  state = splitmix64(state ^ static_cast<std::uint64_t>(mode.kind));
  std::mt19937_64 rng(state);

  // Chosen token indices, in text order.
  std::vector<std::size_t> targets;
  switch (mode.kind) {
    case PerturbationKind::kRemoveLexicon:
    case PerturbationKind::kReplaceLexicon:
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].lexical) targets.push_back(i);
      }
      break;
    case PerturbationKind::kRemoveRandom:
    case PerturbationKind::kReplaceRandom: {
      std::vector<std::size_t> candidates;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (!tokens[i].lexical) candidates.push_back(i);
      }
      std::size_t k = result.budget;
      if (k > candidates.size()) {
        k = candidates.size();
        result.clamped = true;
      }
      // Partial Fisher-Yates: the first k slots are a uniform k-subset.
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + draw_below(rng, candidates.size() - i);
        std::swap(candidates[i], candidates[j]);
      }
      targets.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k));
      std::sort(targets.begin(), targets.end());
      break;
    }
  }

  result.applied = targets.size();
  if (targets.empty()) {
    result.text = std::string(text);
    return result;
  }

  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  for (std::size_t idx : targets) {
    const TokenSpan& span = tokens[idx].span;
    out.append(text.substr(pos, span.begin - pos));
    if (is_replace(mode.kind)) {
      out += pool[draw_below(rng, pool.size())];
    } else {
      out += ' ';  // keep neighbours apart, e.g. "a,b" minus "b"
    }
    pos = span.end;
  }
  out.append(text.substr(pos));
  result.text = normalize_whitespace(out);
  return result;
}

}  // namespace caharvest
