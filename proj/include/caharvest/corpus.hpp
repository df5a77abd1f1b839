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

// Comment ingestion and lexicon-gated snippet extraction.
//
// A comment is kept when its body holds at least two lexicon-token
// occurrences. The kept unit is a snippet: the sentence with the most
// lexicon tokens (earliest on ties) plus the sentences immediately before
// and after it when they exist.

#ifndef CAHARVEST_CORPUS_HPP_
#define CAHARVEST_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "caharvest/embeddings.hpp"
#include "caharvest/lexicon.hpp"
#include "caharvest/records.hpp"
#include "caharvest/text.hpp"

namespace caharvest {

struct Comment {
  std::string id;
  std::string community;
  std::string thread_id;
  std::string author_id;
  std::int64_t created_at = 0;
  std::string body;

  friend bool operator==(const Comment&, const Comment&) = default;
};

struct Snippet {
  std::string comment_id;
  std::string community;
  std::string thread_id;
  std::string author_id;
  std::string text;
  std::size_t anchor_index = 0;
  std::size_t match_count = 0;

  friend bool operator==(const Snippet&, const Snippet&) = default;
};

inline constexpr std::size_t kMinLexiconMatches = 2;

// Parses one ingestion record. Returns nullopt for malformed lines: invalid
// JSON, missing or non-string `id`/`body`, empty id, whitespace-only body,
// or a non-integer `created_at`. Missing community/thread/author default to
// empty; unknown keys are ignored.
std::optional<Comment> parse_comment(std::string_view line);

struct CommentBatch {
  std::vector<Comment> comments;
  std::size_t malformed = 0;
  std::size_t duplicates = 0;  // repeated ids, skipped after the first
};

// Reads a whole stream. Malformed lines are counted and skipped. Throws
// IngestError if the stream is unreadable.
CommentBatch parse_comment_stream(std::istream& in);

OrderedRecord to_record(const Comment& comment);
OrderedRecord to_record(const Snippet& snippet);

// Builds a Snippet from an output record. Throws FormatError.
Snippet snippet_from_record(const Record& r, std::size_t line);
std::vector<Snippet> read_snippets(std::istream& in);

// Lexicon token occurrences (not distinct terms) in `text`.
std::size_t count_lexicon_matches(std::string_view text, const Lexicon& lexicon);

// Sentences of `text` with term_count filled in.
std::vector<Sentence> split_and_count(std::string_view text,
                                      const Lexicon& lexicon);

// Returns nullopt when the body has fewer than two lexicon matches.
std::optional<Snippet> extract_snippet(const Comment& comment,
                                       const Lexicon& lexicon);

// Greedy scan in input order: a snippet is dropped when its cosine
// similarity to any already-kept snippet exceeds `threshold`. Throws
// LookupError naming the first snippet without a vector.
std::vector<Snippet> filter_near_duplicates(std::span<const Snippet> snippets,
                                            const EmbeddingStore& vectors,
                                            double threshold);

// Embeds each snippet's text with fallback_hash_embed, keyed by comment_id.
EmbeddingStore embed_snippets_fallback(std::span<const Snippet> snippets,
                                       std::size_t dimension);

struct IngestStats {
  std::size_t lines = 0;  // nonempty lines
  std::size_t comments = 0;
  std::size_t malformed = 0;
  std::size_t duplicates = 0;
  std::size_t retained = 0;
};

struct IngestOptions {
  // Lines per parallel block; bounds memory on multi-GB dumps.
  std::size_t block_lines = 1 << 14;
};

// Streams `in` block by block: parse and snippet each block in parallel,
// then hand retained snippets to `sink` in input order. The output is
// independent of the thread count.
IngestStats ingest_stream(std::istream& in, const Lexicon& lexicon,
                          const std::function<void(const Snippet&)>& sink,
                          const IngestOptions& options = {});

}  // namespace caharvest

#endif  // CAHARVEST_CORPUS_HPP_
