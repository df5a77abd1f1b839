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

#include "caharvest/corpus.hpp"

#include <unordered_set>

#include "caharvest/error.hpp"
#include "caharvest/kernels.hpp"

namespace caharvest {
namespace {

// Reads an optional string field; false if present with another type.
bool read_optional_string(const Record& r, std::string_view key, std::string& out) {
  auto it = r.find(key);
  if (it == r.end() || it->is_null()) return true;
  if (!it->is_string()) return false;
  out = it->get<std::string>();
  return true;
}

std::size_t optional_count(const Record& r, std::string_view key,
                           std::size_t line) {
  auto it = r.find(key);
  if (it == r.end() || it->is_null()) return 0;
  if (!it->is_number_unsigned()) {
    throw FormatError("line " + std::to_string(line) + ": field '" +
                          std::string(key) + "' must be a non-negative integer",
                      line);
  }
  return it->get<std::size_t>();
}

}  // namespace

std::optional<Comment> parse_comment(std::string_view line) {
  auto parsed = try_parse_record(line);
  if (!parsed) return std::nullopt;
  const Record& r = *parsed;

  Comment c;
  auto id = r.find("id");
  auto body = r.find("body");
  if (id == r.end() || !id->is_string() || body == r.end() || !body->is_string()) {
    return std::nullopt;
  }
  c.id = id->get<std::string>();
  c.body = body->get<std::string>();
  if (c.id.empty() || trim(c.body).empty()) return std::nullopt;
  if (!read_optional_string(r, "community", c.community) ||
      !read_optional_string(r, "thread_id", c.thread_id) ||
      !read_optional_string(r, "author_id", c.author_id)) {
    return std::nullopt;
  }
  if (auto ts = r.find("created_at"); ts != r.end() && !ts->is_null()) {
    if (!ts->is_number_integer()) return std::nullopt;
    c.created_at = ts->get<std::int64_t>();
  }
  return c;
}

CommentBatch parse_comment_stream(std::istream& in) {
  if (!in) throw IngestError("input stream is not readable");
  CommentBatch batch;
  std::unordered_set<std::string> seen;
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    auto c = parse_comment(line);
    if (!c) {
      ++batch.malformed;
    } else if (!seen.insert(c->id).second) {
      ++batch.duplicates;
    } else {
      batch.comments.push_back(std::move(*c));
    }
  }
  return batch;
}

OrderedRecord to_record(const Comment& c) {
  OrderedRecord r;
  r["id"] = c.id;
  r["community"] = c.community;
  r["thread_id"] = c.thread_id;
  r["author_id"] = c.author_id;
  r["created_at"] = c.created_at;
  r["body"] = c.body;
  return r;
}

OrderedRecord to_record(const Snippet& s) {
  OrderedRecord r;
  r["comment_id"] = s.comment_id;
  r["community"] = s.community;
  r["thread_id"] = s.thread_id;
  r["author_id"] = s.author_id;
  r["text"] = s.text;
  r["anchor_index"] = s.anchor_index;
  r["match_count"] = s.match_count;
  return r;
}

Snippet snippet_from_record(const Record& r, std::size_t line) {
  Snippet s;
  if (auto id = optional_string(r, "comment_id", line)) {
    s.comment_id = std::move(*id);
  } else {
    s.comment_id = require_string(r, "sample_id", line);
  }
  if (s.comment_id.empty()) {
    throw FormatError("line " + std::to_string(line) + ": empty comment_id", line);
  }
  s.text = require_string(r, "text", line);
  s.community = optional_string(r, "community", line).value_or("");
  s.thread_id = optional_string(r, "thread_id", line).value_or("");
  s.author_id = optional_string(r, "author_id", line).value_or("");
  s.anchor_index = optional_count(r, "anchor_index", line);
  s.match_count = optional_count(r, "match_count", line);
  return s;
}

std::vector<Snippet> read_snippets(std::istream& in) {
  std::vector<Snippet> out;
  for_each_record(in, [&](const Record& r, std::size_t line) {
    out.push_back(snippet_from_record(r, line));
  });
  return out;
}

std::size_t count_lexicon_matches(std::string_view text, const Lexicon& lexicon) {
  std::size_t hits = 0;
  TokenScanner scanner(text);
  TokenSpan span;
  std::string token;
  while (scanner.next(span, token)) {
    if (lexicon.contains(token)) ++hits;
  }
  return hits;
}

std::vector<Sentence> split_and_count(std::string_view text,
                                      const Lexicon& lexicon) {
  auto sentences = split_sentences(text);
  for (auto& s : sentences) s.term_count = count_lexicon_matches(s.text, lexicon);
  return sentences;
}

std::optional<Snippet> extract_snippet(const Comment& comment,
                                       const Lexicon& lexicon) {
  const std::size_t matches = count_lexicon_matches(comment.body, lexicon);
  if (matches < kMinLexiconMatches) return std::nullopt;

  const auto sentences = split_and_count(comment.body, lexicon);
  std::size_t anchor = 0;
  for (std::size_t i = 1; i < sentences.size(); ++i) {
    if (sentences[i].term_count > sentences[anchor].term_count) anchor = i;
  }
  const std::size_t first = anchor > 0 ? anchor - 1 : 0;
  const std::size_t last = std::min(anchor + 1, sentences.size() - 1);

  Snippet s;
  s.comment_id = comment.id;
  s.community = comment.community;
  s.thread_id = comment.thread_id;
  s.author_id = comment.author_id;
  // The window's original bytes, inter-sentence whitespace included.
  s.text = comment.body.substr(sentences[first].begin,
                               sentences[last].end - sentences[first].begin);
  s.anchor_index = anchor;
  s.match_count = matches;
  return s;
}

std::vector<Snippet> filter_near_duplicates(std::span<const Snippet> snippets,
                                            const EmbeddingStore& vectors,
                                            double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error("near-duplicate threshold must be in (0, 1], got " +
                std::to_string(threshold));
  }
  std::vector<Snippet> kept;
  std::vector<const EmbeddingVector*> kept_vectors;
  for (const auto& s : snippets) {
    const EmbeddingVector& v = vectors.at(s.comment_id);
    bool duplicate = false;
    for (const EmbeddingVector* k : kept_vectors) {
      if (cosine_similarity(v, *k) > threshold) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      kept.push_back(s);
      kept_vectors.push_back(&v);
    }
  }
  return kept;
}

EmbeddingStore embed_snippets_fallback(std::span<const Snippet> snippets,
                                       std::size_t dimension) {
  auto vectors = omp::hash_embed(snippets, dimension);
  EmbeddingStore store(dimension, "fallback-hash");
  for (std::size_t i = 0; i < snippets.size(); ++i) {
    store.insert(snippets[i].comment_id, std::move(vectors[i]));
  }
  return store;
}

LineOutcome ingest_line(std::string_view line, const Lexicon& lexicon) {
  LineOutcome out;
  auto comment = parse_comment(line);
  if (!comment) return out;
  out.parsed = true;
  out.snippet = extract_snippet(*comment, lexicon);
  out.id = std::move(comment->id);
  return out;
}

IngestStats ingest_stream(std::istream& in, const Lexicon& lexicon,
                          const std::function<void(const Snippet&)>& sink,
                          const IngestOptions& options) {
  if (!in) throw IngestError("input stream is not readable");
  const std::size_t block = std::max<std::size_t>(options.block_lines, 1);
  IngestStats stats;
  std::unordered_set<std::string> seen;
  LineReader reader(in);
  std::vector<std::string> lines;
  lines.reserve(block);
  std::string line;
  bool more = true;
  while (more) {
    lines.clear();
    while (lines.size() < block && (more = reader.next(line))) {
      lines.push_back(std::move(line));
    }
    if (lines.empty()) break;
    stats.lines += lines.size();
    for (auto& outcome : omp::ingest_block(lines, lexicon)) {
      if (!outcome.parsed) {
        ++stats.malformed;
        continue;
      }
      if (!seen.insert(std::move(outcome.id)).second) {
        ++stats.duplicates;
        continue;
      }
      ++stats.comments;
      if (outcome.snippet) {
        ++stats.retained;
        sink(*outcome.snippet);
      }
    }
  }
  return stats;
}

}  // namespace caharvest
