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
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "caharvest/error.hpp"
#include "doctest.h"
#include "oracles/alpha_oracle.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

namespace caharvest {
namespace {

using PL = ParticipationLabel;

AnnotationRecord ann(std::string sample, std::string worker, PL label) {
  return {std::move(sample), std::move(worker), label, false, std::nullopt};
}

AnnotationRecord control(std::string sample, std::string worker, PL label, PL gold) {
  return {std::move(sample), std::move(worker), label, true, gold};
}

std::vector<LabeledSnippet> load_labeled(const std::string& name) {
  std::ifstream in(testkit::fixture_path(name));
  REQUIRE(in.good());
  return read_labeled_snippets(in);
}

std::vector<SyntheticRecord> load_synthetic() {
  std::ifstream in(testkit::fixture_path("synthetic.jsonl"));
  REQUIRE(in.good());
  return read_synthetic(in);
}

std::vector<std::size_t> counts_in_table_order(const std::map<PL, std::size_t>& c) {
  return {c.at(PL::ProblemSolution), c.at(PL::CallToAction), c.at(PL::Intention),
          c.at(PL::Execution), c.at(PL::None)};
}

std::vector<AnnotationRecord> worker_controls(const std::string& w, int seen, int passed) {
  std::vector<AnnotationRecord> out;
  for (int i = 0; i < seen; ++i) {
    out.push_back(control("ctl" + std::to_string(i), w,
                          i < passed ? PL::Execution : PL::None, PL::Execution));
  }
  return out;
}

TEST_CASE("worker scores") {
  auto all = worker_controls("w4of4", 4, 4);
  auto one = worker_controls("w1of4", 4, 1);
  auto half = worker_controls("w1of2", 2, 1);
  all.insert(all.end(), one.begin(), one.end());
  all.insert(all.end(), half.begin(), half.end());
  all.push_back(ann("s1", "fresh", PL::None));
  const auto scores = score_workers(all);
  CHECK(scores.at("w4of4").pass_rate == 1.0);
  CHECK_FALSE(scores.at("w4of4").discard);
  CHECK(scores.at("w1of4").pass_rate == 0.25);
  CHECK(scores.at("w1of4").discard);
  CHECK(scores.at("w1of2").pass_rate == 0.5);
  CHECK_FALSE(scores.at("w1of2").discard);
  CHECK_FALSE(scores.at("fresh").pass_rate.has_value());
  CHECK_FALSE(scores.at("fresh").discard);
  const auto kept = retained_workers(scores);
  CHECK(kept == std::set<std::string>{"w4of4", "w1of2", "fresh"});
}

TEST_CASE("majority: plurality, tie and too few") {
  const std::vector<AnnotationRecord> records = {
      ann("s1", "a", PL::Intention), ann("s1", "b", PL::Intention),
      ann("s1", "c", PL::Execution), ann("s2", "a", PL::Intention),
      ann("s2", "b", PL::Execution), ann("s3", "a", PL::None),
      ann("s3", "bad", PL::None)};
  const auto result = aggregate_majority(records, {"a", "b", "c"});
  REQUIRE(result.samples.size() == 1);
  CHECK(result.samples[0].sample_id == "s1");
  CHECK(result.samples[0].label == PL::Intention);
  CHECK(result.samples[0].vote_margin == 1);
  CHECK(result.samples[0].n_annotators == 3);
  CHECK(result.log.no_clear_majority == 1);
  CHECK(result.log.too_few_annotators == 1);
  CHECK(result.log.filtered_annotations == 1);
  REQUIRE(result.log.rejected.size() == 2);
  CHECK(result.log.rejected[0] ==
        std::make_pair(std::string("s2"), RejectionReason::kNoClearMajority));
  CHECK(result.log.rejected[1] ==
        std::make_pair(std::string("s3"), RejectionReason::kTooFewAnnotators));
}

TEST_CASE("majority excludes control samples") {
  const std::vector<AnnotationRecord> records = {
      control("c1", "a", PL::None, PL::None), control("c1", "b", PL::None, PL::None),
      ann("s1", "a", PL::None), ann("s1", "b", PL::None)};
  const auto result = aggregate_majority(records, {"a", "b"});
  REQUIRE(result.samples.size() == 1);
  CHECK(result.samples[0].sample_id == "s1");
  CHECK(result.log.control_samples == 1);
}

TEST_CASE("aggregated labels never come from discarded workers") {
  testkit::Gen gen(9);
  for (int round = 0; round < 100; ++round) {
    std::vector<AnnotationRecord> records;
    const std::vector<std::string> workers = {"w0", "w1", "w2", "w3", "w4"};
    std::set<std::string> retained;
    for (const auto& w : workers) {
      if (gen.coin(0.6)) retained.insert(w);
    }
    for (int s = 0; s < 20; ++s) {
      for (const auto& w : workers) {
        if (gen.coin(0.7)) {
          records.push_back(ann("s" + std::to_string(s), w, kAllLabels[gen.below(5)]));
        }
      }
    }
    const auto result = aggregate_majority(records, retained);
    for (const auto& sample : result.samples) {
      std::array<std::size_t, 5> votes{};
      for (const auto& r : records) {
        if (r.sample_id == sample.sample_id && retained.contains(r.worker_id)) {
          ++votes[static_cast<std::size_t>(r.label)];
        }
      }
      const auto winner = votes[static_cast<std::size_t>(sample.label)];
      CHECK(winner > 0);
      for (std::size_t i = 0; i < 5; ++i) {
        if (i != static_cast<std::size_t>(sample.label)) CHECK(votes[i] < winner);
      }
      CHECK(sample.vote_margin >= 1);
      CHECK(sample.n_annotators >= 2);
    }
  }
}

TEST_CASE("annotation files") {
  std::istringstream ok(
      R"({"sample_id":"s","worker_id":"w","label":"intention","is_control":false})" "\n"
      R"({"sample_id":"c","worker_id":"w","label":"none","is_control":true,"gold":"none"})" "\n");
  const auto records = read_annotations(ok);
  REQUIRE(records.size() == 2);
  CHECK(records[1].gold == PL::None);

  std::istringstream missing_gold(
      R"({"sample_id":"c","worker_id":"w","label":"none","is_control":true})" "\n");
  CHECK_THROWS_AS(read_annotations(missing_gold), FormatError);
  std::istringstream stray_gold(
      R"({"sample_id":"c","worker_id":"w","label":"none","is_control":false,"gold":"none"})" "\n");
  CHECK_THROWS_AS(read_annotations(stray_gold), FormatError);
  std::istringstream bad_label(
      R"({"sample_id":"c","worker_id":"w","label":"nope","is_control":false})" "\n");
  CHECK_THROWS_AS(read_annotations(bad_label), FormatError);
}

TEST_CASE("alpha: perfect agreement is exactly one") {
  std::vector<AnnotationRecord> records;
  for (int s = 0; s < 10; ++s) {
    for (int w = 0; w < 3; ++w) {
      records.push_back(ann("s" + std::to_string(s), "w" + std::to_string(w),
                            kAllLabels[static_cast<std::size_t>(s % 5)]));
    }
  }
  CHECK(krippendorff_alpha(records) == 1.0);
  // A single label everywhere has no expected disagreement either.
  std::vector<AnnotationRecord> constant = {ann("a", "x", PL::None), ann("a", "y", PL::None)};
  CHECK(krippendorff_alpha(constant) == 1.0);
}

TEST_CASE("alpha: two units ((A,A),(A,B))") {
  const std::vector<AnnotationRecord> records = {
      ann("u1", "x", PL::Intention), ann("u1", "y", PL::Intention),
      ann("u2", "x", PL::Intention), ann("u2", "y", PL::Execution)};
  const double expected = oracle::krippendorff_alpha({{3, 3}, {3, 4}}, 5);
  CHECK(std::abs(krippendorff_alpha(records) - expected) <= 1e-9);
  // By hand: D_o = 2/4, D_e = (3 + 3) / (4 * 3), so alpha = 0.
  CHECK(std::abs(expected) <= 1e-12);
}

TEST_CASE("alpha: singly annotated units are an error") {
  const std::vector<AnnotationRecord> records = {ann("u1", "x", PL::None),
                                                 ann("u2", "x", PL::Intention)};
  CHECK_THROWS_AS(krippendorff_alpha(records), AgreementError);
  CHECK_THROWS_AS(krippendorff_alpha(std::vector<AnnotationRecord>{}), AgreementError);
}

TEST_CASE("alpha matches the pair-enumeration oracle on small instances") {
  testkit::Gen gen(21);
  for (int round = 0; round < 200; ++round) {
    const std::size_t units = gen.between(1, 6);
    std::vector<std::vector<int>> values(units);
    std::vector<AnnotationRecord> records;
    for (std::size_t u = 0; u < units; ++u) {
      const std::size_t coders = gen.between(u == 0 ? 2 : 1, 4);
      for (std::size_t c = 0; c < coders; ++c) {
        const int label = static_cast<int>(gen.below(gen.between(1, 5)));
        values[u].push_back(label);
        records.push_back(ann("u" + std::to_string(u), "c" + std::to_string(c),
                              kAllLabels[static_cast<std::size_t>(label)]));
      }
    }
    const double got = krippendorff_alpha(records);
    const double want = oracle::krippendorff_alpha(values, 5);
    CHECK(std::abs(got - want) <= 1e-9);
  }
}

TEST_CASE("alpha is invariant to unit order and label permutation") {
  testkit::Gen gen(22);
  for (int round = 0; round < 50; ++round) {
    std::vector<AnnotationRecord> records;
    for (int u = 0; u < 8; ++u) {
      for (int c = 0; c < 3; ++c) {
        records.push_back(ann("u" + std::to_string(u), "c" + std::to_string(c),
                              kAllLabels[gen.below(3)]));
      }
    }
    const double base = krippendorff_alpha(records);
    auto shuffled = records;
    std::reverse(shuffled.begin(), shuffled.end());
    CHECK(krippendorff_alpha(shuffled) == doctest::Approx(base).epsilon(1e-12));
    auto relabeled = records;
    for (auto& r : relabeled) {
      r.label = kAllLabels[(static_cast<std::size_t>(r.label) + 2) % 5];
      r.worker_id = "x" + r.worker_id;
    }
    CHECK(krippendorff_alpha(relabeled) == doctest::Approx(base).epsilon(1e-12));
  }
}

LabeledSnippet anchor_snippet(const std::string& id, PL label) {
  LabeledSnippet a;
  a.snippet.comment_id = id;
  a.snippet.thread_id = "t";
  a.label = label;
  return a;
}

Snippet thread_snippet(const std::string& id) {
  Snippet s;
  s.comment_id = id;
  s.thread_id = "t";
  return s;
}

// Unit vector at the given cosine to e1 in the plane.
EmbeddingVector at_cosine(double c) {
  return EmbeddingVector({c, std::sqrt(1.0 - c * c)});
}

TEST_CASE("extension: twenty candidates propagate one label") {
  EmbeddingStore store(2, "t");
  store.insert("anchor", EmbeddingVector({1, 0}));
  std::vector<Snippet> thread;
  for (int i = 0; i < 20; ++i) {
    const std::string id = "c" + std::to_string(i);
    store.insert(id, at_cosine(0.1 + 0.04 * i));
    thread.push_back(thread_snippet(id));
  }
  const auto out = extend_reddit_informed(anchor_snippet("anchor", PL::Execution), thread, store);
  REQUIRE(out.size() == 1);
  CHECK(out[0].snippet.comment_id == "c19");
  CHECK(out[0].label == PL::Execution);
}

TEST_CASE("extension: the bot filter drops near-copies and the anchor") {
  EmbeddingStore store(2, "t");
  store.insert("anchor", EmbeddingVector({1, 0}));
  store.insert("copy", EmbeddingVector({2, 0}));
  store.insert("other", at_cosine(0.5));
  std::vector<Snippet> thread = {thread_snippet("anchor"), thread_snippet("copy"),
                                 thread_snippet("other")};
  const auto out = extend_reddit_informed(anchor_snippet("anchor", PL::None), thread, store);
  REQUIRE(out.size() == 1);
  CHECK(out[0].snippet.comment_id == "other");
}

TEST_CASE("extension: top-2 of 40 matches a full sort") {
  testkit::Gen gen(40);
  EmbeddingStore store(2, "t");
  store.insert("anchor", EmbeddingVector({1, 0}));
  std::vector<Snippet> thread;
  std::vector<std::pair<double, std::string>> sims;
  for (int i = 0; i < 40; ++i) {
    const std::string id = "c" + std::to_string(i);
    const double c = gen.uniform(-0.9, 0.99);
    store.insert(id, at_cosine(c));
    thread.push_back(thread_snippet(id));
    const double actual = cosine_similarity(store.at("anchor"), store.at(id));
    if (actual <= 0.95) sims.push_back({-actual, id});
  }
  std::sort(sims.begin(), sims.end());
  const std::size_t quota = (sims.size() + 19) / 20;
  const auto out = extend_reddit_informed(anchor_snippet("anchor", PL::Intention), thread, store);
  REQUIRE(out.size() == quota);
  for (std::size_t i = 0; i < quota; ++i) CHECK(out[i].snippet.comment_id == sims[i].second);
}

TEST_CASE("extension: empty thread, foreign thread, missing vector") {
  EmbeddingStore store(2, "t");
  store.insert("anchor", EmbeddingVector({1, 0}));
  const auto anchor = anchor_snippet("anchor", PL::None);
  CHECK(extend_reddit_informed(anchor, std::vector<Snippet>{}, store).empty());
  Snippet foreign = thread_snippet("x");
  foreign.thread_id = "other";
  store.insert("x", EmbeddingVector({0, 1}));
  CHECK_THROWS_AS(extend_reddit_informed(anchor, std::vector<Snippet>{foreign}, store), Error);
  CHECK_THROWS_AS(
      extend_reddit_informed(anchor, std::vector<Snippet>{thread_snippet("nov")}, store),
      LookupError);
}

TEST_CASE("extension quota is a ceiling robust to rounding") {
  for (std::size_t n : {1, 19, 20, 21, 40, 60, 100, 101}) {
    EmbeddingStore store(2, "t");
    store.insert("anchor", EmbeddingVector({1, 0}));
    std::vector<Snippet> thread;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string id = "c" + std::to_string(i);
      store.insert(id, at_cosine(0.5 * static_cast<double>(i) / static_cast<double>(n)));
      thread.push_back(thread_snippet(id));
    }
    const auto out = extend_reddit_informed(anchor_snippet("anchor", PL::None), thread, store);
    CHECK(out.size() == (n + 19) / 20);
  }
}

TEST_CASE("extension never emits the anchor or a near-copy") {
  testkit::Gen gen(41);
  for (int round = 0; round < 100; ++round) {
    EmbeddingStore store(3, "t");
    store.insert("anchor", EmbeddingVector(gen.vector(3)));
    std::vector<Snippet> thread = {thread_snippet("anchor")};
    for (int i = 0; i < 30; ++i) {
      const std::string id = "c" + std::to_string(i);
      auto v = gen.vector(3);
      if (gen.coin(0.2)) {
        v = std::vector<double>(store.at("anchor").values().begin(),
                                store.at("anchor").values().end());
      }
      store.insert(id, EmbeddingVector(v));
      thread.push_back(thread_snippet(id));
    }
    for (const auto& s : extend_reddit_informed(anchor_snippet("anchor", PL::None), thread, store)) {
      CHECK(s.snippet.comment_id != "anchor");
      CHECK(cosine_similarity(store.at("anchor"), store.at(s.snippet.comment_id)) <= 0.95);
    }
  }
}

TEST_CASE("synthetic records") {
  std::istringstream in(
      R"({"sample_id":"s","anchor_id":"a","label":"intention","text":"t","semantic_similarity":true,"structure":true,"meaning":true,"intent":true,"key_details":true})" "\n"
      R"({"sample_id":"u","anchor_id":"a","label":"intention","text":"t"})" "\n"
      R"({"sample_id":"v","anchor_id":"a","label":"intention","text":"t","semantic_similarity":true,"structure":true,"meaning":false,"intent":true,"key_details":true})" "\n");
  const auto records = read_synthetic(in);
  REQUIRE(records.size() == 3);
  CHECK(records[0].valid());
  CHECK_FALSE(records[1].valid());
  CHECK_FALSE(records[2].valid());
  std::istringstream bad(R"({"sample_id":"s","anchor_id":"a","label":"intention","text":"t","meaning":"yes"})" "\n");
  CHECK_THROWS_AS(read_synthetic(bad), FormatError);
}

TEST_CASE("training-set variants reproduce the published counts") {
  const auto cs = load_labeled("cs.jsonl");
  const auto ext = load_labeled("extension.jsonl");
  const auto syn = load_synthetic();
  using V = std::vector<std::size_t>;
  const std::vector<std::pair<std::string, V>> expected = {
      {"CS", {202, 44, 14, 9, 100}},
      {"CS+SynI/E", {202, 44, 275, 182, 100}},
      {"CS+SynA", {202, 234, 275, 182, 240}},
      {"Ext", {553, 175, 24, 16, 285}},
      {"Ext+SynI/E", {553, 175, 285, 189, 285}},
  };
  for (const auto& [name, counts] : expected) {
    const auto v = merge_training_sets(cs, syn, ext, name);
    INFO(name);
    CHECK(counts_in_table_order(v.counts) == counts);
    CHECK(to_string(v.name) == name);
    CHECK(label_counts(v.samples) == v.counts);
  }
}

TEST_CASE("variant counts are the sum of their inputs") {
  testkit::Gen gen(50);
  for (int round = 0; round < 30; ++round) {
    std::vector<LabeledSnippet> cs, ext;
    std::vector<SyntheticRecord> syn;
    for (std::size_t i = gen.below(30); i > 0; --i) {
      cs.push_back({thread_snippet("cs" + std::to_string(i)), kAllLabels[gen.below(5)]});
    }
    for (std::size_t i = gen.below(30); i > 0; --i) {
      ext.push_back({thread_snippet("ext" + std::to_string(i)), kAllLabels[gen.below(5)]});
    }
    for (std::size_t i = gen.below(60); i > 0; --i) {
      SyntheticRecord r;
      r.sample_id = "syn" + std::to_string(i);
      r.label = kAllLabels[gen.below(5)];
      for (auto& c : r.checks) c = gen.coin(0.8);
      syn.push_back(r);
    }
    auto tally = [](auto&& range, auto&& keep) {
      std::map<PL, std::size_t> c;
      for (PL l : kAllLabels) c[l] = 0;
      for (const auto& r : range) {
        if (keep(r)) ++c[r.label];
      }
      return c;
    };
    const auto cs_c = tally(cs, [](const auto&) { return true; });
    const auto ext_c = tally(ext, [](const auto&) { return true; });
    const auto synie = tally(syn, [](const SyntheticRecord& r) {
      return r.valid() && (r.label == PL::Intention || r.label == PL::Execution);
    });
    const auto syna = tally(syn, [](const SyntheticRecord& r) {
      return r.valid() && r.label != PL::ProblemSolution;
    });
    for (PL l : kAllLabels) {
      CHECK(merge_training_sets(cs, syn, ext, "CS").counts.at(l) == cs_c.at(l));
      CHECK(merge_training_sets(cs, syn, ext, "CS+SynI/E").counts.at(l) ==
            cs_c.at(l) + synie.at(l));
      CHECK(merge_training_sets(cs, syn, ext, "CS+SynA").counts.at(l) ==
            cs_c.at(l) + syna.at(l));
      CHECK(merge_training_sets(cs, syn, ext, "Ext").counts.at(l) == cs_c.at(l) + ext_c.at(l));
      CHECK(merge_training_sets(cs, syn, ext, "Ext+SynI/E").counts.at(l) ==
            cs_c.at(l) + ext_c.at(l) + synie.at(l));
    }
  }
}

TEST_CASE("variant errors") {
  const std::vector<LabeledSnippet> cs = {{thread_snippet("a"), PL::None}};
  CHECK_THROWS_AS(merge_training_sets(cs, {}, {}, "CS+Syn"), VariantError);
  CHECK_THROWS_AS(merge_training_sets(cs, {}, cs, "Ext"), VariantError);
  CHECK_FALSE(parse_variant("cs").has_value());
}

TEST_CASE("labeled snippets and label files") {
  LabeledSnippet s{thread_snippet("x"), PL::CallToAction};
  s.snippet.text = "Go.";
  std::stringstream io;
  write_record(io, to_record(s));
  const auto back = read_labeled_snippets(io);
  REQUIRE(back.size() == 1);
  CHECK(back[0].snippet == s.snippet);
  CHECK(back[0].label == PL::CallToAction);

  std::istringstream labels(
      R"({"sample_id":"a","label":"none"})" "\n" R"({"comment_id":"b","label":"execution"})" "\n");
  const auto map = read_labels(labels);
  CHECK(map.at("a") == PL::None);
  CHECK(map.at("b") == PL::Execution);
  std::istringstream dup(
      R"({"sample_id":"a","label":"none"})" "\n" R"({"sample_id":"a","label":"none"})" "\n");
  CHECK_THROWS_AS(read_labels(dup), FormatError);
}

}  // namespace
}  // namespace caharvest
