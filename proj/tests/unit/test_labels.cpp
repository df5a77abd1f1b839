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

#include "caharvest/labels.hpp"

#include "doctest.h"

namespace caharvest {
namespace {

TEST_CASE("label names round trip") {
  for (ParticipationLabel l : kAllLabels) {
    auto parsed = parse_participation_label(to_string(l));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == l);
  }
  for (BinaryLabel l : kBinaryLabels) {
    auto parsed = parse_binary_label(to_string(l));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == l);
  }
}

TEST_CASE("wire names") {
  CHECK(to_string(ParticipationLabel::ProblemSolution) == "problem-solution");
  CHECK(to_string(ParticipationLabel::CallToAction) == "call-to-action");
  CHECK(to_string(ParticipationLabel::Intention) == "intention");
  CHECK(to_string(ParticipationLabel::Execution) == "execution");
  CHECK(to_string(ParticipationLabel::None) == "none");
  CHECK(to_string(BinaryLabel::Participation) == "participation");
  CHECK(to_string(BinaryLabel::None) == "none");
}

TEST_CASE("unknown names are rejected") {
  CHECK_FALSE(parse_participation_label("executionn").has_value());
  CHECK_FALSE(parse_participation_label("Execution").has_value());
  CHECK_FALSE(parse_participation_label("").has_value());
  CHECK_FALSE(parse_binary_label("execution").has_value());
}

TEST_CASE("binary view is participation iff the label is not none") {
  for (ParticipationLabel l : kAllLabels) {
    CHECK((binary_view(l) == BinaryLabel::Participation) ==
          (l != ParticipationLabel::None));
    CHECK(is_participation(l) == (l != ParticipationLabel::None));
  }
}

TEST_CASE("enum order gives the level priority") {
  CHECK(ParticipationLabel::Execution > ParticipationLabel::Intention);
  CHECK(ParticipationLabel::Intention > ParticipationLabel::CallToAction);
  CHECK(ParticipationLabel::CallToAction > ParticipationLabel::ProblemSolution);
  CHECK(kLevelLabels.size() == 4);
  CHECK(kAllLabels.front() == ParticipationLabel::None);
}

TEST_CASE("short names") {
  CHECK(short_name(ParticipationLabel::ProblemSolution) == "P-Sol");
  CHECK(short_name(ParticipationLabel::CallToAction) == "C-Act");
  CHECK(short_name(ParticipationLabel::Intention) == "Intent");
  CHECK(short_name(ParticipationLabel::Execution) == "Exec");
  CHECK(short_name(ParticipationLabel::None) == "None");
}

}  // namespace
}  // namespace caharvest
