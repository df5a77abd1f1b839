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

#ifndef CAHARVEST_LABELS_HPP_
#define CAHARVEST_LABELS_HPP_

#include <array>
#include <optional>
#include <string_view>

namespace caharvest {

// Five-way participation label. Enumerator order is the fixed tie-break
// order used by the centroid classifier (earliest wins), and for the four
// participation levels it is also the ordinal priority
// (Execution > Intention > CallToAction > ProblemSolution).
enum class ParticipationLabel : unsigned char {
  None = 0,
  ProblemSolution = 1,
  CallToAction = 2,
  Intention = 3,
  Execution = 4,
};

enum class BinaryLabel : unsigned char {
  None = 0,
  Participation = 1,
};

inline constexpr std::array<ParticipationLabel, 5> kAllLabels = {
    ParticipationLabel::None, ParticipationLabel::ProblemSolution,
    ParticipationLabel::CallToAction, ParticipationLabel::Intention,
    ParticipationLabel::Execution};

inline constexpr std::array<ParticipationLabel, 4> kLevelLabels = {
    ParticipationLabel::ProblemSolution, ParticipationLabel::CallToAction,
    ParticipationLabel::Intention, ParticipationLabel::Execution};

inline constexpr std::array<BinaryLabel, 2> kBinaryLabels = {
    BinaryLabel::None, BinaryLabel::Participation};

constexpr BinaryLabel binary_view(ParticipationLabel label) {
  return label == ParticipationLabel::None ? BinaryLabel::None
                                           : BinaryLabel::Participation;
}

constexpr bool is_participation(ParticipationLabel label) {
  return label != ParticipationLabel::None;
}

// Wire names: problem-solution|call-to-action|intention|execution|none.
std::string_view to_string(ParticipationLabel label);
// Wire names: participation|none.
std::string_view to_string(BinaryLabel label);

std::optional<ParticipationLabel> parse_participation_label(std::string_view s);
std::optional<BinaryLabel> parse_binary_label(std::string_view s);

// Short column headings used in human-readable tables.
std::string_view short_name(ParticipationLabel label);

}  // namespace caharvest

#endif  // CAHARVEST_LABELS_HPP_
