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

namespace caharvest {

std::string_view to_string(ParticipationLabel label) {
  switch (label) {
    case ParticipationLabel::None: return "none";
    case ParticipationLabel::ProblemSolution: return "problem-solution";
    case ParticipationLabel::CallToAction: return "call-to-action";
    case ParticipationLabel::Intention: return "intention";
    case ParticipationLabel::Execution: return "execution";
  }
  return "none";
}

std::string_view to_string(BinaryLabel label) {
  return label == BinaryLabel::Participation ? "participation" : "none";
}

std::optional<ParticipationLabel> parse_participation_label(std::string_view s) {
  for (ParticipationLabel label : kAllLabels) {
    if (to_string(label) == s) return label;
  }
  return std::nullopt;
}

std::optional<BinaryLabel> parse_binary_label(std::string_view s) {
  if (s == "participation") return BinaryLabel::Participation;
  if (s == "none") return BinaryLabel::None;
  return std::nullopt;
}

std::string_view short_name(ParticipationLabel label) {
  switch (label) {
    case ParticipationLabel::None: return "None";
    case ParticipationLabel::ProblemSolution: return "P-Sol";
    case ParticipationLabel::CallToAction: return "C-Act";
    case ParticipationLabel::Intention: return "Intent";
    case ParticipationLabel::Execution: return "Exec";
  }
  return "None";
}

}  // namespace caharvest
