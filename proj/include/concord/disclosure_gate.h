// Copyright 2026 The Concord Authors.
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

// Sensitivity grading, the hard lock, the social sharing matrix, privacy
// intent elevation and the final approval/masking step.

#ifndef CONCORD_DISCLOSURE_GATE_H_
#define CONCORD_DISCLOSURE_GATE_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "concord/core_model.h"
#include "concord/lexicon.h"
#include "concord/relationship_engine.h"

namespace concord {

struct GradedSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  Sensitivity grade = Sensitivity::kLow;

  bool operator==(const GradedSpan&) const = default;
};

// Line format:
//   <Low|Mid|High|Critical> <phrase>
//   slot <SLOT> <grade>
//   pattern <grade> <ECMAScript regex>
// Critical entries form the zero-tolerance classes (credentials, government
// IDs) and may only be graded Critical.
class SensitivityLexicon {
 public:
  static SensitivityLexicon parse(std::string_view content);
  static SensitivityLexicon load(const std::filesystem::path& path);
  static const SensitivityLexicon& defaults();

  // Keyword and pattern hits, longest first, without overlaps.
  std::vector<GradedSpan> scan(std::string_view text) const;
  std::optional<Sensitivity> slot_grade(std::string_view slot) const;
  bool is_critical_class(std::string_view phrase) const;

 private:
  struct Pattern {
    Sensitivity grade;
    std::regex re;
  };

  std::vector<Sensitivity> keyword_grades_;
  PhraseSet keywords_;
  std::vector<Pattern> patterns_;
  std::map<std::string, Sensitivity> slot_grades_;
};

// Critical if a critical-class entry matches, else the max over keyword hits
// and the target slot's grade, else Low. Throws InvalidArgumentError for an
// empty candidate.
Sensitivity classify_sensitivity(const ProtocolQuery& query, std::string_view candidate_answer,
                                 const SensitivityLexicon& lexicon);

// Self-censoring and abstraction cues ("I had some personal stuff").
bool detect_privacy_intent(const std::vector<Turn>& owner_turns_near, const PhraseSet& cues);

const PhraseSet& default_privacy_cues();

Sensitivity elevate(Sensitivity sensitivity, bool intent);

enum class LockDecision { kAbort, kProceed };

LockDecision hard_lock(Sensitivity sensitivity, RelationshipLevel level);

// The 3x3 matrix. Throws InvalidArgumentError for Critical.
DisclosureKind matrix_decide(Sensitivity sensitivity, RelationshipLevel level);

struct DisclosureRequest {
  ProtocolQuery query;
  std::string candidate_answer;
  Sensitivity sensitivity = Sensitivity::kLow;  // as classified
  RelationshipAssessment relationship;
  bool intent_elevated = false;

  // The grade the gate acts on.
  Sensitivity effective_sensitivity() const { return elevate(sensitivity, intent_elevated); }
};

enum class ApprovalSignal { kGranted, kDenied };

inline constexpr std::string_view kRedacted = "[REDACTED]";

// Applies approval and masking to a matrix outcome. Spans graded above the
// classified sensitivity are replaced by kRedacted. Notes about ignored
// signals are appended to `log` when given.
DisclosureOutcome finalize(const DisclosureRequest& request, DisclosureKind matrix_outcome,
                           std::optional<ApprovalSignal> approval,
                           const SensitivityLexicon& lexicon,
                           std::vector<std::string>* log = nullptr);

// hard_lock, matrix_decide and finalize in sequence.
DisclosureOutcome decide(const DisclosureRequest& request, std::optional<ApprovalSignal> approval,
                         const SensitivityLexicon& lexicon,
                         std::vector<std::string>* log = nullptr);

// The matrix or lock outcome before approval and masking.
DisclosureKind gate_outcome(const DisclosureRequest& request);

}  // namespace concord

#endif  // CONCORD_DISCLOSURE_GATE_H_
