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

// Relationship level inference from linguistic markers in a window of the
// owner's own turns. The aggregation is biased toward the restrictive level.

#ifndef CONCORD_RELATIONSHIP_ENGINE_H_
#define CONCORD_RELATIONSHIP_ENGINE_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "concord/context_resolver.h"
#include "concord/core_model.h"
#include "concord/lexicon.h"

namespace concord {

struct MarkerCounts {
  std::size_t honorifics = 0;
  std::size_t distancing_modals = 0;
  std::size_t endearments_relational = 0;
  std::size_t first_name_address = 0;
  std::size_t collective_pronouns = 0;
  std::size_t implicit_refs = 0;
  std::size_t explicit_refs = 0;
  std::size_t private_space_refs = 0;

  std::size_t distance_markers() const { return honorifics + distancing_modals; }
  bool operator==(const MarkerCounts&) const = default;
};

struct MarkerEvidence {
  std::string marker;  // e.g. "honorific"
  int turn_id = 0;
  std::string phrase;

  bool operator==(const MarkerEvidence&) const = default;
};

struct RelationshipLexicons {
  PhraseSet honorifics;
  PhraseSet distancing_modals;
  PhraseSet endearments;
  PhraseSet collective;
  PhraseSet private_spaces;
  PhraseSet given_names;
  PhraseSet greetings;

  static RelationshipLexicons load(const std::filesystem::path& dir);
  static const RelationshipLexicons& defaults();
};

struct RelationshipThresholds {
  std::size_t distance_lock = 2;   // honorifics + distancing modals
  std::size_t intimacy_types = 3;  // distinct intimacy marker types for L1
  std::size_t collective_floor = 2;
  double ratio_floor = 0.6;

  // Throws InvalidArgumentError for zero counts or a ratio outside (0, 1].
  void validate() const;
};

// Case-insensitive lexicon counts. Deictic and explicit references come from
// the resolver's mention extraction when `resolver` is given.
MarkerCounts extract_markers(const std::vector<Turn>& window_turns,
                             const RelationshipLexicons& lex,
                             const ResolverLexicons* resolver = nullptr,
                             std::vector<MarkerEvidence>* evidence = nullptr);

// implicit / (implicit + explicit); absent when both are zero.
std::optional<double> implicit_ratio(const MarkerCounts& counts);

struct RelationshipAssessment {
  RelationshipLevel level = RelationshipLevel::kL3;
  std::vector<MarkerEvidence> evidence;
  bool locked = false;  // distance lock fired

  bool operator==(const RelationshipAssessment&) const = default;
};

// Cascade: distance lock to L3, L1 on enough distinct intimacy types with no
// distance markers, L2 on first-name address without honorifics, else L3.
RelationshipAssessment assess_level(const MarkerCounts& counts,
                                    const RelationshipThresholds& thresholds = {});

// extract_markers then assess_level, keeping the evidence.
RelationshipAssessment assess_window(const std::vector<Turn>& window_turns,
                                     const RelationshipLexicons& lex,
                                     const ResolverLexicons* resolver,
                                     const RelationshipThresholds& thresholds = {});

// Gold level from a backstory relationship label; absent for unknown labels.
std::optional<RelationshipLevel> level_for_relationship(std::string_view label);

}  // namespace concord

#endif  // CONCORD_RELATIONSHIP_ENGINE_H_
