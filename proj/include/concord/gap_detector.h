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

// Information-gap detection: attribute templates applied to the mentions of a
// window, value filtering, and protocol query construction.

#ifndef CONCORD_GAP_DETECTOR_H_
#define CONCORD_GAP_DETECTOR_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "concord/attributes.h"
#include "concord/context_resolver.h"
#include "concord/core_model.h"
#include "concord/lexicon.h"

namespace concord {

struct InformationGap {
  EntityMention mention;
  AttributeSet missing_attributes;
  int trigger_turn_id = 0;
  std::string reason;

  bool operator==(const InformationGap&) const = default;
};

// One line of the slot map: `<Category|*> <SLOT> <surface|focus|window> <phrase|*>`.
struct SlotRule {
  enum class Scope { kSurface, kFocus, kWindow };

  std::optional<EntityCategory> category;  // absent matches any
  std::string slot;
  Scope scope = Scope::kSurface;
  std::string phrase;  // lower case; "*" always matches
};

class SlotMap {
 public:
  SlotMap() = default;
  explicit SlotMap(std::vector<SlotRule> rules) : rules_(std::move(rules)) {}

  // Throws LexiconError on a malformed line.
  static SlotMap parse(std::string_view content);
  static SlotMap load(const std::filesystem::path& path);

  // First matching rule wins; GENERAL_ATTRIBUTE when none does.
  std::string slot_for(const InformationGap& gap, const ReferenceWindow& window) const;

  const std::vector<SlotRule>& rules() const { return rules_; }

 private:
  std::vector<SlotRule> rules_;
};

inline constexpr char kGeneralAttribute[] = "GENERAL_ATTRIBUTE";

struct GapLexicons {
  TaggedPhraseSet smalltalk;  // tag: slot used for LOW_VALUE queries
  PhraseSet urgent_context;   // focus words that make a gap time-critical
  SlotMap slot_map;

  static GapLexicons load(const std::filesystem::path& dir);
  static const GapLexicons& defaults();
};

// Turn a gap is charged to. Acknowledgments, and bare pronouns nothing in the
// window could ground, point at the masked slot before the focus turn.
int attributed_turn(const EntityMention& mention, bool resolved,
                    const ReferenceWindow& window);

// A mention gaps iff its own attributes merged with those of its resolution
// (same turn and phrase) miss a required attribute.
std::vector<InformationGap> detect_gaps(const ReferenceWindow& window,
                                        const std::vector<EntityMention>& mentions,
                                        const std::vector<ResolutionRecord>& resolutions);

// LOW_VALUE iff the focus turn is small talk and the gap is neither medical,
// an appointment time nor an escalation policy.
QueryQuality classify_quality(const InformationGap& gap, std::string_view target_slot,
                              std::string_view focus_text, const GapLexicons& lex);

Urgency urgency_for(const InformationGap& gap, std::string_view target_slot,
                    QueryQuality quality, std::string_view focus_text,
                    const GapLexicons& lex);

// The phrase a query names: the linked phrase for acknowledgments, else the
// mention surface.
std::string query_phrase(const InformationGap& gap);

ProtocolQuery build_query(const InformationGap& gap, QueryQuality quality,
                          std::string target_slot, Urgency urgency);

struct GapAnalysis {
  std::vector<InformationGap> gaps;
  std::vector<ProtocolQuery> queries;  // one per gap, same order
};

// detect_gaps, then slot, quality, urgency and query for every gap.
GapAnalysis analyze_gaps(const ReferenceWindow& window,
                         const std::vector<ResolvedMention>& resolved,
                         const GapLexicons& lex);

}  // namespace concord

#endif  // CONCORD_GAP_DETECTOR_H_
