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

#include "concord/gap_detector.h"

#include <fmt/format.h>

#include "concord/text.h"

namespace concord {

namespace {

bool contains_phrase(std::string_view text, const std::string& phrase) {
  if (phrase == "*") return true;
  return !find_phrase(to_lower(text), phrase).empty();
}

std::string window_text(const ReferenceWindow& window) {
  std::string out;
  for (const Turn& t : window.history) out += t.text + "\n";
  return out + window.focus.text;
}

bool urgent_slot(std::string_view slot) {
  return slot == "APPOINTMENT_TIME" || slot == "SYMPTOM_ESCALATION_POLICY" ||
         slot == "SYMPTOM_LOCATION";
}

}  // namespace

SlotMap SlotMap::parse(std::string_view content) {
  std::vector<SlotRule> rules;
  for (const std::string& line : parse_word_list(content)) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
      const std::size_t b = line.find_first_not_of(" \t", pos);
      if (b == std::string::npos) throw LexiconError("slot map line too short: " + line);
      const std::size_t e = line.find_first_of(" \t", b);
      if (e == std::string::npos) throw LexiconError("slot map line too short: " + line);
      parts.push_back(line.substr(b, e - b));
      pos = e;
    }
    SlotRule rule;
    if (parts[0] != "*") {
      rule.category = parse_category(parts[0]);
      if (!rule.category) throw LexiconError("slot map: unknown category " + parts[0]);
    }
    rule.slot = parts[1];
    if (parts[2] == "surface") {
      rule.scope = SlotRule::Scope::kSurface;
    } else if (parts[2] == "focus") {
      rule.scope = SlotRule::Scope::kFocus;
    } else if (parts[2] == "window") {
      rule.scope = SlotRule::Scope::kWindow;
    } else {
      throw LexiconError("slot map: unknown scope " + parts[2]);
    }
    rule.phrase = to_lower(trim(std::string_view(line).substr(pos)));
    if (rule.phrase.empty()) throw LexiconError("slot map line has no phrase: " + line);
    rules.push_back(std::move(rule));
  }
  return SlotMap(std::move(rules));
}

SlotMap SlotMap::load(const std::filesystem::path& path) {
  return parse(read_text_file(path));
}

std::string SlotMap::slot_for(const InformationGap& gap,
                              const ReferenceWindow& window) const {
  const std::string surface = gap.mention.surface + " " + gap.mention.linked_surface;
  std::string whole;  // built on first use
  for (const SlotRule& r : rules_) {
    if (r.category && *r.category != gap.mention.category) continue;
    bool hit = false;
    switch (r.scope) {
      case SlotRule::Scope::kSurface: hit = contains_phrase(surface, r.phrase); break;
      case SlotRule::Scope::kFocus: hit = contains_phrase(window.focus.text, r.phrase); break;
      case SlotRule::Scope::kWindow:
        if (whole.empty()) whole = window_text(window);
        hit = contains_phrase(whole, r.phrase);
        break;
    }
    if (hit) return r.slot;
  }
  return kGeneralAttribute;
}

GapLexicons GapLexicons::load(const std::filesystem::path& dir) {
  GapLexicons lex;
  lex.smalltalk = TaggedPhraseSet::load(dir / "smalltalk.txt");
  lex.urgent_context = PhraseSet::load(dir / "urgent_context.txt");
  lex.slot_map = SlotMap::load(dir / "slot_map.txt");
  return lex;
}

const GapLexicons& GapLexicons::defaults() {
  static const GapLexicons lex = load(default_lexicon_dir());
  return lex;
}

int attributed_turn(const EntityMention& mention, bool resolved,
                    const ReferenceWindow& window) {
  if (!window.masked_before_focus) return mention.turn_id;
  if (mention.kind == MentionKind::kAcknowledgment) return *window.masked_before_focus;
  if (mention.kind == MentionKind::kDistal && mention.head.empty() && !resolved &&
      mention.category != EntityCategory::kTemporal) {
    return *window.masked_before_focus;
  }
  return mention.turn_id;
}

std::vector<InformationGap> detect_gaps(const ReferenceWindow& window,
                                        const std::vector<EntityMention>& mentions,
                                        const std::vector<ResolutionRecord>& resolutions) {
  std::vector<InformationGap> gaps;
  for (const EntityMention& m : mentions) {
    const ResolutionRecord* match = nullptr;
    for (const ResolutionRecord& r : resolutions) {
      if (r.trigger_turn_id == m.turn_id && r.ambiguous_phrase == m.surface) {
        match = &r;
        break;
      }
    }
    AttributeSet missing = missing_attributes(m, match);
    if (missing.empty()) continue;
    InformationGap gap;
    gap.mention = m;
    gap.trigger_turn_id = attributed_turn(m, match != nullptr, window);
    std::string attrs;
    for (const std::string& a : missing) attrs += (attrs.empty() ? "" : ", ") + a;
    const std::string phrase = m.linked_surface.empty() ? m.surface : m.linked_surface;
    gap.reason = fmt::format("{} reference '{}' lacks {}.", category_name(m.category),
                             phrase, attrs);
    gap.missing_attributes = std::move(missing);
    gaps.push_back(std::move(gap));
  }
  return gaps;
}

QueryQuality classify_quality(const InformationGap& gap, std::string_view target_slot,
                              std::string_view focus_text, const GapLexicons& lex) {
  if (gap.mention.category == EntityCategory::kMedical ||
      target_slot == "APPOINTMENT_TIME" || target_slot == "SYMPTOM_ESCALATION_POLICY") {
    return QueryQuality::kHighValue;
  }
  return lex.smalltalk.matches(focus_text).empty() ? QueryQuality::kHighValue
                                                   : QueryQuality::kLowValue;
}

Urgency urgency_for(const InformationGap& gap, std::string_view target_slot,
                    QueryQuality quality, std::string_view focus_text,
                    const GapLexicons& lex) {
  if (quality == QueryQuality::kLowValue) return Urgency::kNone;
  if (gap.mention.category == EntityCategory::kMedical || urgent_slot(target_slot) ||
      lex.urgent_context.any(focus_text)) {
    return Urgency::kImmediate;
  }
  return Urgency::kRoutine;
}

std::string query_phrase(const InformationGap& gap) {
  return gap.mention.linked_surface.empty() ? gap.mention.surface
                                            : gap.mention.linked_surface;
}

ProtocolQuery build_query(const InformationGap& gap, QueryQuality quality,
                          std::string target_slot, Urgency urgency) {
  ProtocolQuery q;
  q.trigger_turn_id = gap.trigger_turn_id;
  q.quality = quality;
  q.reason = gap.reason;
  q.intent = std::string(kResolveMissingEntity);
  q.natural_language_fallback = fmt::format("Requesting {} for '{}' from Turn {}.",
                                            target_slot, query_phrase(gap),
                                            gap.trigger_turn_id);
  q.target_slot = std::move(target_slot);
  q.urgency = quality == QueryQuality::kLowValue ? Urgency::kNone : urgency;
  q.context_ref = fmt::format("Turn {}", gap.trigger_turn_id);
  return q;
}

GapAnalysis analyze_gaps(const ReferenceWindow& window,
                         const std::vector<ResolvedMention>& resolved,
                         const GapLexicons& lex) {
  std::vector<EntityMention> mentions;
  std::vector<ResolutionRecord> records;
  for (const ResolvedMention& rm : resolved) {
    mentions.push_back(rm.mention);
    if (rm.resolution) records.push_back(*rm.resolution);
  }
  GapAnalysis out;
  out.gaps = detect_gaps(window, mentions, records);
  for (const InformationGap& gap : out.gaps) {
    std::string slot = lex.slot_map.slot_for(gap, window);
    const QueryQuality quality = classify_quality(gap, slot, window.focus.text, lex);
    if (quality == QueryQuality::kLowValue) {
      // Small talk names its own slot.
      const auto hits = lex.smalltalk.matches(window.focus.text);
      slot = lex.smalltalk.tag(hits.front().index);
    }
    const Urgency urgency = urgency_for(gap, slot, quality, window.focus.text, lex);
    out.queries.push_back(build_query(gap, quality, std::move(slot), urgency));
  }
  return out;
}

}  // namespace concord
