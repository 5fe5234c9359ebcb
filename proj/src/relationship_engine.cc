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

#include "concord/relationship_engine.h"

#include <set>

#include "concord/text.h"

namespace concord {

namespace {

void note(std::vector<MarkerEvidence>* evidence, const char* marker, const Turn& turn,
          std::size_t begin, std::size_t end) {
  if (evidence) evidence->push_back({marker, turn.turn_id, turn.text.substr(begin, end - begin)});
}

std::size_t count_into(const PhraseSet& set, const Turn& turn, const char* marker,
                       std::vector<MarkerEvidence>* evidence) {
  const std::vector<PhraseMatch> hits = set.matches(turn.text);
  for (const PhraseMatch& m : hits) note(evidence, marker, turn, m.begin, m.end);
  return hits.size();
}

bool only(std::string_view text, std::size_t b, std::size_t e, std::string_view allowed) {
  for (std::size_t i = b; i < e; ++i) {
    if (allowed.find(text[i]) == std::string_view::npos) return false;
  }
  return true;
}

// Given names used as a vocative: after a greeting, or set off by commas.
std::size_t count_vocatives(const Turn& turn, const RelationshipLexicons& lex,
                            std::vector<MarkerEvidence>* evidence) {
  const std::string& text = turn.text;
  const std::vector<Token> toks = tokenize(text);
  std::set<std::size_t> greeting_ends;
  for (const PhraseMatch& m : lex.greetings.matches(text)) greeting_ends.insert(m.end);
  std::size_t n = 0;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (!t.capitalized || !lex.given_names.contains(t.lower)) continue;
    const std::size_t prev_end = i > 0 ? toks[i - 1].end : 0;
    const bool after_greeting =
        i > 0 && greeting_ends.count(prev_end) && only(text, prev_end, t.begin, " ,");
    const bool opens = i == 0 || only(text, 0, t.begin, " ");
    const bool after_comma =
        i > 0 && only(text, prev_end, t.begin, " ,") &&
        text.find(',', prev_end) < t.begin;
    const std::size_t next_begin = i + 1 < toks.size() ? toks[i + 1].begin : text.size();
    const bool closes = t.end == text.size() || only(text, t.end, next_begin, " ,.!?");
    const bool set_off = closes && t.end < text.size() && text[t.end] != ' ';
    if (after_greeting || ((opens || after_comma) && (set_off || t.end == text.size()))) {
      note(evidence, "first_name_address", turn, t.begin, t.end);
      ++n;
    }
  }
  return n;
}

}  // namespace

RelationshipLexicons RelationshipLexicons::load(const std::filesystem::path& dir) {
  RelationshipLexicons lex;
  lex.honorifics = PhraseSet::load(dir / "honorifics.txt");
  lex.distancing_modals = PhraseSet::load(dir / "distancing_modals.txt");
  lex.endearments = PhraseSet::load(dir / "endearments.txt");
  lex.collective = PhraseSet::load(dir / "collective_pronouns.txt");
  lex.private_spaces = PhraseSet::load(dir / "private_spaces.txt");
  lex.given_names = PhraseSet::load(dir / "given_names.txt");
  lex.greetings = PhraseSet::load(dir / "greetings.txt");
  return lex;
}

const RelationshipLexicons& RelationshipLexicons::defaults() {
  static const RelationshipLexicons lex = load(default_lexicon_dir());
  return lex;
}

void RelationshipThresholds::validate() const {
  if (distance_lock == 0 || intimacy_types == 0 || collective_floor == 0) {
    throw InvalidArgumentError("relationship thresholds must be positive");
  }
  if (!(ratio_floor > 0.0 && ratio_floor <= 1.0)) {
    throw InvalidArgumentError("ratio_floor must lie in (0, 1]");
  }
}

MarkerCounts extract_markers(const std::vector<Turn>& window_turns,
                             const RelationshipLexicons& lex,
                             const ResolverLexicons* resolver,
                             std::vector<MarkerEvidence>* evidence) {
  if (window_turns.empty()) throw InvalidArgumentError("marker window is empty");
  MarkerCounts c;
  for (const Turn& turn : window_turns) {
    c.honorifics += count_into(lex.honorifics, turn, "honorific", evidence);
    c.distancing_modals += count_into(lex.distancing_modals, turn, "distancing_modal", evidence);
    c.endearments_relational += count_into(lex.endearments, turn, "endearment", evidence);
    c.collective_pronouns += count_into(lex.collective, turn, "collective_pronoun", evidence);
    c.private_space_refs += count_into(lex.private_spaces, turn, "private_space", evidence);
    if (!lex.given_names.empty()) c.first_name_address += count_vocatives(turn, lex, evidence);
    if (resolver) {
      for (const EntityMention& m : extract_turn_mentions(turn, *resolver)) {
        if (m.kind == MentionKind::kDistal || m.kind == MentionKind::kProximal) {
          ++c.implicit_refs;
        } else if (m.kind == MentionKind::kExplicit ||
                   m.kind == MentionKind::kAbsoluteTemporal) {
          ++c.explicit_refs;
        }
      }
    }
  }
  return c;
}

std::optional<double> implicit_ratio(const MarkerCounts& counts) {
  const std::size_t total = counts.implicit_refs + counts.explicit_refs;
  if (total == 0) return std::nullopt;
  return static_cast<double>(counts.implicit_refs) / static_cast<double>(total);
}

RelationshipAssessment assess_level(const MarkerCounts& counts,
                                    const RelationshipThresholds& thresholds) {
  thresholds.validate();
  RelationshipAssessment out;
  if (counts.distance_markers() >= thresholds.distance_lock) {
    out.level = RelationshipLevel::kL3;
    out.locked = true;
    return out;
  }
  std::size_t types = 0;
  if (counts.endearments_relational > 0) ++types;
  if (counts.private_space_refs > 0) ++types;
  if (counts.collective_pronouns >= thresholds.collective_floor) ++types;
  const std::optional<double> ratio = implicit_ratio(counts);
  if (ratio && *ratio >= thresholds.ratio_floor) ++types;
  if (types >= thresholds.intimacy_types && counts.distance_markers() == 0) {
    out.level = RelationshipLevel::kL1;
  } else if (counts.first_name_address >= 1 && counts.honorifics == 0) {
    out.level = RelationshipLevel::kL2;
  } else {
    out.level = RelationshipLevel::kL3;
  }
  return out;
}

RelationshipAssessment assess_window(const std::vector<Turn>& window_turns,
                                     const RelationshipLexicons& lex,
                                     const ResolverLexicons* resolver,
                                     const RelationshipThresholds& thresholds) {
  std::vector<MarkerEvidence> evidence;
  const MarkerCounts counts = extract_markers(window_turns, lex, resolver, &evidence);
  RelationshipAssessment out = assess_level(counts, thresholds);
  out.evidence = std::move(evidence);
  return out;
}

std::optional<RelationshipLevel> level_for_relationship(std::string_view label) {
  const std::string l = to_lower(trim(label));
  static const std::set<std::string> l3{"doctor", "lawyer", "manager", "client", "teacher"};
  static const std::set<std::string> l2{"colleague", "friend", "housemate", "housemates",
                                        "friends", "colleagues"};
  static const std::set<std::string> l1{"spouse", "family", "partner"};
  if (l3.count(l)) return RelationshipLevel::kL3;
  if (l2.count(l)) return RelationshipLevel::kL2;
  if (l1.count(l)) return RelationshipLevel::kL1;
  return std::nullopt;
}

}  // namespace concord
