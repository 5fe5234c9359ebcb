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

// Local reference resolution over the owner's one-sided transcript: mention
// extraction from a focus turn and a rule cascade that grounds mentions in
// the prior five kept turns and the owner's mobile context.

#ifndef CONCORD_CONTEXT_RESOLVER_H_
#define CONCORD_CONTEXT_RESOLVER_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "concord/core_model.h"
#include "concord/lexicon.h"

namespace concord {

inline constexpr std::size_t kHistoryTurns = 5;

struct ReferenceWindow {
  Turn focus;
  std::vector<Turn> history;  // oldest first, at most kHistoryTurns
  // Id of a masked slot sitting between the last kept turn and the focus.
  std::optional<int> masked_before_focus;
};

// Window for view.turns[focus_index]. Throws InvalidArgumentError when the
// index is out of range.
ReferenceWindow make_window(const OneSidedTranscript& view, std::size_t focus_index,
                            std::size_t history_turns = kHistoryTurns);

struct ResolverLexicons {
  TaggedPhraseSet temporal;   // tag: day:<offset> | now | distal | vague
  TaggedPhraseSet pronouns;   // tag: category of the referent
  TaggedPhraseSet entity_nouns;  // tag: category
  PhraseSet demonstratives;
  PhraseSet determiners;
  PhraseSet proximal;
  PhraseSet symptoms;
  PhraseSet medications;
  PhraseSet given_names;
  PhraseSet honorifics;
  PhraseSet place_suffixes;
  PhraseSet task_phrases;
  PhraseSet ack_cues;
  PhraseSet that_verbs;  // words after which a bare "that" is a pronoun

  static ResolverLexicons load(const std::filesystem::path& dir);
  // Loaded once from default_lexicon_dir().
  static const ResolverLexicons& defaults();
};

// Mentions inside one turn, ignoring anything that depends on the masked
// slots around it.
std::vector<EntityMention> extract_turn_mentions(const Turn& turn,
                                                 const ResolverLexicons& lex);

// Mentions in the focus turn, ordered by span. Adds an acknowledgment
// mention when the turn opens with an acknowledgment right after a masked
// slot.
std::vector<EntityMention> extract_mentions(const ReferenceWindow& window,
                                            const ResolverLexicons& lex);

struct ResolveContext {
  Role owner = Role::kUserA;
  // Anchor for relative temporal phrases; falls back to the snapshot clock.
  std::optional<DateTime> reference_clock;
};

// Grounds consulted while resolving one mention, in order.
struct ResolutionProbe {
  std::vector<std::string> consulted;
};

class ResolverBackend {
 public:
  virtual ~ResolverBackend() = default;
  virtual std::optional<ResolutionRecord> resolve(const EntityMention& mention,
                                                  const ReferenceWindow& window,
                                                  const MobileContextSnapshot& snapshot,
                                                  const ResolveContext& context,
                                                  ResolutionProbe* probe) const = 0;
};

// Deterministic lexicon and rule cascade.
class RuleBasedResolver : public ResolverBackend {
 public:
  explicit RuleBasedResolver(const ResolverLexicons& lex) : lex_(&lex) {}

  std::optional<ResolutionRecord> resolve(const EntityMention& mention,
                                          const ReferenceWindow& window,
                                          const MobileContextSnapshot& snapshot,
                                          const ResolveContext& context,
                                          ResolutionProbe* probe) const override;

 private:
  const ResolverLexicons* lex_;
};

// Rule cascade: literal, aux logs, calendar and clock anchoring, calendar
// aliases, proximal deixis, prior-turn antecedents. Absent means no rule
// fired.
std::optional<ResolutionRecord> resolve_local(const EntityMention& mention,
                                              const ReferenceWindow& window,
                                              const MobileContextSnapshot& snapshot,
                                              const ResolveContext& context,
                                              const ResolverLexicons& lex,
                                              ResolutionProbe* probe = nullptr);

struct ResolvedMention {
  EntityMention mention;
  std::optional<ResolutionRecord> resolution;
};

std::vector<ResolvedMention> resolve_window(const ReferenceWindow& window,
                                            const MobileContextSnapshot& snapshot,
                                            const ResolveContext& context,
                                            const ResolverBackend& backend,
                                            const ResolverLexicons& lex);

// Case-folded token-set Jaccard. Throws InvalidArgumentError on empty input.
double resolution_similarity(std::string_view predicted, std::string_view gold);

}  // namespace concord

#endif  // CONCORD_CONTEXT_RESOLVER_H_
