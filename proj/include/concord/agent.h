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

// One user's assistant: analyses its owner's one-sided transcript, asks the
// peer about gaps, answers the peer's queries through the disclosure gate and
// merges answers it receives. An agent only ever holds its owner's data.

#ifndef CONCORD_AGENT_H_
#define CONCORD_AGENT_H_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "concord/codec.h"
#include "concord/context_resolver.h"
#include "concord/core_model.h"
#include "concord/disclosure_gate.h"
#include "concord/gap_detector.h"
#include "concord/relationship_engine.h"

namespace concord {

struct EngineConfig {
  std::size_t history_turns = kHistoryTurns;
  RelationshipThresholds thresholds;
  bool dispatch_low_value = false;
  double approval_delay = 1.0;  // simulated seconds the owner takes to answer
  double turn_spacing = 4.0;    // used when turns carry no start_time

  void validate() const;
};

// Borrowed lexicons; all must outlive the agent.
struct AgentLexicons {
  const ResolverLexicons* resolver = nullptr;
  const GapLexicons* gaps = nullptr;
  const RelationshipLexicons* relationship = nullptr;
  const SensitivityLexicon* sensitivity = nullptr;
  const PhraseSet* privacy_cues = nullptr;

  static AgentLexicons defaults();
};

// Asks the owner about an ApprovalLoop disclosure; nullopt means no answer
// before the deadline.
using ApprovalPolicy = std::function<std::optional<ApprovalSignal>(const QueryRequest&)>;

ApprovalPolicy approve_all(ApprovalSignal signal);

struct TurnAnalysis {
  int focus_turn_id = 0;
  std::vector<ResolvedMention> mentions;
  std::vector<int> candidate_turns;  // attributed turn of every mention
  GapAnalysis gaps;
  RelationshipAssessment relationship;
};

struct DisclosureDecision {
  std::string message_id;
  int trigger_turn_id = 0;
  std::string target_slot;
  std::string phrase;
  std::optional<std::string> candidate_answer;  // absent when nothing matched
  std::string candidate_source;
  Sensitivity sensitivity = Sensitivity::kLow;
  bool intent_elevated = false;
  RelationshipAssessment relationship;
  std::optional<DisclosureKind> gate;  // matrix or lock outcome
  std::optional<ApprovalSignal> approval;
  DisclosureKind outcome = DisclosureKind::kSuppress;
  std::vector<std::string> notes;
  ResponseStatus status = ResponseStatus::kDeclined;
};

struct RespondResult {
  std::vector<QueryResponse> responses;  // an optional interim one, then the final
  DisclosureDecision decision;
};

enum class MergeKind { kResolved, kWithheld, kPending, kOrphan, kDuplicate };

std::string_view merge_kind_name(MergeKind kind);

struct MergeResult {
  MergeKind kind = MergeKind::kOrphan;
  std::string message_id;
  int trigger_turn_id = 0;
  std::optional<ResolutionRecord> resolution;
  std::string reason;  // withheld reason or log note
};

struct UnresolvedGap {
  std::string message_id;
  int trigger_turn_id = 0;
  std::string phrase;
  std::string reason;  // DECLINED, DECLINED:NOT_FOUND, TIMED_OUT
};

class Agent {
 public:
  Agent(Role owner, OneSidedTranscript view, MobileContextSnapshot snapshot, AgentLexicons lex,
        EngineConfig config);

  Role owner() const { return owner_; }
  const OneSidedTranscript& view() const { return view_; }

  // Resolution, gap detection and relationship assessment for one kept turn.
  TurnAnalysis analyze(std::size_t focus_index) const;

  // Queries worth sending from an analysis; skips ones already asked.
  std::vector<ProtocolQuery> select_queries(const TurnAnalysis& analysis);

  // Answers a peer query from this agent's own data only.
  RespondResult respond(const QueryRequest& request, const ApprovalPolicy& approval,
                        double now) const;

  // Requester side bookkeeping.
  void track(const QueryRequest& request);
  MergeResult merge_response(const QueryResponse& response);
  // Marks the query TIMED_OUT if it is still open.
  std::optional<MergeResult> expire(const std::string& message_id);

  bool is_open(const std::string& message_id) const;
  std::vector<std::string> open_queries() const;
  const std::vector<ResolutionRecord>& a2a_resolutions() const { return a2a_resolutions_; }
  const std::vector<UnresolvedGap>& unresolved() const { return unresolved_; }
  const std::vector<std::string>& log() const { return log_; }

 private:
  struct Outstanding {
    QueryRequest request;
    bool closed = false;
  };

  ReferenceWindow window_at(std::size_t index) const;

  Role owner_;
  OneSidedTranscript view_;
  MobileContextSnapshot snapshot_;
  AgentLexicons lex_;
  EngineConfig config_;
  RuleBasedResolver backend_;

  std::set<std::tuple<int, std::string, std::string>> asked_;
  std::map<std::string, Outstanding> outstanding_;
  std::vector<ResolutionRecord> a2a_resolutions_;
  std::vector<UnresolvedGap> unresolved_;
  std::vector<std::string> log_;
};

// The quoted phrase in a fallback built by build_query, or empty.
std::string phrase_from_fallback(std::string_view fallback);

// Entity category a target slot asks about, if the slot implies one.
std::optional<EntityCategory> category_for_slot(std::string_view slot);

}  // namespace concord

#endif  // CONCORD_AGENT_H_
