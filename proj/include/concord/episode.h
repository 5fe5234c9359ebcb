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

// End-to-end two-agent episode over a dataset record, its JSONL trace and the
// privacy audit run on trace dumps.

#ifndef CONCORD_EPISODE_H_
#define CONCORD_EPISODE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "concord/agent.h"
#include "concord/channel.h"
#include "concord/core_model.h"

namespace concord {

struct GapEntry {
  ProtocolQuery query;
  bool dispatched = false;
  std::string message_id;  // set when dispatched
};

struct AnalysisRecord {
  Role agent = Role::kUserA;
  int focus_turn_id = 0;
  double time = 0.0;
  RelationshipLevel level = RelationshipLevel::kL3;
  bool locked = false;
  std::vector<MarkerEvidence> evidence;
  std::vector<ResolutionRecord> resolutions;
  std::vector<int> candidate_turns;
  std::vector<GapEntry> gaps;
};

struct DecisionRecord {
  Role agent = Role::kUserB;  // the responder
  double time = 0.0;
  std::string message_id;
  int trigger_turn_id = 0;
  std::string target_slot;
  std::optional<std::string> candidate_answer;
  std::string candidate_source;
  Sensitivity sensitivity = Sensitivity::kLow;
  bool intent_elevated = false;
  RelationshipLevel level = RelationshipLevel::kL3;
  std::optional<DisclosureKind> gate;
  std::optional<ApprovalSignal> approval;
  DisclosureKind outcome = DisclosureKind::kSuppress;
  ResponseStatus status = ResponseStatus::kDeclined;
  std::vector<std::string> notes;
};

struct MergeRecord {
  Role agent = Role::kUserA;  // the requester
  double time = 0.0;
  std::string message_id;
  int trigger_turn_id = 0;
  MergeKind kind = MergeKind::kOrphan;
  std::optional<ResolutionRecord> resolution;
  std::string reason;
};

struct EpisodeTrace {
  std::string dataset_id;
  std::uint64_t seed = 0;
  EngineConfig engine;
  ChannelConfig channel;
  std::vector<AnalysisRecord> analyses;
  std::vector<DecisionRecord> decisions;
  std::vector<MergeRecord> merges;
  std::vector<ChannelEvent> channel_events;
  std::vector<std::string> log;

  // Local resolutions of both agents followed by merged A2A answers.
  std::vector<ResolutionRecord> resolutions() const;
  std::size_t dispatched_count() const;
};

EpisodeTrace run_episode(const DatasetRecord& record, const EngineConfig& engine,
                         const ChannelConfig& channel, const ApprovalPolicy& approval,
                         const AgentLexicons& lex = AgentLexicons::defaults());

// One JSON object per line: header, analysis, channel, decision, merge, footer.
// Decision lines carry "visibility": "private:<responder>".
std::string trace_to_jsonl(const EpisodeTrace& trace);

// Throws DecodeError or SchemaError.
EpisodeTrace parse_trace_jsonl(std::string_view text);

struct PrivacyViolation {
  std::string message_id;
  std::string content;
  std::size_t line = 0;  // 1-based line of the leak
};

// Withheld candidate answers must not appear in any line the requester can
// see: channel lines and the requester's merge lines. A candidate revealed
// by another, approved response is exempt.
std::vector<PrivacyViolation> privacy_audit(std::string_view jsonl);

// "<turn_id|*> <grant|deny|none>" per line; '#' starts a comment.
ApprovalPolicy parse_approval_script(std::string_view text);

}  // namespace concord

#endif  // CONCORD_EPISODE_H_
