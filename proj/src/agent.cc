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

#include "concord/agent.h"

#include <algorithm>
#include <regex>

#include <fmt/format.h>

#include "concord/text.h"

namespace concord {

void EngineConfig::validate() const {
  thresholds.validate();
  if (history_turns == 0) throw InvalidArgumentError("history_turns must be positive");
  if (!(approval_delay >= 0.0)) throw InvalidArgumentError("approval_delay must be >= 0");
  if (!(turn_spacing > 0.0)) throw InvalidArgumentError("turn_spacing must be positive");
}

AgentLexicons AgentLexicons::defaults() {
  return {&ResolverLexicons::defaults(), &GapLexicons::defaults(),
          &RelationshipLexicons::defaults(), &SensitivityLexicon::defaults(),
          &default_privacy_cues()};
}

ApprovalPolicy approve_all(ApprovalSignal signal) {
  return [signal](const QueryRequest&) { return std::optional<ApprovalSignal>(signal); };
}

std::string_view merge_kind_name(MergeKind kind) {
  switch (kind) {
    case MergeKind::kResolved: return "resolved";
    case MergeKind::kWithheld: return "withheld";
    case MergeKind::kPending: return "pending";
    case MergeKind::kOrphan: return "orphan";
    case MergeKind::kDuplicate: return "duplicate";
  }
  return "orphan";
}

std::string phrase_from_fallback(std::string_view fallback) {
  static const std::regex re(R"(for '(.*)' from Turn \d+\.?$)");
  std::match_results<std::string_view::const_iterator> m;
  if (std::regex_search(fallback.begin(), fallback.end(), m, re)) return m[1].str();
  return std::string();
}

std::optional<EntityCategory> category_for_slot(std::string_view slot) {
  if (slot == "SYMPTOM_LOCATION" || slot == "LOCATION_DESTINATION") {
    return EntityCategory::kSpatial;
  }
  if (slot == "APPOINTMENT_TIME") return EntityCategory::kTemporal;
  if (slot == "PERSON_GROUP_LIST") return EntityCategory::kPerson;
  if (slot.rfind("OBJECT_", 0) == 0) return EntityCategory::kObject;
  if (slot == "SYMPTOM_ESCALATION_POLICY") return EntityCategory::kTask;
  return std::nullopt;
}

Agent::Agent(Role owner, OneSidedTranscript view, MobileContextSnapshot snapshot,
             AgentLexicons lex, EngineConfig config)
    : owner_(owner),
      view_(std::move(view)),
      snapshot_(std::move(snapshot)),
      lex_(lex),
      config_(config),
      backend_(*lex.resolver) {
  if (!lex_.resolver || !lex_.gaps || !lex_.relationship || !lex_.sensitivity ||
      !lex_.privacy_cues) {
    throw InvalidArgumentError("agent lexicons are incomplete");
  }
  if (view_.owner != owner_) throw InvalidArgumentError("view belongs to the other user");
  config_.validate();
}

ReferenceWindow Agent::window_at(std::size_t index) const {
  return make_window(view_, index, config_.history_turns);
}

namespace {

std::vector<Turn> window_turns(const ReferenceWindow& w) {
  std::vector<Turn> turns = w.history;
  turns.push_back(w.focus);
  return turns;
}

}  // namespace

TurnAnalysis Agent::analyze(std::size_t focus_index) const {
  const ReferenceWindow window = window_at(focus_index);
  TurnAnalysis out;
  out.focus_turn_id = window.focus.turn_id;
  out.mentions = resolve_window(window, snapshot_, {owner_, std::nullopt}, backend_,
                                *lex_.resolver);
  for (const ResolvedMention& rm : out.mentions) {
    out.candidate_turns.push_back(attributed_turn(rm.mention, rm.resolution.has_value(), window));
  }
  out.gaps = analyze_gaps(window, out.mentions, *lex_.gaps);
  out.relationship = assess_window(window_turns(window), *lex_.relationship, lex_.resolver,
                                   config_.thresholds);
  return out;
}

std::vector<ProtocolQuery> Agent::select_queries(const TurnAnalysis& analysis) {
  std::vector<ProtocolQuery> out;
  for (const ProtocolQuery& q : analysis.gaps.queries) {
    if (q.quality == QueryQuality::kLowValue && !config_.dispatch_low_value) continue;
    auto key = std::make_tuple(q.trigger_turn_id, q.target_slot,
                               phrase_from_fallback(q.natural_language_fallback));
    if (!asked_.insert(std::move(key)).second) continue;
    out.push_back(q);
  }
  return out;
}

RespondResult Agent::respond(const QueryRequest& request, const ApprovalPolicy& approval,
                             double now) const {
  RespondResult out;
  DisclosureDecision& d = out.decision;
  d.message_id = request.message_id;
  d.trigger_turn_id = request.trigger_turn_id;
  d.target_slot = request.protocol_payload.target_slot;
  d.phrase = phrase_from_fallback(request.natural_language_fallback);

  const int t = request.trigger_turn_id;
  // The trigger turn first, then the reply after it, then the turn before.
  std::vector<std::size_t> near;
  for (int id : {t, t + 1, t - 1}) {
    for (std::size_t i = 0; i < view_.turns.size(); ++i) {
      if (view_.turns[i].turn_id == id) near.push_back(i);
    }
  }
  std::size_t focus = 0;
  for (std::size_t i = 0; i < view_.turns.size(); ++i) {
    if (view_.turns[i].turn_id <= t + 1) focus = i;
  }

  const std::vector<std::string> phrase_tokens = token_set(d.phrase);
  const auto in_phrase = [&](const std::string& head) {
    const std::vector<std::string> h = token_set(head);
    return !h.empty() && std::includes(phrase_tokens.begin(), phrase_tokens.end(), h.begin(),
                                       h.end());
  };
  const std::optional<EntityCategory> slot_category = category_for_slot(d.target_slot);

  std::vector<ResolvedMention> pool;
  for (std::size_t i : near) {
    for (ResolvedMention& rm : resolve_window(window_at(i), snapshot_, {owner_, std::nullopt},
                                              backend_, *lex_.resolver)) {
      pool.push_back(std::move(rm));
    }
  }
  const ResolvedMention* match = nullptr;
  for (int pass = 0; pass < 2 && !match; ++pass) {
    for (const ResolvedMention& rm : pool) {
      const EntityMention& m = rm.mention;
      const bool hit = pass == 0 ? (in_phrase(m.head) || to_lower(m.surface) == to_lower(d.phrase))
                                 : (slot_category && m.category == *slot_category);
      if (hit && rm.resolution) {
        match = &rm;
        break;
      }
    }
  }

  const ReferenceWindow window = window_at(focus);
  const std::vector<Turn> turns = window_turns(window);
  d.relationship = assess_window(turns, *lex_.relationship, lex_.resolver, config_.thresholds);
  d.intent_elevated = detect_privacy_intent(turns, *lex_.privacy_cues);

  QueryResponse final_response;
  final_response.message_id = request.message_id;
  final_response.sent_at = now;
  if (!match) {
    d.status = ResponseStatus::kDeclined;
    d.outcome = DisclosureKind::kSuppress;
    d.notes.push_back("no local grounding for the requested entity");
    final_response.status = ResponseStatus::kDeclined;
    final_response.reason = std::string(kReasonNotFound);
    out.responses.push_back(std::move(final_response));
    return out;
  }

  d.candidate_answer = match->resolution->resolved_entity;
  d.candidate_source = match->resolution->resolution_source;
  ProtocolQuery query;
  query.trigger_turn_id = t;
  query.intent = request.protocol_payload.intent;
  query.target_slot = request.protocol_payload.target_slot;
  query.urgency = request.protocol_payload.urgency;
  query.context_ref = request.protocol_payload.context_ref;
  query.natural_language_fallback = request.natural_language_fallback;
  d.sensitivity = classify_sensitivity(query, *d.candidate_answer, *lex_.sensitivity);

  DisclosureRequest req{query, *d.candidate_answer, d.sensitivity, d.relationship,
                        d.intent_elevated};
  d.gate = gate_outcome(req);
  if (*d.gate == DisclosureKind::kApprovalLoop) {
    QueryResponse pending;
    pending.message_id = request.message_id;
    pending.status = ResponseStatus::kPendingApproval;
    pending.sent_at = now;
    out.responses.push_back(std::move(pending));
    d.approval = approval ? approval(request) : std::nullopt;
    final_response.sent_at = now + config_.approval_delay;
    if (!d.approval) d.notes.push_back("no approval before the deadline");
  }
  const DisclosureOutcome outcome =
      finalize(req, *d.gate, d.approval, *lex_.sensitivity, &d.notes);
  d.outcome = outcome.kind();
  if (outcome.kind() == DisclosureKind::kDirectReveal) {
    d.status = ResponseStatus::kAnswered;
    final_response.content = outcome.content();
  } else if (outcome.kind() == DisclosureKind::kPartialReveal) {
    d.status = ResponseStatus::kPartial;
    final_response.content = outcome.content();
    final_response.masked = true;
  } else {
    // Suppress and Abort look the same on the wire.
    d.status = ResponseStatus::kDeclined;
  }
  final_response.status = d.status;
  out.responses.push_back(std::move(final_response));
  return out;
}

void Agent::track(const QueryRequest& request) {
  outstanding_[request.message_id] = {request, false};
}

MergeResult Agent::merge_response(const QueryResponse& response) {
  MergeResult r;
  r.message_id = response.message_id;
  const auto it = outstanding_.find(response.message_id);
  if (it == outstanding_.end()) {
    r.kind = MergeKind::kOrphan;
    r.reason = "orphan response";
    log_.push_back(fmt::format("orphan response {}", response.message_id));
    return r;
  }
  Outstanding& o = it->second;
  r.trigger_turn_id = o.request.trigger_turn_id;
  if (o.closed) {
    r.kind = MergeKind::kDuplicate;
    r.reason = "query already closed";
    log_.push_back(fmt::format("duplicate response {} ignored", response.message_id));
    return r;
  }
  const std::string phrase = phrase_from_fallback(o.request.natural_language_fallback);
  switch (response.status) {
    case ResponseStatus::kPendingApproval:
      r.kind = MergeKind::kPending;
      r.reason = "peer is waiting for owner approval";
      return r;
    case ResponseStatus::kAnswered:
    case ResponseStatus::kPartial: {
      ResolutionRecord rec{o.request.trigger_turn_id, phrase, response.content.value_or(""),
                           "A2A:" + std::string(role_id(other(owner_)))};
      a2a_resolutions_.push_back(rec);
      r.kind = MergeKind::kResolved;
      r.resolution = std::move(rec);
      break;
    }
    case ResponseStatus::kDeclined:
    case ResponseStatus::kTimedOut: {
      std::string reason(status_name(response.status));
      if (response.reason) reason += ":" + *response.reason;
      unresolved_.push_back({response.message_id, o.request.trigger_turn_id, phrase, reason});
      r.kind = MergeKind::kWithheld;
      r.reason = std::move(reason);
      break;
    }
  }
  o.closed = true;
  return r;
}

std::optional<MergeResult> Agent::expire(const std::string& message_id) {
  const auto it = outstanding_.find(message_id);
  if (it == outstanding_.end() || it->second.closed) return std::nullopt;
  QueryResponse timed_out;
  timed_out.message_id = message_id;
  timed_out.status = ResponseStatus::kTimedOut;
  return merge_response(timed_out);
}

bool Agent::is_open(const std::string& message_id) const {
  const auto it = outstanding_.find(message_id);
  return it != outstanding_.end() && !it->second.closed;
}

std::vector<std::string> Agent::open_queries() const {
  std::vector<std::string> out;
  for (const auto& [id, o] : outstanding_) {
    if (!o.closed) out.push_back(id);
  }
  return out;
}

}  // namespace concord
