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

#include <random>
#include <thread>

#include <gtest/gtest.h>

#include "concord/agent.h"
#include "concord/channel.h"
#include "concord/codec.h"
#include "concord/dataset.h"
#include "concord/fixtures.h"

namespace concord {
namespace {

// Codec ----------------------------------------------------------------------

constexpr char kTurn44[] =
    R"({"trigger_turn_id":44,"query_quality_check":"HIGH_VALUE","reason":"User B references )"
    R"(the MRI location ('that center I recommended'), but User A agent may miss the exact )"
    R"(entity.","protocol_payload":{"intent":"RESOLVE_MISSING_ENTITY","target_slot":)"
    R"("LOCATION_DESTINATION","urgency":"IMMEDIATE","context_ref":"Turn 44"},)"
    R"("natural_language_fallback":"Requesting MRI center name from Turn 44."})";

TEST(CodecTest, AppendixTurn44IsByteStable) {
  const ProtocolQuery q = decode_query(kTurn44);
  EXPECT_EQ(q.trigger_turn_id, 44);
  EXPECT_EQ(q.target_slot, "LOCATION_DESTINATION");
  EXPECT_EQ(q.urgency, Urgency::kImmediate);
  EXPECT_EQ(encode_query(q), kTurn44);
  // Key order in the input does not matter for the canonical form.
  const std::string reordered =
      R"({"natural_language_fallback":"Requesting MRI center name from Turn 44.",)"
      R"("protocol_payload":{"urgency":"IMMEDIATE","context_ref":"Turn 44",)"
      R"("target_slot":"LOCATION_DESTINATION","intent":"RESOLVE_MISSING_ENTITY"},)"
      R"("reason":"User B references the MRI location ('that center I recommended'), but )"
      R"(User A agent may miss the exact entity.","query_quality_check":"HIGH_VALUE",)"
      R"("trigger_turn_id":44})";
  EXPECT_EQ(encode_query(decode_query(reordered)), kTurn44);
}

TEST(CodecTest, FixtureQueryMatchesTheAppendixBytes) {
  const auto rec = load_dataset(default_fixture_dir() / "doctor_patient.json");
  bool seen = false;
  for (const auto& q : rec.required_protocol_queries) {
    if (q.trigger_turn_id != 44) continue;
    seen = true;
    EXPECT_EQ(encode_query(q), kTurn44);
  }
  EXPECT_TRUE(seen);
}

TEST(CodecTest, RequestWireFieldNames) {
  ProtocolQuery q = decode_query(kTurn44);
  const std::string wire = encode(make_request(q, "UserA-q001", "conv-1", 12.5));
  EXPECT_EQ(wire,
            R"({"type":"query","message_id":"UserA-q001","conversation_id":"conv-1",)"
            R"("trigger_turn_id":44,"protocol_payload":{"intent":"RESOLVE_MISSING_ENTITY",)"
            R"("target_slot":"LOCATION_DESTINATION","urgency":"IMMEDIATE","context_ref":)"
            R"("Turn 44"},"natural_language_fallback":"Requesting MRI center name from Turn )"
            R"(44.","sent_at":12.5})");
}

std::string random_text(std::mt19937_64& rng) {
  static const char* words[] = {"Medical", "Imaging", "Center,", "4:30", "PM", "\"quoted\"",
                                "caf\xc3\xa9", "tab\there", "line\nbreak", "back\\slash"};
  std::string s;
  const std::size_t n = 1 + rng() % 6;
  for (std::size_t i = 0; i < n; ++i) s += std::string(i ? " " : "") + words[rng() % 10];
  return s;
}

Message random_message(std::mt19937_64& rng) {
  if (rng() % 2 == 0) {
    QueryRequest r;
    r.message_id = "UserA-q" + std::to_string(rng() % 1000);
    r.conversation_id = random_text(rng);
    r.trigger_turn_id = 1 + static_cast<int>(rng() % 90);
    r.protocol_payload.target_slot = rng() % 2 ? "LOCATION_DESTINATION" : "APPOINTMENT_TIME";
    r.protocol_payload.urgency = static_cast<Urgency>(rng() % 3);
    if (rng() % 2) r.protocol_payload.context_ref = "Turn " + std::to_string(r.trigger_turn_id);
    r.natural_language_fallback = random_text(rng);
    r.sent_at = static_cast<double>(rng() % 100000) / 64.0;
    return r;
  }
  QueryResponse r;
  r.message_id = "UserB-q" + std::to_string(rng() % 1000);
  r.status = static_cast<ResponseStatus>(rng() % 5);
  if (r.status == ResponseStatus::kAnswered || r.status == ResponseStatus::kPartial) {
    r.content = random_text(rng);
    r.masked = r.status == ResponseStatus::kPartial && rng() % 2;
  }
  if (r.status == ResponseStatus::kDeclined && rng() % 2) r.reason = std::string(kReasonNotFound);
  r.sent_at = static_cast<double>(rng() % 100000) / 64.0;
  return r;
}

TEST(CodecTest, RoundTripRandomMessages) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 500; ++i) {
    const Message m = random_message(rng);
    const std::string wire = encode(m);
    EXPECT_EQ(decode(wire), m) << wire;
    EXPECT_EQ(encode(decode(wire)), wire);
  }
}

TEST(CodecTest, MinimalMessagesRoundTrip) {
  QueryRequest q;
  q.message_id = "m";
  q.conversation_id = "c";
  q.trigger_turn_id = 1;
  q.protocol_payload.target_slot = "GENERAL_ATTRIBUTE";
  q.natural_language_fallback = "f";
  EXPECT_EQ(decode(encode(q)), Message(q));
  QueryResponse r;
  r.message_id = "m";
  r.status = ResponseStatus::kTimedOut;
  EXPECT_EQ(decode(encode(r)), Message(r));
}

TEST(CodecTest, StrictRejectsRenamedAndUnknownFields) {
  const std::string wire = encode(make_request(decode_query(kTurn44), "m1", "c", 0));
  for (const auto& [from, to] : std::vector<std::pair<std::string, std::string>>{
           {"\"trigger_turn_id\"", "\"triggerTurnId\""},
           {"\"target_slot\"", "\"slot\""},
           {"\"natural_language_fallback\"", "\"fallback\""},
           {"\"message_id\"", "\"id\""},
           {"\"urgency\"", "\"priority\""}}) {
    std::string renamed = wire;
    renamed.replace(renamed.find(from), from.size(), to);
    EXPECT_THROW(decode(renamed, DecodeMode::kStrict), SchemaError) << to;
  }
  std::string extra = wire;
  extra.insert(extra.size() - 1, R"(,"x_trace":{"hop":1})");
  EXPECT_THROW(decode(extra, DecodeMode::kStrict), SchemaError);
  const Message lenient = decode(extra, DecodeMode::kLenient);
  const auto& req = std::get<QueryRequest>(lenient);
  ASSERT_EQ(req.extra.size(), 1u);
  EXPECT_EQ(req.extra[0].first, "x_trace");
  EXPECT_EQ(req.extra[0].second, R"({"hop":1})");
}

TEST(CodecTest, ErrorsCarryLocation) {
  try {
    decode(R"({"type":"query", oops})");
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_GT(e.byte_offset(), 10u);
  }
  try {
    decode(R"({"type":"response","message_id":"m","status":"MAYBE","masked":false,"sent_at":0})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.field(), "status");
  }
}

TEST(CodecTest, ResponseInvariants) {
  QueryResponse r;
  r.message_id = "m";
  r.status = ResponseStatus::kDeclined;
  r.content = "leak";
  EXPECT_THROW(encode(r), SchemaError);
  r.status = ResponseStatus::kAnswered;
  r.masked = true;
  EXPECT_THROW(encode(r), SchemaError);
  r.masked = false;
  r.content.reset();
  EXPECT_THROW(encode(r), SchemaError);
}

// Channel --------------------------------------------------------------------

TEST(ChannelTest, DeliversAfterLatencyInSendOrder) {
  SimChannel ch({2.0, 0.0, 5.0, 1});
  EXPECT_TRUE(ch.send(Role::kUserA, "a1", "w1", 0.0));
  EXPECT_TRUE(ch.send(Role::kUserA, "a2", "w2", 0.5));
  EXPECT_TRUE(ch.poll(Role::kUserB, 1.99).empty());
  EXPECT_TRUE(ch.poll(Role::kUserA, 10.0).empty());  // not addressed to A
  EXPECT_EQ(ch.next_delivery_time(), 2.0);
  const auto got = ch.poll(Role::kUserB, 2.5);
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0].message_id, "a1");
  EXPECT_EQ(got[1].message_id, "a2");
  EXPECT_FALSE(ch.next_delivery_time());
}

TEST(ChannelTest, DropAll) {
  SimChannel ch({0.5, 1.0, 5.0, 3});
  for (int i = 0; i < 50; ++i) EXPECT_FALSE(ch.send(Role::kUserA, "m", "w", i));
  EXPECT_TRUE(ch.poll(Role::kUserB, 1e9).empty());
}

TEST(ChannelTest, SeededDropsReplayExactly) {
  auto run = [](std::uint64_t seed) {
    SimChannel ch({0.5, 0.3, 5.0, seed});
    for (int i = 0; i < 200; ++i) ch.send(i % 2 ? Role::kUserA : Role::kUserB, "m", "w", i);
    ch.poll(Role::kUserA, 1e9);
    ch.poll(Role::kUserB, 1e9);
    return ch.events();
  };
  EXPECT_EQ(run(9), run(9));
  EXPECT_NE(run(9), run(10));
}

TEST(ChannelTest, ConcurrentEndpoints) {
  SimChannel ch({0.1, 0.0, 5.0, 0});
  auto pump = [&](Role r) {
    for (int i = 0; i < 500; ++i) ch.send(r, "m", "w", i);
  };
  std::thread a(pump, Role::kUserA), b(pump, Role::kUserB);
  a.join();
  b.join();
  EXPECT_EQ(ch.poll(Role::kUserA, 1e9).size(), 500u);
  EXPECT_EQ(ch.poll(Role::kUserB, 1e9).size(), 500u);
}

TEST(ChannelTest, ConfigValidation) {
  EXPECT_THROW(ChannelConfig({-1.0, 0.0, 5.0, 0}).validate(), InvalidArgumentError);
  EXPECT_THROW(ChannelConfig({0.5, 1.5, 5.0, 0}).validate(), InvalidArgumentError);
  EXPECT_THROW(ChannelConfig({0.5, 0.0, 0.0, 0}).validate(), InvalidArgumentError);
}

// Agent ----------------------------------------------------------------------

std::vector<Turn> clinic_transcript() {
  return {{41, Role::kUserA, "Thank you, Dr. Sharma.", {}},
          {42, Role::kUserB, "Could you come in for the blood test at 2 PM?", {}},
          {43, Role::kUserA, "Yes, I can.", {}},
          {44, Role::kUserB,
           "And for the MRI, you have a slot at that center I recommended, right?", {}},
          {45, Role::kUserA, "Yes, it's booked for tomorrow, 4:30 PM.", {}},
          {46, Role::kUserB, "Good. Please bring your insurance card.", {}}};
}

MobileContextSnapshot doctor_snapshot() {
  MobileContextSnapshot s;
  s.location_semantic = "Dr. Sharma's Clinic, Patient Room 2";
  s.local_time = parse_datetime("2024-06-12T10:30:00");
  s.calendar.push_back({"MRI referral: Samantha", *parse_datetime("2024-06-13T16:30:00"),
                        *parse_datetime("2024-06-13T17:30:00"),
                        std::string("Medical Imaging Center, West Campus, Austin")});
  return s;
}

Agent doctor(const AgentLexicons& lex = AgentLexicons::defaults()) {
  return Agent(Role::kUserB, one_sided_view(clinic_transcript(), Role::kUserB),
               doctor_snapshot(), lex, EngineConfig{});
}

QueryRequest center_query() {
  ProtocolQuery q;
  q.trigger_turn_id = 44;
  q.target_slot = "LOCATION_DESTINATION";
  q.urgency = Urgency::kImmediate;
  q.context_ref = "Turn 44";
  q.natural_language_fallback =
      "Requesting LOCATION_DESTINATION for 'that center I recommended' from Turn 44.";
  return make_request(q, "UserA-q001", "c", 10.0);
}

TEST(RespondTest, ApprovalLoopThenAnswered) {
  const Agent b = doctor();
  const RespondResult r = b.respond(center_query(), approve_all(ApprovalSignal::kGranted), 10.5);
  EXPECT_EQ(r.decision.relationship.level, RelationshipLevel::kL3);
  EXPECT_EQ(r.decision.sensitivity, Sensitivity::kLow);
  EXPECT_EQ(r.decision.gate, DisclosureKind::kApprovalLoop);
  ASSERT_EQ(r.responses.size(), 2u);
  EXPECT_EQ(r.responses[0].status, ResponseStatus::kPendingApproval);
  EXPECT_FALSE(r.responses[0].content);
  EXPECT_EQ(r.responses[1].status, ResponseStatus::kAnswered);
  EXPECT_EQ(r.responses[1].content, "Medical Imaging Center, West Campus, Austin");
  EXPECT_EQ(r.responses[1].message_id, "UserA-q001");
  EXPECT_GT(r.responses[1].sent_at, r.responses[0].sent_at);
}

TEST(RespondTest, DeniedOrAbsentApprovalDeclines) {
  const Agent b = doctor();
  for (const ApprovalPolicy& p :
       {approve_all(ApprovalSignal::kDenied),
        ApprovalPolicy([](const QueryRequest&) { return std::optional<ApprovalSignal>{}; })}) {
    const RespondResult r = b.respond(center_query(), p, 10.5);
    EXPECT_EQ(r.responses.back().status, ResponseStatus::kDeclined);
    EXPECT_FALSE(r.responses.back().content);
    EXPECT_FALSE(r.responses.back().reason);
  }
}

TEST(RespondTest, HighSensitivityAtL3IsDeclined) {
  static const SensitivityLexicon high =
      SensitivityLexicon::parse("slot LOCATION_DESTINATION High\n");
  AgentLexicons lex = AgentLexicons::defaults();
  lex.sensitivity = &high;
  const Agent b = doctor(lex);
  const RespondResult r = b.respond(center_query(), approve_all(ApprovalSignal::kGranted), 10.5);
  EXPECT_EQ(r.decision.sensitivity, Sensitivity::kHigh);
  ASSERT_EQ(r.responses.size(), 1u);
  EXPECT_EQ(r.responses[0].status, ResponseStatus::kDeclined);
  EXPECT_FALSE(r.responses[0].content);
  EXPECT_FALSE(r.responses[0].reason);  // suppression does not say why
}

TEST(RespondTest, UnknownEntityIsNotFound) {
  QueryRequest q = center_query();
  q.trigger_turn_id = 46;
  q.protocol_payload.target_slot = "OBJECT_FEATURE";
  q.natural_language_fallback = "Requesting OBJECT_FEATURE for 'the red umbrella' from Turn 46.";
  const RespondResult r = doctor().respond(q, approve_all(ApprovalSignal::kGranted), 11.0);
  ASSERT_EQ(r.responses.size(), 1u);
  EXPECT_EQ(r.responses[0].status, ResponseStatus::kDeclined);
  EXPECT_EQ(r.responses[0].reason, std::string(kReasonNotFound));
}

TEST(AgentTest, RejectsTheOtherUsersView) {
  EXPECT_THROW(Agent(Role::kUserB, one_sided_view(clinic_transcript(), Role::kUserA),
                     doctor_snapshot(), AgentLexicons::defaults(), EngineConfig{}),
               InvalidArgumentError);
}

Agent patient() {
  return Agent(Role::kUserA, one_sided_view(clinic_transcript(), Role::kUserA), {},
               AgentLexicons::defaults(), EngineConfig{});
}

TEST(MergeTest, AnsweredBecomesAnA2AResolution) {
  Agent a = patient();
  const QueryRequest q = center_query();
  a.track(q);
  EXPECT_TRUE(a.is_open(q.message_id));
  QueryResponse pending{q.message_id, ResponseStatus::kPendingApproval, {}, false, {}, 11, {}};
  EXPECT_EQ(a.merge_response(pending).kind, MergeKind::kPending);
  EXPECT_TRUE(a.is_open(q.message_id));
  QueryResponse ok{q.message_id, ResponseStatus::kAnswered, "8 AM", false, {}, 12, {}};
  const MergeResult m = a.merge_response(ok);
  EXPECT_EQ(m.kind, MergeKind::kResolved);
  ASSERT_TRUE(m.resolution);
  EXPECT_EQ(m.resolution->resolution_source, "A2A:UserB");
  EXPECT_EQ(m.resolution->resolved_entity, "8 AM");
  EXPECT_EQ(m.resolution->ambiguous_phrase, "that center I recommended");
  EXPECT_EQ(m.resolution->trigger_turn_id, 44);
  EXPECT_FALSE(a.is_open(q.message_id));
  EXPECT_EQ(a.a2a_resolutions().size(), 1u);
}

TEST(MergeTest, DeclinedClosesAsWithheld) {
  Agent a = patient();
  a.track(center_query());
  QueryResponse no{"UserA-q001", ResponseStatus::kDeclined, {}, false,
                   std::string(kReasonNotFound), 12, {}};
  const MergeResult m = a.merge_response(no);
  EXPECT_EQ(m.kind, MergeKind::kWithheld);
  ASSERT_EQ(a.unresolved().size(), 1u);
  EXPECT_EQ(a.unresolved()[0].reason, "DECLINED:NOT_FOUND");
  EXPECT_FALSE(a.is_open("UserA-q001"));
}

TEST(MergeTest, DuplicateAndOrphanAreLogged) {
  Agent a = patient();
  a.track(center_query());
  QueryResponse ok{"UserA-q001", ResponseStatus::kAnswered, "x", false, {}, 12, {}};
  a.merge_response(ok);
  EXPECT_EQ(a.merge_response(ok).kind, MergeKind::kDuplicate);
  ok.message_id = "nope";
  EXPECT_EQ(a.merge_response(ok).kind, MergeKind::kOrphan);
  EXPECT_EQ(a.log().size(), 2u);
  EXPECT_EQ(a.a2a_resolutions().size(), 1u);
}

TEST(MergeTest, ExpireMarksTimedOutOnce) {
  Agent a = patient();
  a.track(center_query());
  const auto m = a.expire("UserA-q001");
  ASSERT_TRUE(m);
  EXPECT_EQ(m->reason, "TIMED_OUT");
  EXPECT_FALSE(a.expire("UserA-q001"));
  EXPECT_TRUE(a.open_queries().empty());
}

TEST(HelpersTest, FallbackPhraseAndSlotCategory) {
  EXPECT_EQ(phrase_from_fallback(
                "Requesting LOCATION_DESTINATION for 'that center I recommended' from Turn 44."),
            "that center I recommended");
  EXPECT_EQ(phrase_from_fallback("Requesting MRI center name from Turn 44."), "");
  EXPECT_EQ(category_for_slot("APPOINTMENT_TIME"), EntityCategory::kTemporal);
  EXPECT_EQ(category_for_slot("OBJECT_DOCUMENT"), EntityCategory::kObject);
  EXPECT_FALSE(category_for_slot("GENERAL_ATTRIBUTE"));
}

}  // namespace
}  // namespace concord
