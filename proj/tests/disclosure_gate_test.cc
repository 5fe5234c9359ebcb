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

#include "concord/disclosure_gate.h"

#include <random>

#include <gtest/gtest.h>

namespace concord {
namespace {

using L = RelationshipLevel;
using S = Sensitivity;
using D = DisclosureKind;

const SensitivityLexicon& slex() { return SensitivityLexicon::defaults(); }

ProtocolQuery query(std::string slot = "LOCATION_DESTINATION") {
  ProtocolQuery q;
  q.trigger_turn_id = 44;
  q.target_slot = std::move(slot);
  q.urgency = Urgency::kImmediate;
  return q;
}

DisclosureRequest request(S s, L level, bool intent = false,
                          std::string answer = "Medical Imaging Center, West Campus, Austin") {
  DisclosureRequest r;
  r.query = query();
  r.candidate_answer = std::move(answer);
  r.sensitivity = s;
  r.relationship.level = level;
  r.intent_elevated = intent;
  return r;
}

std::vector<Turn> own(std::initializer_list<const char*> texts) {
  std::vector<Turn> out;
  int id = 1;
  for (const char* t : texts) out.push_back({id++, Role::kUserA, t, std::nullopt});
  return out;
}

TEST(ClassifyTest, Grades) {
  EXPECT_EQ(classify_sensitivity(query(), "Account 12345678901, routing 021000021", slex()),
            S::kCritical);
  EXPECT_EQ(classify_sensitivity(query(), "My password is hunter2", slex()), S::kCritical);
  EXPECT_EQ(classify_sensitivity(query("SYMPTOM_ESCALATION_POLICY"),
                                 "Call the clinic if the dizziness returns", slex()),
            S::kHigh);
  EXPECT_EQ(classify_sensitivity(query(), "Meet at 8 AM at Medical Imaging Center", slex()),
            S::kLow);
  EXPECT_THROW(classify_sensitivity(query(), "", slex()), InvalidArgumentError);
}

TEST(ClassifyTest, LexiconParsing) {
  const auto lx = SensitivityLexicon::parse(
      "# c\nHigh diagnosis\nCritical passport\nslot X_SLOT Mid\npattern Critical \\d{9}\n");
  EXPECT_EQ(classify_sensitivity(query(), "the diagnosis", lx), S::kHigh);
  EXPECT_EQ(classify_sensitivity(query(), "number 123456789", lx), S::kCritical);
  EXPECT_EQ(classify_sensitivity(query("X_SLOT"), "anything", lx), S::kMid);
  EXPECT_TRUE(lx.is_critical_class("passport"));
  EXPECT_FALSE(lx.is_critical_class("diagnosis"));
  EXPECT_THROW(SensitivityLexicon::parse("Mid passport\nCritical passport\n"), LexiconError);
  EXPECT_THROW(SensitivityLexicon::parse("Severe thing\n"), LexiconError);
}

TEST(IntentTest, Cues) {
  const auto& cues = default_privacy_cues();
  EXPECT_TRUE(detect_privacy_intent(own({"I had some personal stuff"}), cues));
  EXPECT_TRUE(detect_privacy_intent(own({"Sure.", "I'd rather not say"}), cues));
  EXPECT_FALSE(detect_privacy_intent(own({"The meeting is at 8 AM"}), cues));
}

TEST(ElevateTest, Table) {
  EXPECT_EQ(elevate(S::kLow, true), S::kMid);
  EXPECT_EQ(elevate(S::kMid, true), S::kHigh);
  EXPECT_EQ(elevate(S::kHigh, true), S::kHigh);
  EXPECT_EQ(elevate(S::kCritical, true), S::kCritical);
  EXPECT_EQ(elevate(S::kMid, false), S::kMid);
}

TEST(HardLockTest, OnlyCriticalAborts) {
  for (L l : {L::kL1, L::kL2, L::kL3}) {
    EXPECT_EQ(hard_lock(S::kCritical, l), LockDecision::kAbort);
    for (S s : {S::kLow, S::kMid, S::kHigh}) EXPECT_EQ(hard_lock(s, l), LockDecision::kProceed);
  }
}

TEST(MatrixTest, ExactlyTheSharingTable) {
  const std::map<std::pair<L, S>, D> table{
      {{L::kL1, S::kLow}, D::kDirectReveal},  {{L::kL1, S::kMid}, D::kDirectReveal},
      {{L::kL1, S::kHigh}, D::kDirectReveal}, {{L::kL2, S::kLow}, D::kDirectReveal},
      {{L::kL2, S::kMid}, D::kApprovalLoop},  {{L::kL2, S::kHigh}, D::kSuppress},
      {{L::kL3, S::kLow}, D::kApprovalLoop},  {{L::kL3, S::kMid}, D::kSuppress},
      {{L::kL3, S::kHigh}, D::kSuppress}};
  for (const auto& [key, want] : table) {
    EXPECT_EQ(matrix_decide(key.second, key.first), want);
    EXPECT_EQ(gate_outcome(request(key.second, key.first)), want);
  }
  for (L l : {L::kL1, L::kL2, L::kL3}) {
    EXPECT_THROW(matrix_decide(S::kCritical, l), InvalidArgumentError);
    EXPECT_EQ(gate_outcome(request(S::kCritical, l)), D::kAbort);
  }
}

TEST(FinalizeTest, DirectRevealWithoutHigherSpans) {
  const auto r = request(S::kLow, L::kL1, false, "meet at 8 AM at Medical Imaging Center");
  const auto out = decide(r, std::nullopt, slex());
  EXPECT_EQ(out.kind(), D::kDirectReveal);
  EXPECT_EQ(out.content(), "meet at 8 AM at Medical Imaging Center");
}

TEST(FinalizeTest, HigherGradeSpansAreMasked) {
  auto r = request(S::kLow, L::kL1, false, "Use card 4111 1111 1111 1111 at the front desk");
  r.sensitivity = S::kLow;
  const auto out = finalize(r, D::kDirectReveal, std::nullopt, slex());
  ASSERT_EQ(out.kind(), D::kPartialReveal);
  EXPECT_EQ(out.content().find("4111"), std::string::npos);
  EXPECT_NE(out.content().find(kRedacted), std::string::npos);
  // Mask soundness: one mask per higher-grade hit, and the rest has none.
  std::size_t higher = 0;
  for (const auto& g : slex().scan(r.candidate_answer)) higher += rank(g.grade) > rank(r.sensitivity);
  EXPECT_EQ(out.masked_spans().size(), higher);
  for (const auto& [b, e] : out.masked_spans()) {
    EXPECT_EQ(out.content().substr(b, e - b), kRedacted);
  }
  for (const auto& g : slex().scan(out.content())) {
    EXPECT_LE(rank(g.grade), rank(r.sensitivity));
  }
}

TEST(FinalizeTest, ApprovalLoop) {
  const auto r = request(S::kLow, L::kL3);
  EXPECT_EQ(decide(r, std::nullopt, slex()).kind(), D::kSuppress);
  EXPECT_EQ(decide(r, ApprovalSignal::kDenied, slex()).kind(), D::kSuppress);
  const auto granted = decide(r, ApprovalSignal::kGranted, slex());
  EXPECT_EQ(granted.kind(), D::kDirectReveal);
  EXPECT_EQ(granted.content(), r.candidate_answer);
}

TEST(FinalizeTest, SignalOnNonLoopOutcomeIsLoggedAndIgnored) {
  std::vector<std::string> log;
  const auto out = decide(request(S::kHigh, L::kL3), ApprovalSignal::kGranted, slex(), &log);
  EXPECT_EQ(out.kind(), D::kSuppress);
  EXPECT_TRUE(out.content().empty());
  EXPECT_EQ(log.size(), 1u);
}

TEST(FinalizeTest, IntentElevationUsesTheEffectiveGrade) {
  EXPECT_EQ(gate_outcome(request(S::kLow, L::kL2, true)), D::kApprovalLoop);
  EXPECT_EQ(gate_outcome(request(S::kMid, L::kL2, true)), D::kSuppress);
}

TEST(PropertyTest, HardLockDominanceRandomized) {
  std::mt19937_64 rng(31);
  const std::vector<std::optional<ApprovalSignal>> signals{
      std::nullopt, ApprovalSignal::kGranted, ApprovalSignal::kDenied};
  for (int i = 0; i < 2000; ++i) {
    const L l = static_cast<L>(1 + rng() % 3);
    const auto r = request(S::kCritical, l, rng() % 2 == 0, "SSN 123-45-6789");
    const auto out = decide(r, signals[rng() % 3], slex());
    EXPECT_EQ(out.kind(), D::kAbort);
    EXPECT_TRUE(out.content().empty());
  }
}

TEST(PropertyTest, ElevationIsMonotone) {
  for (S s : {S::kLow, S::kMid, S::kHigh, S::kCritical}) {
    for (L l : {L::kL1, L::kL2, L::kL3}) {
      EXPECT_LE(permissiveness(gate_outcome(request(s, l, true))),
                permissiveness(gate_outcome(request(s, l, false))));
      for (auto sig : {std::optional<ApprovalSignal>{}, std::optional{ApprovalSignal::kGranted},
                       std::optional{ApprovalSignal::kDenied}}) {
        EXPECT_LE(permissiveness(decide(request(s, l, true), sig, slex()).kind()),
                  permissiveness(decide(request(s, l, false), sig, slex()).kind()));
      }
    }
  }
}

TEST(PropertyTest, FailClosedWithoutApproval) {
  for (S s : {S::kLow, S::kMid, S::kHigh, S::kCritical}) {
    for (L l : {L::kL1, L::kL2, L::kL3}) {
      const auto r = request(s, l);
      if (gate_outcome(r) != D::kApprovalLoop) continue;
      EXPECT_FALSE(decide(r, std::nullopt, slex()).reveals());
    }
  }
}

}  // namespace
}  // namespace concord
