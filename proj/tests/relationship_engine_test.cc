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

#include <random>

#include <gtest/gtest.h>

#include "concord/context_resolver.h"
#include "concord/dataset.h"
#include "concord/fixtures.h"

namespace concord {
namespace {

const RelationshipLexicons& lex() { return RelationshipLexicons::defaults(); }

std::vector<Turn> turns(std::initializer_list<const char*> texts) {
  std::vector<Turn> out;
  int id = 1;
  for (const char* t : texts) out.push_back({id, Role::kUserA, t, std::nullopt}), id += 2;
  return out;
}

TEST(ExtractMarkersTest, FormalRegister) {
  const auto c = extract_markers(
      turns({"Hi, Dr. Sharma, I'm here for my appointment.", "Could you check the results?"}),
      lex());
  EXPECT_GE(c.honorifics, 1u);
  EXPECT_GE(c.distancing_modals, 1u);
  EXPECT_EQ(c.endearments_relational, 0u);
}

TEST(ExtractMarkersTest, IntimateRegister) {
  const auto c = extract_markers(turns({"babe, grab that from the bedroom, it's ours"}), lex());
  EXPECT_EQ(c.endearments_relational, 1u);
  EXPECT_EQ(c.private_space_refs, 1u);
  EXPECT_EQ(c.collective_pronouns, 1u);
  EXPECT_EQ(c.distance_markers(), 0u);
}

TEST(ExtractMarkersTest, EmptyLexiconsCountNothing) {
  const RelationshipLexicons empty;
  EXPECT_EQ(extract_markers(turns({"Hi Dr. Sharma, babe, our bedroom, could you?"}), empty),
            MarkerCounts{});
  EXPECT_THROW(extract_markers({}, lex()), InvalidArgumentError);
}

TEST(ExtractMarkersTest, VocativesNeedAddressPosition) {
  EXPECT_EQ(extract_markers(turns({"Hey Sam, pizza later?"}), lex()).first_name_address, 1u);
  EXPECT_EQ(extract_markers(turns({"Thanks, Jordan."}), lex()).first_name_address, 1u);
  EXPECT_EQ(extract_markers(turns({"Riley, let's go."}), lex()).first_name_address, 1u);
  EXPECT_EQ(extract_markers(turns({"I rode with Alex and Jamie."}), lex()).first_name_address,
            0u);
}

TEST(ExtractMarkersTest, EvidenceNamesTurnAndPhrase) {
  std::vector<MarkerEvidence> ev;
  extract_markers(turns({"Thanks, honey.", "Could you sit down?"}), lex(), nullptr, &ev);
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_EQ(ev[0], (MarkerEvidence{"endearment", 1, "honey"}));
  EXPECT_EQ(ev[1], (MarkerEvidence{"distancing_modal", 3, "Could you"}));
}

TEST(ExtractMarkersTest, ReferenceCountsFromMentions) {
  const auto c = extract_markers(turns({"Put it there, next to that folder."}), lex(),
                                 &ResolverLexicons::defaults());
  EXPECT_GE(c.implicit_refs, 2u);
}

TEST(ImplicitRatioTest, Arithmetic) {
  MarkerCounts c;
  EXPECT_FALSE(implicit_ratio(c));
  c.implicit_refs = 3, c.explicit_refs = 1;
  EXPECT_DOUBLE_EQ(*implicit_ratio(c), 0.75);
  c.implicit_refs = 0, c.explicit_refs = 5;
  EXPECT_DOUBLE_EQ(*implicit_ratio(c), 0.0);
  c.implicit_refs = 4, c.explicit_refs = 0;
  EXPECT_DOUBLE_EQ(*implicit_ratio(c), 1.0);
}

TEST(AssessLevelTest, Cascade) {
  MarkerCounts formal;
  formal.honorifics = 1, formal.distancing_modals = 1;
  const auto a = assess_level(formal);
  EXPECT_EQ(a.level, RelationshipLevel::kL3);
  EXPECT_TRUE(a.locked);

  MarkerCounts intimate;
  intimate.endearments_relational = 1, intimate.private_space_refs = 1;
  intimate.collective_pronouns = 2;
  EXPECT_EQ(assess_level(intimate).level, RelationshipLevel::kL1);
  EXPECT_FALSE(assess_level(intimate).locked);

  MarkerCounts casual;
  casual.first_name_address = 1, casual.collective_pronouns = 2;
  EXPECT_EQ(assess_level(casual).level, RelationshipLevel::kL2);

  MarkerCounts lone_our;
  lone_our.collective_pronouns = 1;
  EXPECT_EQ(assess_level(lone_our).level, RelationshipLevel::kL3);
  EXPECT_EQ(assess_level(MarkerCounts{}).level, RelationshipLevel::kL3);
}

TEST(AssessLevelTest, SingleDistanceMarkerBlocksL1ButDoesNotLock) {
  MarkerCounts c;
  c.endearments_relational = 1, c.private_space_refs = 1, c.collective_pronouns = 3;
  c.distancing_modals = 1;
  const auto a = assess_level(c);
  EXPECT_NE(a.level, RelationshipLevel::kL1);
  EXPECT_FALSE(a.locked);
}

TEST(AssessLevelTest, ThresholdsAreConfigurable) {
  MarkerCounts c;
  c.endearments_relational = 1, c.private_space_refs = 1;
  RelationshipThresholds t;
  EXPECT_EQ(assess_level(c, t).level, RelationshipLevel::kL3);
  t.intimacy_types = 2;
  EXPECT_EQ(assess_level(c, t).level, RelationshipLevel::kL1);
  t.distance_lock = 0;
  EXPECT_THROW(assess_level(c, t), InvalidArgumentError);
  t = RelationshipThresholds{};
  t.ratio_floor = 1.5;
  EXPECT_THROW(t.validate(), InvalidArgumentError);
}

MarkerCounts random_counts(std::mt19937_64& rng) {
  auto small = [&] { return static_cast<std::size_t>(rng() % 4); };
  MarkerCounts c;
  c.honorifics = rng() % 3 == 0 ? small() : 0;
  c.distancing_modals = rng() % 3 == 0 ? small() : 0;
  c.endearments_relational = small();
  c.first_name_address = small();
  c.collective_pronouns = small();
  c.implicit_refs = small();
  c.explicit_refs = small();
  c.private_space_refs = small();
  return c;
}

TEST(PropertyTest, DistanceMarkersNeverRaiseTrust) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 2000; ++i) {
    const MarkerCounts c = random_counts(rng);
    const int base = trust_rank(assess_level(c).level);
    MarkerCounts h = c;
    ++h.honorifics;
    MarkerCounts d = c;
    ++d.distancing_modals;
    EXPECT_LE(trust_rank(assess_level(h).level), base);
    EXPECT_LE(trust_rank(assess_level(d).level), base);
  }
}

TEST(PropertyTest, RemovingIntimacyNeverRaisesTrust) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 2000; ++i) {
    const MarkerCounts c = random_counts(rng);
    const int base = trust_rank(assess_level(c).level);
    for (std::size_t MarkerCounts::*f :
         {&MarkerCounts::endearments_relational, &MarkerCounts::private_space_refs,
          &MarkerCounts::collective_pronouns}) {
      MarkerCounts less = c;
      if (less.*f > 0) --(less.*f);
      EXPECT_LE(trust_rank(assess_level(less).level), base);
    }
  }
}

TEST(PropertyTest, LockDominates) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 1000; ++i) {
    MarkerCounts c = random_counts(rng);
    c.honorifics += 2;
    const auto a = assess_level(c);
    EXPECT_EQ(a.level, RelationshipLevel::kL3);
    EXPECT_TRUE(a.locked);
  }
}

TEST(PropertyTest, NoSingleIntimacyCueYieldsL1) {
  for (std::size_t MarkerCounts::*f :
       {&MarkerCounts::endearments_relational, &MarkerCounts::private_space_refs,
        &MarkerCounts::collective_pronouns, &MarkerCounts::implicit_refs}) {
    MarkerCounts c;
    c.*f = 1;
    EXPECT_NE(assess_level(c).level, RelationshipLevel::kL1);
  }
}

std::vector<std::vector<Turn>> windows_of(const DatasetRecord& r, Role owner) {
  std::vector<std::vector<Turn>> out;
  const auto view = one_sided_view(r.conversation_transcript, owner);
  for (std::size_t i = 0; i < view.turns.size(); ++i) {
    const auto w = make_window(view, i);
    std::vector<Turn> t = w.history;
    t.push_back(w.focus);
    out.push_back(std::move(t));
  }
  return out;
}

TEST(FixtureTest, DoctorWindowsWithHonorificsAreL3) {
  const auto rec = load_dataset(default_fixture_dir() / "doctor_patient.json");
  std::size_t checked = 0;
  for (const Role owner : {Role::kUserA, Role::kUserB}) {
    for (const auto& w : windows_of(rec, owner)) {
      if (extract_markers(w, lex()).honorifics == 0) continue;
      ++checked;
      EXPECT_EQ(assess_window(w, lex(), &ResolverLexicons::defaults()).level,
                RelationshipLevel::kL3);
    }
  }
  EXPECT_GT(checked, 0u);
}

TEST(FixtureTest, HandBuiltL1AndL2) {
  for (const auto& [file, want] : {std::pair{"spouses_l1.json", RelationshipLevel::kL1},
                                   std::pair{"friends_l2.json", RelationshipLevel::kL2}}) {
    const auto rec = load_dataset(default_fixture_dir() / file);
    EXPECT_EQ(level_for_relationship(rec.backstory.relationship), want);
    for (const Role owner : {Role::kUserA, Role::kUserB}) {
      for (const auto& w : windows_of(rec, owner)) {
        EXPECT_EQ(assess_window(w, lex(), &ResolverLexicons::defaults()).level, want)
            << file << " turn " << w.back().turn_id;
      }
    }
  }
}

TEST(LevelMappingTest, BackstoryLabels) {
  EXPECT_EQ(level_for_relationship("Doctor"), RelationshipLevel::kL3);
  EXPECT_EQ(level_for_relationship("lawyer"), RelationshipLevel::kL3);
  EXPECT_EQ(level_for_relationship("Colleague"), RelationshipLevel::kL2);
  EXPECT_EQ(level_for_relationship("Housemate"), RelationshipLevel::kL2);
  EXPECT_EQ(level_for_relationship("Spouse"), RelationshipLevel::kL1);
  EXPECT_EQ(level_for_relationship(" Family "), RelationshipLevel::kL1);
  EXPECT_FALSE(level_for_relationship("Stranger"));
}

}  // namespace
}  // namespace concord
