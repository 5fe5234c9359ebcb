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

#include "concord/context_resolver.h"

#include <algorithm>

#include <gtest/gtest.h>

#include "concord/dataset.h"
#include "concord/fixtures.h"

namespace concord {
namespace {

const ResolverLexicons& lex() { return ResolverLexicons::defaults(); }

ReferenceWindow focus_only(int id, std::string text, Role who = Role::kUserA) {
  ReferenceWindow w;
  w.focus = {id, who, std::move(text), std::nullopt};
  return w;
}

const EntityMention* find_surface(const std::vector<EntityMention>& ms, std::string_view s) {
  for (const auto& m : ms) {
    if (m.surface == s) return &m;
  }
  return nullptr;
}

MobileContextSnapshot clinic_snapshot() {
  MobileContextSnapshot s;
  s.location_semantic = "Dr. Sharma's Clinic, West Avenue, Austin";
  s.gps_coords = GeoPoint{30.2711, -97.7437};
  s.wifi_ssid = "SharmaClinic_Guest";
  s.local_time = parse_datetime("2024-06-12T10:30:00");
  s.calendar.push_back({"MRI", *parse_datetime("2024-06-13T16:30:00"),
                        *parse_datetime("2024-06-13T17:30:00"),
                        std::string("Medical Imaging Center")});
  s.aux_logs.push_back(
      {"Places Log", {{"studio", "Design Studio, East 6th Street, Austin"}}});
  return s;
}

TEST(WindowTest, KeepsAtMostFivePriorOwnTurns) {
  std::vector<Turn> t;
  for (int i = 1; i <= 20; ++i) t.push_back({i, i % 2 ? Role::kUserA : Role::kUserB, "x", {}});
  const auto view = one_sided_view(t, Role::kUserA);
  const ReferenceWindow w = make_window(view, 9);
  EXPECT_EQ(w.focus.turn_id, 19);
  ASSERT_EQ(w.history.size(), 5u);
  EXPECT_EQ(w.history.front().turn_id, 9);
  for (const Turn& h : w.history) EXPECT_LT(h.turn_id, w.focus.turn_id);
  EXPECT_EQ(w.masked_before_focus, 18);
  EXPECT_EQ(make_window(view, 0).history.size(), 0u);
  EXPECT_THROW(make_window(view, 10), InvalidArgumentError);
}

TEST(ExtractTest, AppendixTurnOne) {
  const auto ms = extract_mentions(focus_only(1, "I'm here for my appointment."), lex());
  const EntityMention* here = find_surface(ms, "here");
  ASSERT_NE(here, nullptr);
  EXPECT_EQ(here->category, EntityCategory::kSpatial);
  EXPECT_EQ(here->kind, MentionKind::kProximal);
  const EntityMention* appt = find_surface(ms, "my appointment");
  ASSERT_NE(appt, nullptr);
  EXPECT_TRUE(appt->category == EntityCategory::kTemporal ||
              appt->category == EntityCategory::kTask);
}

TEST(ExtractTest, BareAcknowledgmentHasNoMentions) {
  EXPECT_TRUE(extract_mentions(focus_only(3, "Yes."), lex()).empty());
}

TEST(ExtractTest, AppendixTurnFortyFive) {
  const auto ms = extract_mentions(
      focus_only(45, "it's booked for tomorrow, 4:30 PM at Medical Imaging Center"), lex());
  const EntityMention* when = find_surface(ms, "tomorrow, 4:30 PM");
  ASSERT_NE(when, nullptr);
  EXPECT_EQ(when->category, EntityCategory::kTemporal);
  EXPECT_EQ(when->kind, MentionKind::kRelativeTemporal);
  const EntityMention* where = find_surface(ms, "Medical Imaging Center");
  ASSERT_NE(where, nullptr);
  EXPECT_EQ(where->category, EntityCategory::kSpatial);
}

TEST(ExtractTest, SpansAreOrderedAndDisjoint) {
  const auto rec = load_dataset(bundled_fixtures()[0]);
  for (const Role owner : {Role::kUserA, Role::kUserB}) {
    const auto view = one_sided_view(rec.conversation_transcript, owner);
    for (std::size_t i = 0; i < view.turns.size(); ++i) {
      const auto ms = extract_mentions(make_window(view, i), lex());
      for (std::size_t k = 0; k < ms.size(); ++k) {
        if (ms[k].kind == MentionKind::kAcknowledgment) continue;
        EXPECT_EQ(view.turns[i].text.substr(ms[k].char_begin,
                                            ms[k].char_end - ms[k].char_begin),
                  ms[k].surface);
        if (k > 0 && ms[k - 1].kind != MentionKind::kAcknowledgment) {
          EXPECT_LE(ms[k - 1].char_end, ms[k].char_begin);
        }
      }
    }
  }
}

TEST(ResolveTest, RelativeTemporalAnchorsOnTheCalendar) {
  const auto w = focus_only(45, "it's booked for tomorrow, 4:30 PM at Medical Imaging Center");
  const auto ms = extract_mentions(w, lex());
  const EntityMention* when = find_surface(ms, "tomorrow, 4:30 PM");
  ASSERT_NE(when, nullptr);
  ResolveContext ctx{Role::kUserA, parse_datetime("2024-06-12T10:30:00")};
  const auto r = resolve_local(*when, w, clinic_snapshot(), ctx, lex());
  ASSERT_TRUE(r);
  EXPECT_EQ(r->resolved_entity, "June 13, 2024, 4:30 PM");
  EXPECT_EQ(r->resolution_source, "User A Calendar");
  EXPECT_EQ(r->trigger_turn_id, 45);
}

TEST(ResolveTest, ProximalDeixisUsesLocationAndWifi) {
  const auto w = focus_only(1, "Hi, I'm here for my appointment.");
  const auto ms = extract_mentions(w, lex());
  const EntityMention* here = find_surface(ms, "here");
  ASSERT_NE(here, nullptr);
  const auto r = resolve_local(*here, w, clinic_snapshot(), {Role::kUserA, {}}, lex());
  ASSERT_TRUE(r);
  EXPECT_EQ(r->resolved_entity, "Dr. Sharma's Clinic, West Avenue, Austin");
  EXPECT_EQ(r->resolution_source, "User A GPS + Wifi");
}

TEST(ResolveTest, AuxLogAlias) {
  const auto w = focus_only(7, "I was at my studio all morning.");
  const auto ms = extract_mentions(w, lex());
  const EntityMention* studio = find_surface(ms, "my studio");
  ASSERT_NE(studio, nullptr);
  const auto r = resolve_local(*studio, w, clinic_snapshot(), {Role::kUserA, {}}, lex());
  ASSERT_TRUE(r);
  EXPECT_EQ(r->resolved_entity, "Design Studio, East 6th Street, Austin");
  EXPECT_EQ(r->resolution_source, "User A Places Log");
}

TEST(ResolveTest, LiteralFixpoint) {
  const auto w = focus_only(9, "The scan is on June 13, 2024, 4:30 PM.");
  const auto ms = extract_mentions(w, lex());
  const EntityMention* when = find_surface(ms, "June 13, 2024, 4:30 PM");
  ASSERT_NE(when, nullptr);
  const auto r = resolve_local(*when, w, clinic_snapshot(), {Role::kUserA, {}}, lex());
  ASSERT_TRUE(r);
  EXPECT_EQ(r->resolved_entity, "June 13, 2024, 4:30 PM");
  EXPECT_EQ(r->resolution_source, "Literal");
}

TEST(ResolveTest, DistalDeixisTakesTheMostRecentAntecedent) {
  ReferenceWindow w;
  w.history = {{1, Role::kUserA, "I stopped at Barton Creek Greenbelt.", {}},
               {3, Role::kUserA, "Then I rode to Zilker Park.", {}}};
  w.focus = {5, Role::kUserA, "I felt dizzy there.", {}};
  const auto ms = extract_mentions(w, lex());
  const EntityMention* there = find_surface(ms, "there");
  ASSERT_NE(there, nullptr);
  MobileContextSnapshot empty;
  empty.location_semantic = "Home";
  const auto r = resolve_local(*there, w, empty, {Role::kUserA, {}}, lex());
  ASSERT_TRUE(r);
  EXPECT_EQ(r->resolved_entity, "Zilker Park");
  EXPECT_EQ(r->resolution_source, "Prior Turn 3");
}

TEST(ResolveTest, NoRuleFiresForAnUngroundedPronoun) {
  const auto w = focus_only(5, "Did you bring it?");
  const auto ms = extract_mentions(w, lex());
  const EntityMention* it = find_surface(ms, "it");
  ASSERT_NE(it, nullptr);
  MobileContextSnapshot empty;
  empty.location_semantic = "Home";
  EXPECT_FALSE(resolve_local(*it, w, empty, {Role::kUserA, {}}, lex()));
}

TEST(ResolveTest, SourceNamesAConsultedGround) {
  const auto rec = load_dataset(bundled_fixtures()[0]);
  const RuleBasedResolver backend(lex());
  for (const Role owner : {Role::kUserA, Role::kUserB}) {
    const auto view = one_sided_view(rec.conversation_transcript, owner);
    for (std::size_t i = 0; i < view.turns.size(); ++i) {
      const auto w = make_window(view, i);
      for (const auto& m : extract_mentions(w, lex())) {
        ResolutionProbe probe;
        const auto r = backend.resolve(m, w, rec.snapshot(owner), {owner, {}}, &probe);
        if (!r) continue;
        const std::string& src = r->resolution_source;
        std::vector<std::string> needed;
        if (src == "Literal") {
          needed = {"literal"};
        } else if (src.starts_with("Prior Turn")) {
          needed = {"prior_turns"};
        } else if (src.ends_with("Calendar")) {
          needed = {"calendar"};
        } else if (src.ends_with("Clock")) {
          needed = {"clock"};
        } else if (src.ends_with("Log")) {
          needed = {"aux_logs"};
        } else if (src.ends_with("GPS + Wifi")) {
          needed = {"gps", "wifi"};
        } else if (src.ends_with("GPS")) {
          needed = {"gps"};
        } else if (src.ends_with("Wifi")) {
          needed = {"wifi"};
        } else {
          needed = {"location"};
        }
        for (const auto& g : needed) {
          EXPECT_NE(std::find(probe.consulted.begin(), probe.consulted.end(), g),
                    probe.consulted.end())
              << src;
        }
      }
    }
  }
}

TEST(ResolveTest, OwnerOnlyGrounding) {
  // User B's calendar knows the imaging center; User A's view must not use it.
  const auto rec = load_dataset(bundled_fixtures()[0]);
  const RuleBasedResolver backend(lex());
  const auto view = one_sided_view(rec.conversation_transcript, Role::kUserA);
  for (std::size_t i = 0; i < view.turns.size(); ++i) {
    const auto w = make_window(view, i);
    for (const auto& rm : resolve_window(w, rec.user_a, {Role::kUserA, {}}, backend, lex())) {
      if (!rm.resolution) continue;
      EXPECT_EQ(rm.resolution->resolution_source.find("User B"), std::string::npos);
      EXPECT_EQ(rm.resolution->resolved_entity.find("West Campus"), std::string::npos);
    }
  }
}

TEST(ResolveTest, Deterministic) {
  const auto rec = load_dataset(bundled_fixtures()[0]);
  const RuleBasedResolver backend(lex());
  const auto view = one_sided_view(rec.conversation_transcript, Role::kUserB);
  for (std::size_t i = 0; i < view.turns.size(); ++i) {
    const auto w = make_window(view, i);
    const auto a = resolve_window(w, rec.user_b, {Role::kUserB, {}}, backend, lex());
    const auto b = resolve_window(w, rec.user_b, {Role::kUserB, {}}, backend, lex());
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_EQ(a[k].mention, b[k].mention);
      EXPECT_EQ(a[k].resolution, b[k].resolution);
    }
  }
}

TEST(SimilarityTest, TokenSetJaccard) {
  EXPECT_DOUBLE_EQ(
      resolution_similarity("Medical Imaging Center", "Medical Imaging Center, West Campus"),
      0.6);
  EXPECT_DOUBLE_EQ(resolution_similarity("Trek bicycle", "trek BICYCLE"), 1.0);
  EXPECT_DOUBLE_EQ(resolution_similarity("red", "blue"), 0.0);
  EXPECT_DOUBLE_EQ(resolution_similarity("a b c", "b c d"), resolution_similarity("b c d", "a b c"));
  EXPECT_THROW(resolution_similarity("", "x"), InvalidArgumentError);
}

}  // namespace
}  // namespace concord
