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

#include "concord/fixtures.h"

#include <map>
#include <random>

#include <fmt/format.h>

namespace concord {

namespace {

using Vars = std::map<std::string, std::string>;

std::string fill(std::string text, const Vars& vars) {
  for (const auto& [key, value] : vars) {
    const std::string token = "{" + key + "}";
    for (std::size_t at = text.find(token); at != std::string::npos;
         at = text.find(token, at + value.size())) {
      text.replace(at, token.size(), value);
    }
  }
  return text;
}

struct GoldQuery {
  int turn;
  QueryQuality quality;
  const char* slot;
  Urgency urgency;
  const char* reason;
  const char* fallback;
};

struct GoldResolution {
  int turn;
  const char* phrase;
  const char* entity;
  const char* source;
};

struct Template {
  const char* relationship;
  const char* summary;
  std::vector<std::pair<Role, const char*>> turns;
  std::vector<GoldResolution> resolutions;
  std::vector<GoldQuery> queries;
};

class Picker {
 public:
  explicit Picker(std::uint64_t seed) : rng_(seed) {}
  const char* operator()(const std::vector<const char*>& pool) {
    return pool[static_cast<std::size_t>(rng_() % pool.size())];
  }

 private:
  std::mt19937_64 rng_;
};

constexpr Role A = Role::kUserA;
constexpr Role B = Role::kUserB;
constexpr QueryQuality kHigh = QueryQuality::kHighValue;
constexpr QueryQuality kLow = QueryQuality::kLowValue;

DateTime at(const char* iso) { return *parse_datetime(iso); }

const Template& housemates() {
  static const Template t{
      "Housemate",
      "{A} and {B} share a flat. The landlord wants to inspect the kitchen on Friday, and "
      "{A}'s cousins are visiting for the weekend.",
      {{A, "Hey {B}, are you around tonight?"},
       {B, "Yeah, I'm home after 7 PM. Did you see the note from the landlord?"},
       {A, "Not yet. Where did you leave it?"},
       {B, "On the fridge, next to the bills. He wants to inspect the kitchen on Friday."},
       {A, "Okay, we should clean before then."},
       {B, "Agreed. Can you grab supplies from that store on the corner?"},
       {A, "Sure, I'll stop by {STORE} after work."},
       {B, "Thanks. Also, your cousin's group is visiting this weekend, right?"},
       {A, "Yes, they arrive on Saturday and leave on Sunday."},
       {B, "Cool. I booked a slot for the laundry room for us."},
       {A, "Great, which slot did you get?"},
       {B, "The 6 PM one. Don't forget the folder with the lease documents."},
       {A, "Got it, I'll bring that folder when he comes by."},
       {B, "Perfect. Also, can you lend me your drill?"},
       {A, "Sure, which drill do you need?"},
       {B, "The cordless one. I'll text you when I'm done."},
       {A, "No rush. Let me know if the landlord calls."},
       {B, "Will do. The weather is so nice today, by the way."},
       {A, "Ha, finally some sun after all that rain."},
       {B, "See you tonight, {A}."}},
      {{2, "home", "{HOME}", "User B GPS + Wifi"},
       {3, "it", "Landlord's note about the kitchen inspection", "User A Calendar"},
       {6, "that store on the corner", "{STORE}, {STREET}", "User B Places Log"},
       {8, "your cousin's group", "{COUSINS}", "User A Calendar"},
       {10, "a slot", "Laundry room, 6:00 PM", "User B Calendar"},
       {13, "that folder", "Lease documents folder", "User B Object Log"},
       {14, "your drill", "Cordless drill, hall closet", "User A Object Log"}},
      {{6, kHigh, "LOCATION_DESTINATION", Urgency::kRoutine,
        "User B asks for supplies from 'that store on the corner'; User A names a store "
        "without its address.",
        "Requesting the store location from Turn 6."},
       {8, kHigh, "PERSON_GROUP_LIST", Urgency::kRoutine,
        "User B mentions the cousin's group; User A answers with 'they' only.",
        "Requesting the visiting group members from Turn 8."},
       {11, kHigh, "APPOINTMENT_TIME", Urgency::kRoutine,
        "User A asks which laundry slot was booked.",
        "Requesting the booked slot time from Turn 11."},
       {13, kHigh, "OBJECT_DOCUMENT", Urgency::kRoutine,
        "User A refers to 'that folder' introduced by User B.",
        "Requesting details on the folder referenced in Turn 13."},
       {15, kHigh, "OBJECT_EQUIPMENT", Urgency::kRoutine,
        "User A asks which drill User B needs.",
        "Requesting the drill model from Turn 15."},
       {18, kLow, "CASUAL_JOKE", Urgency::kNone, "User B comments on the weather.",
        "Weather comment; no query needed."},
       {19, kLow, "CASUAL_OBSERVATION", Urgency::kNone, "User A remarks on the sun and rain.",
        "Casual observation; filter should reject."}}};
  return t;
}

const Template& colleagues() {
  static const Template t{
      "Colleague",
      "{A} and {B} work on the same product team and are preparing a client review.",
      {{A, "Morning {B}. Did you get the report from the client?"},
       {B, "Yes, {A}. I'll forward it after the standup."},
       {A, "Thanks. When is the review meeting?"},
       {B, "It moved to Thursday. Mind booking that venue near the office?"},
       {A, "Sure, I reserved {VENUE} for 2 PM."},
       {B, "Great. Invite your design team too."},
       {A, "Okay, I'll send them the invite today."},
       {B, "Also, bring that document with the budget numbers."},
       {A, "Which document, the draft or the final one?"},
       {B, "The final one. And the slides need one more pass."},
       {A, "I'll update the slides tonight."},
       {B, "If the client pushes back, contact me right away."},
       {A, "Will do. Should I loop in the manager?"},
       {B, "Yes, cc her on the thread."},
       {A, "Okay. Which laptop should I use for the demo?"},
       {B, "Use the shared one in the cabinet."},
       {A, "Got it. Traffic was terrible this morning, by the way."},
       {B, "Tell me about it, the rain made it worse."},
       {A, "See you at the review, {B}."}},
      {{2, "it", "Client report, Q3 draft", "User B Object Log"},
       {4, "that venue near the office", "{VENUE}, {STREET}", "User B Calendar"},
       {5, "2 PM", "Thursday, 2:00 PM", "User A Calendar"},
       {6, "your design team", "{TEAM}", "User A Calendar"},
       {8, "that document", "Budget spreadsheet, final version", "User B Object Log"},
       {14, "her", "{MANAGER}, engineering manager", "User B Calendar"}},
      {{4, kHigh, "LOCATION_DESTINATION", Urgency::kRoutine,
        "User B asks to book 'that venue near the office'; User A names it without the "
        "address.",
        "Requesting the venue address from Turn 4."},
       {6, kHigh, "PERSON_GROUP_LIST", Urgency::kRoutine,
        "User B asks to invite the design team; User A only says 'them'.",
        "Requesting the design team members from Turn 6."},
       {9, kHigh, "OBJECT_DOCUMENT", Urgency::kRoutine, "User A asks which document is meant.",
        "Requesting the document referenced in Turn 9."},
       {12, kHigh, "SYMPTOM_ESCALATION_POLICY", Urgency::kImmediate,
        "User B sets an escalation rule if the client pushes back.",
        "Requesting the escalation procedure from Turn 12."},
       {15, kHigh, "OBJECT_EQUIPMENT", Urgency::kRoutine,
        "User A asks which laptop to use for the demo.",
        "Requesting the demo laptop from Turn 15."},
       {17, kLow, "CASUAL_OBSERVATION", Urgency::kNone, "User A complains about traffic.",
        "Small talk about traffic; filter should reject."},
       {18, kLow, "CASUAL_OBSERVATION", Urgency::kNone, "User B blames the rain.",
        "Small talk about rain; filter should reject."}}};
  return t;
}

const Template& doctor_patient() {
  static const Template t{
      "Doctor",
      "{A} sees {DOCTOR} for a follow-up on recurring headaches. A scan is booked at an "
      "imaging center the doctor recommended.",
      {{A, "Hi, Dr. {DOCTOR_LAST}, I'm here for my follow-up."},
       {B, "Hello, please have a seat. How is the headache now?"},
       {A, "Better, but it still comes back in the evening."},
       {B, "Did you notice it after you were at that park?"},
       {A, "Yes, especially when I sat by the fountain."},
       {B, "Could you bring that folder with your symptom notes next time?"},
       {A, "Of course, it's in my backpack."},
       {B, "For the scan, you have a slot at that center I recommended, right?"},
       {A, "Yes, it's booked for tomorrow, 9:00 AM at {CENTER}."},
       {B, "Good. If the pain gets worse, contact me immediately."},
       {A, "I will. Thank you, Dr. {DOCTOR_LAST}."},
       {B, "You're welcome. The weather is lovely today."},
       {A, "It is, though the sun is a bit strong."}},
      {{1, "here", "{CLINIC}", "User B GPS + Wifi"},
       {4, "that park", "{PARK}", "User A Calendar"},
       {8, "that center I recommended", "{CENTER}, {CAMPUS}", "User B Calendar"},
       {9, "tomorrow, 9:00 AM", "June 13, 2024, 9:00 AM", "User A Calendar"}},
      {{5, kHigh, "SYMPTOM_LOCATION", Urgency::kImmediate,
        "User A places the headache near 'the fountain' without naming the park.",
        "Requesting the location of the episode from Turn 5."},
       {6, kHigh, "OBJECT_DOCUMENT", Urgency::kRoutine,
        "User B refers to 'that folder' with symptom notes.",
        "Requesting details on the folder from Turn 6."},
       {8, kHigh, "LOCATION_DESTINATION", Urgency::kImmediate,
        "User B refers to 'that center I recommended'.",
        "Requesting the imaging center name from Turn 8."},
       {10, kHigh, "SYMPTOM_ESCALATION_POLICY", Urgency::kImmediate,
        "User B sets an escalation rule for worsening pain.",
        "Requesting the escalation procedure from Turn 10."},
       {12, kLow, "CASUAL_JOKE", Urgency::kNone, "User B comments on the weather.",
        "Weather comment; no query needed."},
       {13, kLow, "CASUAL_OBSERVATION", Urgency::kNone, "User A remarks on the sun.",
        "Casual observation; filter should reject."}}};
  return t;
}

const char* kFirstNames[] = {"Maya", "Jordan", "Priya", "Leo", "Nina", "Omar", "Sofia", "Ethan"};

Vars pick_vars(std::string_view id, std::uint64_t seed) {
  Picker pick(seed);
  const std::vector<const char*> names(std::begin(kFirstNames), std::end(kFirstNames));
  Vars v;
  v["A"] = pick(names);
  do {
    v["B"] = pick(names);
  } while (v["B"] == v["A"]);
  v["STREET"] = pick({"Elm Street", "Riverside Drive", "Oak Avenue", "Harbor Road"});
  if (id == "housemates") {
    v["STORE"] = pick({"Green Grocer Market", "Corner Fresh Market", "Sunrise Market"});
    v["HOME"] = pick({"Flat 3B, Maple Court", "Apartment 12, Willow House"});
    v["COUSINS"] = pick({"Ava, Ben and Chloe", "Dev, Ella and Finn"});
  } else if (id == "colleagues") {
    v["VENUE"] = pick({"Lakeside Center", "Harbor Conference Center", "Summit Center"});
    v["TEAM"] = pick({"Ana, Raj and Tom", "Kim, Luis and Zoe"});
    v["MANAGER"] = pick({"Grace Lee", "Helen Park"});
  } else {
    v["DOCTOR_LAST"] = pick({"Patel", "Okafor", "Nguyen", "Rossi"});
    v["DOCTOR"] = "Dr. " + v["DOCTOR_LAST"];
    v["CENTER"] = pick({"Northside Imaging Center", "Valley Imaging Center"});
    v["CAMPUS"] = pick({"East Campus", "North Campus"});
    v["PARK"] = pick({"Riverside Park", "Hillcrest Park"});
    v["CLINIC"] = v["DOCTOR"] + "'s Clinic, " + v["STREET"];
  }
  return v;
}

void add_snapshots(std::string_view id, const Vars& v, DatasetRecord* r) {
  MobileContextSnapshot& a = r->user_a;
  MobileContextSnapshot& b = r->user_b;
  a.local_time = b.local_time = at("2024-06-12T18:00:00");
  if (id == "housemates") {
    a.location_semantic = b.location_semantic = v.at("HOME");
    a.gps_coords = b.gps_coords = GeoPoint{40.7128, -74.0060};
    a.wifi_ssid = b.wifi_ssid = "FlatNet";
    a.calendar.push_back({"Cousins visiting: " + v.at("COUSINS"), at("2024-06-15T10:00:00"),
                          at("2024-06-16T18:00:00"), std::nullopt});
    a.aux_logs.push_back({"Object Log", {{"drill", "Cordless drill, hall closet"}}});
    b.calendar.push_back({"Laundry room slot", at("2024-06-12T18:00:00"),
                          at("2024-06-12T19:00:00"), std::string("Laundry room, basement")});
    b.aux_logs.push_back({"Places Log", {{"store", v.at("STORE") + ", " + v.at("STREET")}}});
    b.aux_logs.push_back({"Object Log", {{"folder", "Lease documents folder"}}});
  } else if (id == "colleagues") {
    a.location_semantic = b.location_semantic = "Office, " + v.at("STREET");
    a.wifi_ssid = b.wifi_ssid = "CorpNet";
    a.local_time = b.local_time = at("2024-06-12T09:00:00");
    a.calendar.push_back({"Design sync with " + v.at("TEAM"), at("2024-06-12T11:00:00"),
                          at("2024-06-12T11:30:00"), std::nullopt});
    b.calendar.push_back({"Client review at " + v.at("VENUE"), at("2024-06-13T14:00:00"),
                          at("2024-06-13T15:00:00"), v.at("VENUE") + ", " + v.at("STREET")});
    b.aux_logs.push_back({"Object Log", {{"document", "Budget spreadsheet, final version"}}});
  } else {
    a.location_semantic = b.location_semantic = v.at("CLINIC");
    a.gps_coords = b.gps_coords = GeoPoint{30.2711, -97.7437};
    a.wifi_ssid = "Clinic_Guest";
    b.wifi_ssid = "Clinic_Staff";
    a.local_time = b.local_time = at("2024-06-12T10:00:00");
    a.calendar.push_back({"Scan", at("2024-06-13T09:00:00"), at("2024-06-13T10:00:00"),
                          v.at("CENTER")});
    b.calendar.push_back({"Scan referral", at("2024-06-13T09:00:00"), at("2024-06-13T10:00:00"),
                          v.at("CENTER") + ", " + v.at("CAMPUS")});
  }
}

}  // namespace

const std::vector<std::string>& fixture_templates() {
  static const std::vector<std::string> ids{"doctor_patient", "housemates", "colleagues"};
  return ids;
}

DatasetRecord generate_fixture(std::string_view template_id, std::uint64_t seed) {
  const Template* t = nullptr;
  if (template_id == "doctor_patient") {
    t = &doctor_patient();
  } else if (template_id == "housemates") {
    t = &housemates();
  } else if (template_id == "colleagues") {
    t = &colleagues();
  } else {
    throw InvalidArgumentError(fmt::format("unknown fixture template '{}'", template_id));
  }
  const Vars v = pick_vars(template_id, seed);
  DatasetRecord r;
  r.dataset_id = fmt::format("scenario_protocol_{}_{}", template_id, seed);
  r.backstory = {fill(t->summary, v), t->relationship};
  int id = 0;
  for (const auto& [role, text] : t->turns) {
    r.conversation_transcript.push_back({++id, role, fill(text, v), std::nullopt});
  }
  for (const GoldResolution& g : t->resolutions) {
    r.ground_truth_resolutions.push_back(
        {g.turn, fill(g.phrase, v), fill(g.entity, v), g.source});
  }
  for (const GoldQuery& g : t->queries) {
    ProtocolQuery q;
    q.trigger_turn_id = g.turn;
    q.quality = g.quality;
    q.reason = g.reason;
    q.target_slot = g.slot;
    q.urgency = g.urgency;
    q.context_ref = fmt::format("Turn {}", g.turn);
    q.natural_language_fallback = g.fallback;
    r.required_protocol_queries.push_back(std::move(q));
  }
  add_snapshots(template_id, v, &r);
  return r;
}

std::filesystem::path default_fixture_dir() {
  if (const char* env = std::getenv("CONCORD_FIXTURE_DIR")) return env;
  return std::filesystem::path(CONCORD_DATA_DIR) / "fixtures";
}

std::vector<std::filesystem::path> bundled_fixtures() {
  const std::filesystem::path dir = default_fixture_dir();
  return {dir / "doctor_patient.json", dir / "spouses_l1.json", dir / "friends_l2.json"};
}

}  // namespace concord
