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

#include "concord/core_model.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <set>

#include <fmt/format.h>

namespace concord {

namespace {

constexpr std::array<std::string_view, 12> kMonths = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

bool parse_int(std::string_view text, int* out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

std::string_view role_label(Role role) {
  return role == Role::kUserA ? "User A" : "User B";
}

std::string_view role_id(Role role) {
  return role == Role::kUserA ? "UserA" : "UserB";
}

std::optional<Role> parse_role(std::string_view text) {
  if (text == "User A" || text == "UserA" || text == "A") return Role::kUserA;
  if (text == "User B" || text == "UserB" || text == "B") return Role::kUserB;
  return std::nullopt;
}

bool OneSidedTranscript::is_masked(int turn_id) const {
  return std::binary_search(masked_slots.begin(), masked_slots.end(), turn_id);
}

const Turn* OneSidedTranscript::find(int turn_id) const {
  auto it = std::lower_bound(
      turns.begin(), turns.end(), turn_id,
      [](const Turn& t, int id) { return t.turn_id < id; });
  if (it == turns.end() || it->turn_id != turn_id) return nullptr;
  return &*it;
}

OneSidedTranscript one_sided_view(const std::vector<Turn>& transcript,
                                  Role owner) {
  if (transcript.empty()) throw EmptyTranscriptError();
  OneSidedTranscript view;
  view.owner = owner;
  for (const Turn& turn : transcript) {
    if (turn.speaker == owner) {
      view.turns.push_back(turn);
    } else {
      view.masked_slots.push_back(turn.turn_id);
    }
  }
  return view;
}

std::vector<Turn> interleave(const OneSidedTranscript& a,
                             const OneSidedTranscript& b) {
  if (a.owner == b.owner) {
    throw InvalidArgumentError("interleave needs views of different owners");
  }
  std::vector<Turn> merged;
  merged.reserve(a.turns.size() + b.turns.size());
  std::merge(a.turns.begin(), a.turns.end(), b.turns.begin(), b.turns.end(),
             std::back_inserter(merged),
             [](const Turn& x, const Turn& y) { return x.turn_id < y.turn_id; });
  for (std::size_t i = 1; i < merged.size(); ++i) {
    if (merged[i].turn_id == merged[i - 1].turn_id) {
      throw InvalidArgumentError(
          fmt::format("turn {} kept by both views", merged[i].turn_id));
    }
  }
  return merged;
}

// ---------------------------------------------------------------------------

std::optional<DateTime> parse_datetime(std::string_view text) {
  // YYYY-MM-DDTHH:MM[:SS]
  if (text.size() != 16 && text.size() != 19) return std::nullopt;
  if (text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ') ||
      text[13] != ':') {
    return std::nullopt;
  }
  int y, mo, d, h, mi, s = 0;
  if (!parse_int(text.substr(0, 4), &y) || !parse_int(text.substr(5, 2), &mo) ||
      !parse_int(text.substr(8, 2), &d) || !parse_int(text.substr(11, 2), &h) ||
      !parse_int(text.substr(14, 2), &mi)) {
    return std::nullopt;
  }
  if (text.size() == 19) {
    if (text[16] != ':' || !parse_int(text.substr(17, 2), &s)) return std::nullopt;
  }
  using namespace std::chrono;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                     day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 59) {
    return std::nullopt;
  }
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

namespace {

struct Civil {
  int year;
  unsigned month;
  unsigned day;
  int hour;
  int minute;
  int second;
};

Civil to_civil(DateTime t) {
  using namespace std::chrono;
  const sys_days day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{t - day_point};
  return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
          static_cast<unsigned>(ymd.day()), static_cast<int>(hms.hours().count()),
          static_cast<int>(hms.minutes().count()),
          static_cast<int>(hms.seconds().count())};
}

}  // namespace

std::string format_datetime_iso(DateTime t) {
  const Civil c = to_civil(t);
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}", c.year, c.month,
                     c.day, c.hour, c.minute, c.second);
}

std::string format_date_human(DateTime t) {
  const Civil c = to_civil(t);
  return fmt::format("{} {}, {}", kMonths[c.month - 1], c.day, c.year);
}

std::string format_clock(DateTime t) {
  const Civil c = to_civil(t);
  const int h12 = c.hour % 12 == 0 ? 12 : c.hour % 12;
  return fmt::format("{}:{:02} {}", h12, c.minute, c.hour < 12 ? "AM" : "PM");
}

std::string format_datetime_human(DateTime t) {
  return format_date_human(t) + ", " + format_clock(t);
}

// ---------------------------------------------------------------------------

std::string_view category_name(EntityCategory category) {
  switch (category) {
    case EntityCategory::kMedical: return "Medical";
    case EntityCategory::kTemporal: return "Temporal";
    case EntityCategory::kSpatial: return "Spatial";
    case EntityCategory::kPerson: return "Person";
    case EntityCategory::kObject: return "Object";
    case EntityCategory::kTask: return "Task";
  }
  return "Object";
}

std::optional<EntityCategory> parse_category(std::string_view text) {
  for (EntityCategory c :
       {EntityCategory::kMedical, EntityCategory::kTemporal, EntityCategory::kSpatial,
        EntityCategory::kPerson, EntityCategory::kObject, EntityCategory::kTask}) {
    if (category_name(c) == text) return c;
  }
  return std::nullopt;
}

std::string_view mention_kind_name(MentionKind kind) {
  switch (kind) {
    case MentionKind::kExplicit: return "explicit";
    case MentionKind::kProximal: return "proximal";
    case MentionKind::kDistal: return "distal";
    case MentionKind::kRelativeTemporal: return "relative_temporal";
    case MentionKind::kAbsoluteTemporal: return "absolute_temporal";
    case MentionKind::kInterrogative: return "interrogative";
    case MentionKind::kAcknowledgment: return "acknowledgment";
  }
  return "explicit";
}

std::string_view urgency_name(Urgency urgency) {
  switch (urgency) {
    case Urgency::kNone: return "NONE";
    case Urgency::kRoutine: return "ROUTINE";
    case Urgency::kImmediate: return "IMMEDIATE";
  }
  return "NONE";
}

std::optional<Urgency> parse_urgency(std::string_view text) {
  if (text == "NONE") return Urgency::kNone;
  if (text == "ROUTINE") return Urgency::kRoutine;
  if (text == "IMMEDIATE") return Urgency::kImmediate;
  return std::nullopt;
}

std::string_view quality_name(QueryQuality quality) {
  return quality == QueryQuality::kHighValue ? "HIGH_VALUE" : "LOW_VALUE";
}

std::optional<QueryQuality> parse_quality(std::string_view text) {
  if (text == "HIGH_VALUE") return QueryQuality::kHighValue;
  if (text == "LOW_VALUE") return QueryQuality::kLowValue;
  return std::nullopt;
}

std::string_view level_name(RelationshipLevel level) {
  switch (level) {
    case RelationshipLevel::kL1: return "L1";
    case RelationshipLevel::kL2: return "L2";
    case RelationshipLevel::kL3: return "L3";
  }
  return "L3";
}

std::optional<RelationshipLevel> parse_level(std::string_view text) {
  if (text == "L1" || text == "1") return RelationshipLevel::kL1;
  if (text == "L2" || text == "2") return RelationshipLevel::kL2;
  if (text == "L3" || text == "3") return RelationshipLevel::kL3;
  return std::nullopt;
}

std::string_view sensitivity_name(Sensitivity s) {
  switch (s) {
    case Sensitivity::kLow: return "Low";
    case Sensitivity::kMid: return "Mid";
    case Sensitivity::kHigh: return "High";
    case Sensitivity::kCritical: return "Critical";
  }
  return "Low";
}

std::optional<Sensitivity> parse_sensitivity(std::string_view text) {
  if (text == "Low" || text == "low") return Sensitivity::kLow;
  if (text == "Mid" || text == "mid") return Sensitivity::kMid;
  if (text == "High" || text == "high") return Sensitivity::kHigh;
  if (text == "Critical" || text == "critical") return Sensitivity::kCritical;
  return std::nullopt;
}

std::string_view disclosure_name(DisclosureKind kind) {
  switch (kind) {
    case DisclosureKind::kDirectReveal: return "DirectReveal";
    case DisclosureKind::kPartialReveal: return "PartialReveal";
    case DisclosureKind::kApprovalLoop: return "ApprovalLoop";
    case DisclosureKind::kSuppress: return "Suppress";
    case DisclosureKind::kAbort: return "Abort";
  }
  return "Abort";
}

DisclosureOutcome DisclosureOutcome::direct(std::string content) {
  DisclosureOutcome out(DisclosureKind::kDirectReveal);
  out.content_ = std::move(content);
  return out;
}

DisclosureOutcome DisclosureOutcome::partial(std::string masked_content,
                                             std::vector<CharSpan> masked_spans) {
  if (masked_spans.empty()) {
    throw InvalidArgumentError("partial reveal needs at least one masked span");
  }
  DisclosureOutcome out(DisclosureKind::kPartialReveal);
  out.content_ = std::move(masked_content);
  out.masked_spans_ = std::move(masked_spans);
  return out;
}

DisclosureOutcome DisclosureOutcome::approval_loop() {
  return DisclosureOutcome(DisclosureKind::kApprovalLoop);
}

DisclosureOutcome DisclosureOutcome::suppress() {
  return DisclosureOutcome(DisclosureKind::kSuppress);
}

DisclosureOutcome DisclosureOutcome::abort() {
  return DisclosureOutcome(DisclosureKind::kAbort);
}

// ---------------------------------------------------------------------------

std::string Violation::to_string() const {
  std::string_view name;
  switch (kind) {
    case ViolationKind::kNonIncreasingTurnId: name = "NonIncreasingTurnId"; break;
    case ViolationKind::kInvalidTurn: name = "InvalidTurn"; break;
    case ViolationKind::kDanglingTriggerTurn: name = "DanglingTriggerTurn"; break;
    case ViolationKind::kInvalidEnum: name = "InvalidEnum"; break;
    case ViolationKind::kInconsistentQuery: name = "InconsistentQuery"; break;
    case ViolationKind::kInvalidSnapshot: name = "InvalidSnapshot"; break;
    case ViolationKind::kMissingField: name = "MissingField"; break;
    case ViolationKind::kUnknownField: name = "UnknownField"; break;
    case ViolationKind::kRenamedField: name = "RenamedField"; break;
    case ViolationKind::kWrongType: name = "WrongType"; break;
  }
  std::string out(name);
  out += "(";
  if (kind == ViolationKind::kDanglingTriggerTurn ||
      kind == ViolationKind::kNonIncreasingTurnId) {
    out += std::to_string(turn_id);
  } else {
    out += field;
  }
  out += ")";
  if (!detail.empty()) out += ": " + detail;
  return out;
}

std::vector<Violation> validate_query_fields(std::string_view quality,
                                             std::string_view urgency) {
  std::vector<Violation> out;
  if (!parse_quality(quality)) {
    out.push_back({ViolationKind::kInvalidEnum, "query_quality_check", 0,
                   fmt::format("'{}' not in {{HIGH_VALUE, LOW_VALUE}}", quality)});
  }
  if (!parse_urgency(urgency)) {
    out.push_back({ViolationKind::kInvalidEnum, "urgency", 0,
                   fmt::format("'{}' not in {{NONE, ROUTINE, IMMEDIATE}}", urgency)});
  }
  return out;
}

namespace {

void validate_snapshot(const MobileContextSnapshot& snap, std::string_view who,
                       std::vector<Violation>* out) {
  if (snap.gps_coords) {
    const GeoPoint& p = *snap.gps_coords;
    if (p.lat < -90.0 || p.lat > 90.0 || p.lon < -180.0 || p.lon > 180.0) {
      out->push_back({ViolationKind::kInvalidSnapshot, "gps_coords", 0,
                      fmt::format("{} coordinates out of range", who)});
    }
  }
  for (const CalendarEvent& ev : snap.calendar) {
    if (ev.end < ev.start) {
      out->push_back({ViolationKind::kInvalidSnapshot, "calendar", 0,
                      fmt::format("{} event '{}' ends before it starts", who,
                                  ev.title)});
    }
  }
  std::set<std::string> names;
  for (const AuxLog& log : snap.aux_logs) {
    if (!names.insert(log.name).second) {
      out->push_back({ViolationKind::kInvalidSnapshot, "aux_logs", 0,
                      fmt::format("{} has duplicate log '{}'", who, log.name)});
    }
  }
}

}  // namespace

std::vector<Violation> validate_dataset(const DatasetRecord& record) {
  std::vector<Violation> out;
  std::set<int> ids;
  int previous = 0;
  bool first = true;
  for (const Turn& turn : record.conversation_transcript) {
    if (turn.turn_id < 1) {
      out.push_back({ViolationKind::kInvalidTurn, "turn_id", turn.turn_id,
                     "turn ids start at 1"});
    }
    if (!first && turn.turn_id <= previous) {
      out.push_back({ViolationKind::kNonIncreasingTurnId, "turn_id", turn.turn_id,
                     fmt::format("follows turn {}", previous)});
    }
    if (turn.text.empty()) {
      out.push_back({ViolationKind::kInvalidTurn, "text", turn.turn_id, "empty text"});
    }
    if (turn.start_time && *turn.start_time < 0.0) {
      out.push_back({ViolationKind::kInvalidTurn, "start_time", turn.turn_id,
                     "negative start time"});
    }
    ids.insert(turn.turn_id);
    previous = turn.turn_id;
    first = false;
  }
  for (const ResolutionRecord& r : record.ground_truth_resolutions) {
    if (!ids.count(r.trigger_turn_id)) {
      out.push_back({ViolationKind::kDanglingTriggerTurn, "trigger_turn_id",
                     r.trigger_turn_id, "resolution"});
    }
  }
  for (const ProtocolQuery& q : record.required_protocol_queries) {
    if (!ids.count(q.trigger_turn_id)) {
      out.push_back({ViolationKind::kDanglingTriggerTurn, "trigger_turn_id",
                     q.trigger_turn_id, "query"});
    }
    if (q.quality == QueryQuality::kLowValue && q.urgency != Urgency::kNone) {
      out.push_back({ViolationKind::kInconsistentQuery, "urgency", q.trigger_turn_id,
                     "LOW_VALUE queries carry urgency NONE"});
    }
    if (q.intent.empty() || q.target_slot.empty()) {
      out.push_back({ViolationKind::kInconsistentQuery, "protocol_payload",
                     q.trigger_turn_id, "empty intent or target_slot"});
    }
  }
  validate_snapshot(record.user_a, "user_a", &out);
  validate_snapshot(record.user_b, "user_b", &out);
  return out;
}

}  // namespace concord
