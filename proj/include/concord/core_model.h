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

// Domain types shared by every pipeline stage: dialogue turns, the owner-only
// transcript view, mobile context, mentions, resolutions, protocol queries and
// the policy axes used by the disclosure gate.

#ifndef CONCORD_CORE_MODEL_H_
#define CONCORD_CORE_MODEL_H_

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace concord {

// ---------------------------------------------------------------------------
// Errors.

class ConcordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyTranscriptError : public ConcordError {
 public:
  EmptyTranscriptError() : ConcordError("transcript is empty") {}
};

class InvalidArgumentError : public ConcordError {
 public:
  using ConcordError::ConcordError;
};

// ---------------------------------------------------------------------------
// Speakers and turns.

enum class Role { kUserA, kUserB };

// "User A" / "User B", as written in dataset files and resolution sources.
std::string_view role_label(Role role);
// "UserA" / "UserB", used in wire identifiers such as "A2A:UserB".
std::string_view role_id(Role role);
std::optional<Role> parse_role(std::string_view text);
constexpr Role other(Role role) {
  return role == Role::kUserA ? Role::kUserB : Role::kUserA;
}

struct Turn {
  int turn_id = 0;
  Role speaker = Role::kUserA;
  std::string text;
  std::optional<double> start_time;

  bool operator==(const Turn&) const = default;
};

// The owner's verified turns; everything else survives only as a turn id.
struct OneSidedTranscript {
  Role owner = Role::kUserA;
  std::vector<Turn> turns;
  std::vector<int> masked_slots;

  bool is_masked(int turn_id) const;
  const Turn* find(int turn_id) const;
};

// Keeps exactly the owner's turns. Throws EmptyTranscriptError.
OneSidedTranscript one_sided_view(const std::vector<Turn>& transcript,
                                  Role owner);

// Merges the two owners' views back into one transcript ordered by turn id.
// Throws InvalidArgumentError if the views overlap or share an owner.
std::vector<Turn> interleave(const OneSidedTranscript& a,
                             const OneSidedTranscript& b);

// ---------------------------------------------------------------------------
// Mobile context.

using DateTime = std::chrono::sys_seconds;

// Accepts "YYYY-MM-DDTHH:MM[:SS]" (a space is accepted in place of 'T').
std::optional<DateTime> parse_datetime(std::string_view text);
std::string format_datetime_iso(DateTime t);
// "June 13, 2024, 4:30 PM"
std::string format_datetime_human(DateTime t);
// "June 13, 2024"
std::string format_date_human(DateTime t);
// "4:30 PM"
std::string format_clock(DateTime t);

struct GeoPoint {
  double lat = 0.0;  // degrees, [-90, 90]
  double lon = 0.0;  // degrees, [-180, 180]
  bool operator==(const GeoPoint&) const = default;
};

struct CalendarEvent {
  std::string title;
  DateTime start;
  DateTime end;
  std::optional<std::string> location;
  bool operator==(const CalendarEvent&) const = default;
};

struct LogRecord {
  std::string key;
  std::string value;
  bool operator==(const LogRecord&) const = default;
};

struct AuxLog {
  std::string name;  // e.g. "Object Log"
  std::vector<LogRecord> records;
  bool operator==(const AuxLog&) const = default;
};

struct MobileContextSnapshot {
  std::string location_semantic;
  std::optional<GeoPoint> gps_coords;
  std::optional<std::string> wifi_ssid;
  std::optional<std::string> calendar_next;
  // Device clock at capture time; anchors relative temporal phrases.
  std::optional<DateTime> local_time;
  std::vector<CalendarEvent> calendar;
  std::vector<AuxLog> aux_logs;  // names unique

  bool operator==(const MobileContextSnapshot&) const = default;
};

// ---------------------------------------------------------------------------
// Mentions, resolutions and queries.

enum class EntityCategory { kMedical, kTemporal, kSpatial, kPerson, kObject, kTask };

std::string_view category_name(EntityCategory category);
std::optional<EntityCategory> parse_category(std::string_view text);

// How a mention refers, which decides the resolution rule that may ground it.
enum class MentionKind {
  kExplicit,          // named or lexicon noun phrase
  kProximal,          // "here", "this place"
  kDistal,            // "there", "it", "that folder", "him"
  kRelativeTemporal,  // "tomorrow, 4:30 PM", "now"
  kAbsoluteTemporal,  // "June 13, 2024, 4:30 PM"
  kInterrogative,     // "which bike"
  kAcknowledgment,    // "Yes," directly after a masked turn
};

std::string_view mention_kind_name(MentionKind kind);

struct EntityMention {
  int turn_id = 0;
  std::size_t char_begin = 0;
  std::size_t char_end = 0;
  std::string surface;
  EntityCategory category = EntityCategory::kObject;
  std::map<std::string, std::string> attributes;
  MentionKind kind = MentionKind::kExplicit;
  std::string head;  // lower-case head noun, empty for bare pronouns
  // Acknowledgments only: the focus-turn phrase the masked slot was tied to.
  std::string linked_surface;

  bool operator==(const EntityMention&) const = default;
};

struct ResolutionRecord {
  int trigger_turn_id = 0;
  std::string ambiguous_phrase;
  std::string resolved_entity;
  std::string resolution_source;
  bool operator==(const ResolutionRecord&) const = default;
};

enum class Urgency { kNone, kRoutine, kImmediate };
enum class QueryQuality { kHighValue, kLowValue };

std::string_view urgency_name(Urgency urgency);
std::optional<Urgency> parse_urgency(std::string_view text);
std::string_view quality_name(QueryQuality quality);
std::optional<QueryQuality> parse_quality(std::string_view text);

inline constexpr std::string_view kResolveMissingEntity = "RESOLVE_MISSING_ENTITY";

struct ProtocolQuery {
  int trigger_turn_id = 0;
  QueryQuality quality = QueryQuality::kHighValue;
  std::string reason;
  std::string intent{kResolveMissingEntity};
  std::string target_slot;
  Urgency urgency = Urgency::kNone;
  std::optional<std::string> context_ref;
  std::string natural_language_fallback;

  bool operator==(const ProtocolQuery&) const = default;
};

// ---------------------------------------------------------------------------
// Policy axes.

enum class RelationshipLevel { kL1 = 1, kL2 = 2, kL3 = 3 };

// L1 = 3 (intimate), L2 = 2, L3 = 1 (professional).
constexpr int trust_rank(RelationshipLevel level) {
  return 4 - static_cast<int>(level);
}
std::string_view level_name(RelationshipLevel level);
std::optional<RelationshipLevel> parse_level(std::string_view text);

enum class Sensitivity { kLow = 1, kMid = 2, kHigh = 3, kCritical = 4 };

constexpr int rank(Sensitivity s) { return static_cast<int>(s); }
std::string_view sensitivity_name(Sensitivity s);
std::optional<Sensitivity> parse_sensitivity(std::string_view text);

enum class DisclosureKind { kDirectReveal, kPartialReveal, kApprovalLoop, kSuppress, kAbort };

std::string_view disclosure_name(DisclosureKind kind);

// DirectReveal > PartialReveal > ApprovalLoop > Suppress > Abort.
constexpr int permissiveness(DisclosureKind kind) {
  switch (kind) {
    case DisclosureKind::kDirectReveal: return 4;
    case DisclosureKind::kPartialReveal: return 3;
    case DisclosureKind::kApprovalLoop: return 2;
    case DisclosureKind::kSuppress: return 1;
    case DisclosureKind::kAbort: return 0;
  }
  return 0;
}

using CharSpan = std::pair<std::size_t, std::size_t>;

// masked_spans is non-empty iff kind is PartialReveal. `content` is the text
// that may leave the device; empty for withheld outcomes.
class DisclosureOutcome {
 public:
  static DisclosureOutcome direct(std::string content);
  static DisclosureOutcome partial(std::string masked_content,
                                   std::vector<CharSpan> masked_spans);
  static DisclosureOutcome approval_loop();
  static DisclosureOutcome suppress();
  static DisclosureOutcome abort();

  DisclosureKind kind() const { return kind_; }
  const std::vector<CharSpan>& masked_spans() const { return masked_spans_; }
  const std::string& content() const { return content_; }
  bool reveals() const {
    return kind_ == DisclosureKind::kDirectReveal ||
           kind_ == DisclosureKind::kPartialReveal;
  }

  bool operator==(const DisclosureOutcome&) const = default;

 private:
  explicit DisclosureOutcome(DisclosureKind kind) : kind_(kind) {}

  DisclosureKind kind_;
  std::vector<CharSpan> masked_spans_;
  std::string content_;
};

// ---------------------------------------------------------------------------
// Dataset records.

struct Backstory {
  std::string summary;
  std::string relationship;
  bool operator==(const Backstory&) const = default;
};

struct DatasetRecord {
  std::string dataset_id;
  Backstory backstory;
  MobileContextSnapshot user_a;
  MobileContextSnapshot user_b;
  std::vector<Turn> conversation_transcript;
  std::vector<ResolutionRecord> ground_truth_resolutions;
  std::vector<ProtocolQuery> required_protocol_queries;

  const MobileContextSnapshot& snapshot(Role role) const {
    return role == Role::kUserA ? user_a : user_b;
  }
  bool operator==(const DatasetRecord&) const = default;
};

enum class ViolationKind {
  kNonIncreasingTurnId,
  kInvalidTurn,
  kDanglingTriggerTurn,
  kInvalidEnum,
  kInconsistentQuery,
  kInvalidSnapshot,
  kMissingField,
  kUnknownField,
  kRenamedField,
  kWrongType,
};

struct Violation {
  ViolationKind kind;
  std::string field;  // field or enum name involved, if any
  int turn_id = 0;    // offending turn id, if any
  std::string detail;

  std::string to_string() const;
  bool operator==(const Violation&) const = default;
};

// Semantic checks on a parsed record. Empty result means valid.
std::vector<Violation> validate_dataset(const DatasetRecord& record);

// Checks a single query's enum-bearing fields given as raw strings, so data
// that never made it into the typed form can still be reported.
std::vector<Violation> validate_query_fields(std::string_view quality,
                                             std::string_view urgency);

}  // namespace concord

#endif  // CONCORD_CORE_MODEL_H_
