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

#include "concord/dataset.h"

#include <charconv>
#include <set>

#include <fmt/format.h>

#include "concord/lexicon.h"
#include "concord/text.h"

namespace concord {

using nlohmann::json;
using nlohmann::ordered_json;

DatasetValidationError::DatasetValidationError(std::vector<Violation> violations)
    : ConcordError([&] {
        std::string msg = fmt::format("{} schema violation(s)", violations.size());
        for (const Violation& v : violations) msg += "\n  " + v.to_string();
        return msg;
      }()),
      violations_(std::move(violations)) {}

std::optional<GeoPoint> parse_geo(std::string_view text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  const std::string a = trim(text.substr(0, comma));
  const std::string b = trim(text.substr(comma + 1));
  GeoPoint p;
  auto ra = std::from_chars(a.data(), a.data() + a.size(), p.lat);
  auto rb = std::from_chars(b.data(), b.data() + b.size(), p.lon);
  if (ra.ec != std::errc() || ra.ptr != a.data() + a.size() || rb.ec != std::errc() ||
      rb.ptr != b.data() + b.size()) {
    return std::nullopt;
  }
  if (p.lat < -90 || p.lat > 90 || p.lon < -180 || p.lon > 180) return std::nullopt;
  return p;
}

std::string format_geo(const GeoPoint& point) {
  return fmt::format("{:.4f}, {:.4f}", point.lat, point.lon);
}

namespace {

struct FieldSpec {
  std::vector<std::string> required;
  std::vector<std::string> optional;
};

// Walks a JSON tree against fixed field sets and collects violations.
class Reader {
 public:
  Reader(bool strict, std::vector<Violation>* out) : strict_(strict), out_(out) {}

  // Reports missing, unknown and renamed fields; false if a required one is absent.
  bool check_fields(const json& obj, const std::string& where, const FieldSpec& spec,
                    int turn_id = 0) {
    if (!obj.is_object()) {
      add(ViolationKind::kWrongType, where, turn_id, "expected an object");
      return false;
    }
    std::set<std::string> known(spec.required.begin(), spec.required.end());
    known.insert(spec.optional.begin(), spec.optional.end());
    std::vector<std::string> missing;
    std::vector<std::string> unknown;
    for (const std::string& f : spec.required) {
      if (!obj.contains(f)) missing.push_back(f);
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!known.count(it.key())) unknown.push_back(it.key());
    }
    // One unknown key standing in for one missing key reads as a rename.
    if (missing.size() == 1 && unknown.size() == 1) {
      add(ViolationKind::kRenamedField, missing[0], turn_id,
          fmt::format("{}: found '{}' instead", where, unknown[0]));
      return false;
    }
    for (const std::string& f : missing) {
      add(ViolationKind::kMissingField, f, turn_id, where);
    }
    if (strict_) {
      for (const std::string& f : unknown) add(ViolationKind::kUnknownField, f, turn_id, where);
    }
    return missing.empty();
  }

  std::optional<std::string> str(const json& obj, const std::string& key, int turn_id = 0) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (!v.is_string()) {
      add(ViolationKind::kWrongType, key, turn_id, "expected a string");
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  std::optional<int> integer(const json& obj, const std::string& key, int turn_id = 0) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
      add(ViolationKind::kWrongType, key, turn_id, "expected an integer");
      return std::nullopt;
    }
    return v.get<int>();
  }

  const json* array(const json& obj, const std::string& key) {
    if (!obj.contains(key)) return nullptr;
    const json& v = obj.at(key);
    if (!v.is_array()) {
      add(ViolationKind::kWrongType, key, 0, "expected an array");
      return nullptr;
    }
    return &v;
  }

  std::optional<DateTime> datetime(const json& obj, const std::string& key) {
    const auto s = str(obj, key);
    if (!s) return std::nullopt;
    const auto t = parse_datetime(*s);
    if (!t) add(ViolationKind::kInvalidSnapshot, key, 0, fmt::format("bad datetime '{}'", *s));
    return t;
  }

  void add(ViolationKind kind, std::string field, int turn_id, std::string detail) {
    out_->push_back({kind, std::move(field), turn_id, std::move(detail)});
  }

 private:
  bool strict_;
  std::vector<Violation>* out_;
};

const FieldSpec kRootSpec{{"dataset_id", "backstory", "mobile_context_snapshot",
                           "conversation_transcript", "ground_truth_resolutions",
                           "required_protocol_queries"},
                          {}};
const FieldSpec kBackstorySpec{{"summary", "relationship"}, {}};
const FieldSpec kContextSpec{{"user_a", "user_b"}, {}};
const FieldSpec kSnapshotSpec{
    {"location_semantic"},
    {"gps_coords", "wifi_ssid", "calendar_next", "local_time", "calendar", "aux_logs"}};
const FieldSpec kEventSpec{{"title", "start", "end"}, {"location"}};
const FieldSpec kLogSpec{{"name", "records"}, {}};
const FieldSpec kRecordSpec{{"key", "value"}, {}};
const FieldSpec kTurnSpec{{"turn_id", "speaker", "text"}, {"start_time"}};
const FieldSpec kResolutionSpec{
    {"trigger_turn_id", "ambiguous_phrase", "resolved_entity", "resolution_source"}, {}};
const FieldSpec kQuerySpec{{"trigger_turn_id", "query_quality_check", "reason",
                            "protocol_payload", "natural_language_fallback"},
                           {}};
const FieldSpec kPayloadSpec{{"intent", "target_slot", "urgency"}, {"context_ref"}};

std::optional<MobileContextSnapshot> read_snapshot(Reader& r, const json& obj,
                                                   const std::string& who) {
  if (!r.check_fields(obj, who, kSnapshotSpec)) return std::nullopt;
  MobileContextSnapshot s;
  s.location_semantic = r.str(obj, "location_semantic").value_or("");
  if (const auto g = r.str(obj, "gps_coords")) {
    s.gps_coords = parse_geo(*g);
    if (!s.gps_coords) r.add(ViolationKind::kInvalidSnapshot, "gps_coords", 0, *g);
  }
  s.wifi_ssid = r.str(obj, "wifi_ssid");
  s.calendar_next = r.str(obj, "calendar_next");
  if (obj.contains("local_time")) s.local_time = r.datetime(obj, "local_time");
  if (const json* cal = r.array(obj, "calendar")) {
    for (const json& e : *cal) {
      if (!r.check_fields(e, who + ".calendar", kEventSpec)) continue;
      const auto start = r.datetime(e, "start");
      const auto end = r.datetime(e, "end");
      if (!start || !end) continue;
      s.calendar.push_back({r.str(e, "title").value_or(""), *start, *end, r.str(e, "location")});
    }
  }
  if (const json* logs = r.array(obj, "aux_logs")) {
    for (const json& l : *logs) {
      if (!r.check_fields(l, who + ".aux_logs", kLogSpec)) continue;
      AuxLog log;
      log.name = r.str(l, "name").value_or("");
      if (const json* recs = r.array(l, "records")) {
        for (const json& rec : *recs) {
          if (!r.check_fields(rec, who + ".aux_logs.records", kRecordSpec)) continue;
          log.records.push_back({r.str(rec, "key").value_or(""), r.str(rec, "value").value_or("")});
        }
      }
      s.aux_logs.push_back(std::move(log));
    }
  }
  return s;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DatasetParseError(fmt::format("dataset parse error at byte {}: {}", e.byte, e.what()),
                            e.byte);
  }
}

}  // namespace

DatasetInspection inspect_dataset(std::string_view json_text, bool strict) {
  const json root = parse_json(json_text);
  DatasetInspection out;
  Reader r(strict, &out.violations);
  if (!r.check_fields(root, "record", kRootSpec)) return out;

  DatasetRecord rec;
  bool usable = true;
  rec.dataset_id = r.str(root, "dataset_id").value_or("");

  const json& back = root.at("backstory");
  if (r.check_fields(back, "backstory", kBackstorySpec)) {
    rec.backstory.summary = r.str(back, "summary").value_or("");
    rec.backstory.relationship = r.str(back, "relationship").value_or("");
  }

  const json& ctx = root.at("mobile_context_snapshot");
  if (r.check_fields(ctx, "mobile_context_snapshot", kContextSpec)) {
    auto a = read_snapshot(r, ctx.at("user_a"), "user_a");
    auto b = read_snapshot(r, ctx.at("user_b"), "user_b");
    if (a) rec.user_a = std::move(*a);
    if (b) rec.user_b = std::move(*b);
  }

  if (const json* turns = r.array(root, "conversation_transcript")) {
    for (const json& t : *turns) {
      const int id = t.is_object() && t.contains("turn_id") && t["turn_id"].is_number_integer()
                         ? t["turn_id"].get<int>()
                         : 0;
      if (!r.check_fields(t, "conversation_transcript", kTurnSpec, id)) {
        usable = false;
        continue;
      }
      Turn turn;
      turn.turn_id = r.integer(t, "turn_id", id).value_or(0);
      const auto speaker = r.str(t, "speaker", id);
      const auto role = speaker ? parse_role(*speaker) : std::nullopt;
      if (speaker && !role) {
        r.add(ViolationKind::kInvalidEnum, "speaker", id, fmt::format("'{}'", *speaker));
      }
      turn.speaker = role.value_or(Role::kUserA);
      turn.text = r.str(t, "text", id).value_or("");
      if (t.contains("start_time")) {
        if (t["start_time"].is_number()) {
          turn.start_time = t["start_time"].get<double>();
        } else {
          r.add(ViolationKind::kWrongType, "start_time", id, "expected a number");
        }
      }
      rec.conversation_transcript.push_back(std::move(turn));
    }
  } else {
    usable = false;
  }

  if (const json* res = r.array(root, "ground_truth_resolutions")) {
    for (const json& x : *res) {
      if (!r.check_fields(x, "ground_truth_resolutions", kResolutionSpec)) continue;
      ResolutionRecord rr;
      rr.trigger_turn_id = r.integer(x, "trigger_turn_id").value_or(0);
      rr.ambiguous_phrase = r.str(x, "ambiguous_phrase").value_or("");
      rr.resolved_entity = r.str(x, "resolved_entity").value_or("");
      rr.resolution_source = r.str(x, "resolution_source").value_or("");
      rec.ground_truth_resolutions.push_back(std::move(rr));
    }
  }

  if (const json* qs = r.array(root, "required_protocol_queries")) {
    for (const json& x : *qs) {
      const int id = x.is_object() && x.contains("trigger_turn_id") &&
                             x["trigger_turn_id"].is_number_integer()
                         ? x["trigger_turn_id"].get<int>()
                         : 0;
      if (!r.check_fields(x, "required_protocol_queries", kQuerySpec, id)) continue;
      const json& p = x.at("protocol_payload");
      if (!r.check_fields(p, "protocol_payload", kPayloadSpec, id)) continue;
      ProtocolQuery q;
      q.trigger_turn_id = id;
      q.reason = r.str(x, "reason", id).value_or("");
      q.natural_language_fallback = r.str(x, "natural_language_fallback", id).value_or("");
      q.intent = r.str(p, "intent", id).value_or("");
      q.target_slot = r.str(p, "target_slot", id).value_or("");
      q.context_ref = r.str(p, "context_ref", id);
      const std::string quality = r.str(x, "query_quality_check", id).value_or("");
      const std::string urgency = r.str(p, "urgency", id).value_or("");
      for (Violation v : validate_query_fields(quality, urgency)) {
        v.turn_id = id;
        out.violations.push_back(std::move(v));
      }
      q.quality = parse_quality(quality).value_or(QueryQuality::kHighValue);
      q.urgency = parse_urgency(urgency).value_or(Urgency::kNone);
      rec.required_protocol_queries.push_back(std::move(q));
    }
  }

  if (!usable) return out;
  for (Violation& v : validate_dataset(rec)) out.violations.push_back(std::move(v));
  out.record = std::move(rec);
  return out;
}

DatasetRecord parse_dataset(std::string_view json_text, bool strict) {
  DatasetInspection ins = inspect_dataset(json_text, strict);
  if (!ins.violations.empty() || !ins.record) {
    throw DatasetValidationError(std::move(ins.violations));
  }
  return std::move(*ins.record);
}

DatasetRecord load_dataset(const std::filesystem::path& path, bool strict) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const LexiconError& e) {
    throw DatasetParseError(e.what(), 0);
  }
  return parse_dataset(text, strict);
}

namespace {

ordered_json snapshot_to_json(const MobileContextSnapshot& s) {
  ordered_json j;
  j["location_semantic"] = s.location_semantic;
  if (s.gps_coords) j["gps_coords"] = format_geo(*s.gps_coords);
  if (s.wifi_ssid) j["wifi_ssid"] = *s.wifi_ssid;
  if (s.calendar_next) j["calendar_next"] = *s.calendar_next;
  if (s.local_time) j["local_time"] = format_datetime_iso(*s.local_time);
  if (!s.calendar.empty()) {
    ordered_json cal = ordered_json::array();
    for (const CalendarEvent& e : s.calendar) {
      ordered_json ej;
      ej["title"] = e.title;
      ej["start"] = format_datetime_iso(e.start);
      ej["end"] = format_datetime_iso(e.end);
      if (e.location) ej["location"] = *e.location;
      cal.push_back(std::move(ej));
    }
    j["calendar"] = std::move(cal);
  }
  if (!s.aux_logs.empty()) {
    ordered_json logs = ordered_json::array();
    for (const AuxLog& l : s.aux_logs) {
      ordered_json recs = ordered_json::array();
      for (const LogRecord& r : l.records) recs.push_back({{"key", r.key}, {"value", r.value}});
      logs.push_back({{"name", l.name}, {"records", std::move(recs)}});
    }
    j["aux_logs"] = std::move(logs);
  }
  return j;
}

}  // namespace

ordered_json dataset_to_json(const DatasetRecord& record) {
  ordered_json j;
  j["dataset_id"] = record.dataset_id;
  j["backstory"] = {{"summary", record.backstory.summary},
                    {"relationship", record.backstory.relationship}};
  j["mobile_context_snapshot"] = {{"user_a", snapshot_to_json(record.user_a)},
                                  {"user_b", snapshot_to_json(record.user_b)}};
  ordered_json turns = ordered_json::array();
  for (const Turn& t : record.conversation_transcript) {
    ordered_json tj;
    tj["turn_id"] = t.turn_id;
    tj["speaker"] = std::string(role_label(t.speaker));
    tj["text"] = t.text;
    if (t.start_time) tj["start_time"] = *t.start_time;
    turns.push_back(std::move(tj));
  }
  j["conversation_transcript"] = std::move(turns);
  ordered_json res = ordered_json::array();
  for (const ResolutionRecord& r : record.ground_truth_resolutions) {
    ordered_json rj;
    rj["trigger_turn_id"] = r.trigger_turn_id;
    rj["ambiguous_phrase"] = r.ambiguous_phrase;
    rj["resolved_entity"] = r.resolved_entity;
    rj["resolution_source"] = r.resolution_source;
    res.push_back(std::move(rj));
  }
  j["ground_truth_resolutions"] = std::move(res);
  ordered_json qs = ordered_json::array();
  for (const ProtocolQuery& q : record.required_protocol_queries) {
    ordered_json qj;
    qj["trigger_turn_id"] = q.trigger_turn_id;
    qj["query_quality_check"] = std::string(quality_name(q.quality));
    qj["reason"] = q.reason;
    ordered_json p;
    p["intent"] = q.intent;
    p["target_slot"] = q.target_slot;
    p["urgency"] = std::string(urgency_name(q.urgency));
    if (q.context_ref) p["context_ref"] = *q.context_ref;
    qj["protocol_payload"] = std::move(p);
    qj["natural_language_fallback"] = q.natural_language_fallback;
    qs.push_back(std::move(qj));
  }
  j["required_protocol_queries"] = std::move(qs);
  return j;
}

std::string dump_dataset(const DatasetRecord& record) {
  return dataset_to_json(record).dump(2) + "\n";
}

}  // namespace concord
