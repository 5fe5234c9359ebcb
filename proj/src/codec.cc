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

#include "concord/codec.h"

#include <set>

#include <fmt/format.h>
#include <json.hpp>

namespace concord {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view status_name(ResponseStatus status) {
  switch (status) {
    case ResponseStatus::kAnswered: return "ANSWERED";
    case ResponseStatus::kPartial: return "PARTIAL";
    case ResponseStatus::kPendingApproval: return "PENDING_APPROVAL";
    case ResponseStatus::kDeclined: return "DECLINED";
    case ResponseStatus::kTimedOut: return "TIMED_OUT";
  }
  return "DECLINED";
}

std::optional<ResponseStatus> parse_status(std::string_view text) {
  for (ResponseStatus s : {ResponseStatus::kAnswered, ResponseStatus::kPartial,
                           ResponseStatus::kPendingApproval, ResponseStatus::kDeclined,
                           ResponseStatus::kTimedOut}) {
    if (status_name(s) == text) return s;
  }
  return std::nullopt;
}

bool is_terminal(ResponseStatus status) { return status != ResponseStatus::kPendingApproval; }

void check_message(const QueryRequest& r) {
  if (r.message_id.empty()) throw SchemaError("message_id", "message_id is empty");
  if (r.protocol_payload.intent.empty()) throw SchemaError("intent", "intent is empty");
  if (r.protocol_payload.target_slot.empty()) {
    throw SchemaError("target_slot", "target_slot is empty");
  }
}

void check_message(const QueryResponse& r) {
  if (r.message_id.empty()) throw SchemaError("message_id", "message_id is empty");
  const bool carries = r.status == ResponseStatus::kAnswered || r.status == ResponseStatus::kPartial;
  if (carries != r.content.has_value()) {
    throw SchemaError("content", fmt::format("content must be present iff status is ANSWERED or "
                                             "PARTIAL (status {})",
                                             status_name(r.status)));
  }
  if (r.masked && r.status != ResponseStatus::kPartial) {
    throw SchemaError("masked", "masked responses must have status PARTIAL");
  }
}

namespace {

void put_extra(ordered_json& j, const ExtraFields& extra) {
  for (const auto& [k, v] : extra) j[k] = ordered_json::parse(v);
}

ordered_json payload_json(const ProtocolPayload& p) {
  ordered_json j;
  j["intent"] = p.intent;
  j["target_slot"] = p.target_slot;
  j["urgency"] = std::string(urgency_name(p.urgency));
  if (p.context_ref) j["context_ref"] = *p.context_ref;
  return j;
}

json parse_bytes(std::string_view bytes) {
  try {
    return json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw DecodeError(fmt::format("malformed message at byte {}: {}", e.byte, e.what()), e.byte);
  }
}

// Field access with schema errors; remembers which keys were consumed.
class Fields {
 public:
  Fields(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) throw SchemaError(where_, where_ + " must be an object");
  }

  const json& need(const std::string& key) {
    used_.insert(key);
    if (!obj_.contains(key)) throw SchemaError(key, fmt::format("{} lacks '{}'", where_, key));
    return obj_.at(key);
  }
  const json* maybe(const std::string& key) {
    used_.insert(key);
    return obj_.contains(key) ? &obj_.at(key) : nullptr;
  }
  std::string string(const std::string& key) { return as_string(key, need(key)); }
  std::optional<std::string> opt_string(const std::string& key) {
    const json* v = maybe(key);
    if (!v) return std::nullopt;
    return as_string(key, *v);
  }
  int integer(const std::string& key) {
    const json& v = need(key);
    if (!v.is_number_integer()) throw SchemaError(key, key + " must be an integer");
    return v.get<int>();
  }
  double number(const std::string& key) {
    const json& v = need(key);
    if (!v.is_number()) throw SchemaError(key, key + " must be a number");
    return v.get<double>();
  }

  // Strict mode rejects leftovers; lenient mode keeps them.
  ExtraFields rest(DecodeMode mode) const {
    ExtraFields extra;
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (used_.count(it.key())) continue;
      if (mode == DecodeMode::kStrict) {
        throw SchemaError(it.key(), fmt::format("unknown field '{}' in {}", it.key(), where_));
      }
      extra.emplace_back(it.key(), it.value().dump());
    }
    return extra;
  }

 private:
  static std::string as_string(const std::string& key, const json& v) {
    if (!v.is_string()) throw SchemaError(key, key + " must be a string");
    return v.get<std::string>();
  }

  const json& obj_;
  std::string where_;
  std::set<std::string> used_;
};

ProtocolPayload read_payload(const json& obj, DecodeMode mode) {
  Fields f(obj, "protocol_payload");
  ProtocolPayload p;
  p.intent = f.string("intent");
  p.target_slot = f.string("target_slot");
  const std::string urgency = f.string("urgency");
  const auto u = parse_urgency(urgency);
  if (!u) throw SchemaError("urgency", fmt::format("urgency '{}' not in enum", urgency));
  p.urgency = *u;
  p.context_ref = f.opt_string("context_ref");
  // Unknown payload fields are dropped in lenient mode.
  f.rest(mode);
  return p;
}

}  // namespace

std::string encode(const Message& message) {
  ordered_json j;
  if (const auto* r = std::get_if<QueryRequest>(&message)) {
    check_message(*r);
    j["type"] = "query";
    j["message_id"] = r->message_id;
    j["conversation_id"] = r->conversation_id;
    j["trigger_turn_id"] = r->trigger_turn_id;
    j["protocol_payload"] = payload_json(r->protocol_payload);
    j["natural_language_fallback"] = r->natural_language_fallback;
    j["sent_at"] = r->sent_at;
    put_extra(j, r->extra);
  } else {
    const auto& s = std::get<QueryResponse>(message);
    check_message(s);
    j["type"] = "response";
    j["message_id"] = s.message_id;
    j["status"] = std::string(status_name(s.status));
    if (s.content) j["content"] = *s.content;
    j["masked"] = s.masked;
    if (s.reason) j["reason"] = *s.reason;
    j["sent_at"] = s.sent_at;
    put_extra(j, s.extra);
  }
  return j.dump();
}

Message decode(std::string_view bytes, DecodeMode mode) {
  const json j = parse_bytes(bytes);
  Fields f(j, "message");
  const std::string type = f.string("type");
  if (type == "query") {
    QueryRequest r;
    r.message_id = f.string("message_id");
    r.conversation_id = f.string("conversation_id");
    r.trigger_turn_id = f.integer("trigger_turn_id");
    r.protocol_payload = read_payload(f.need("protocol_payload"), mode);
    r.natural_language_fallback = f.string("natural_language_fallback");
    r.sent_at = f.number("sent_at");
    r.extra = f.rest(mode);
    check_message(r);
    return r;
  }
  if (type == "response") {
    QueryResponse s;
    s.message_id = f.string("message_id");
    const std::string status = f.string("status");
    const auto st = parse_status(status);
    if (!st) throw SchemaError("status", fmt::format("status '{}' not in enum", status));
    s.status = *st;
    s.content = f.opt_string("content");
    const json& masked = f.need("masked");
    if (!masked.is_boolean()) throw SchemaError("masked", "masked must be a boolean");
    s.masked = masked.get<bool>();
    s.reason = f.opt_string("reason");
    s.sent_at = f.number("sent_at");
    s.extra = f.rest(mode);
    check_message(s);
    return s;
  }
  throw SchemaError("type", fmt::format("unknown message type '{}'", type));
}

QueryRequest make_request(const ProtocolQuery& query, std::string message_id,
                          std::string conversation_id, double sent_at) {
  QueryRequest r;
  r.message_id = std::move(message_id);
  r.conversation_id = std::move(conversation_id);
  r.trigger_turn_id = query.trigger_turn_id;
  r.protocol_payload = {query.intent, query.target_slot, query.urgency, query.context_ref};
  r.natural_language_fallback = query.natural_language_fallback;
  r.sent_at = sent_at;
  return r;
}

std::string encode_query(const ProtocolQuery& q) {
  if (q.intent.empty() || q.target_slot.empty()) {
    throw SchemaError("protocol_payload", "intent and target_slot must be non-empty");
  }
  ordered_json j;
  j["trigger_turn_id"] = q.trigger_turn_id;
  j["query_quality_check"] = std::string(quality_name(q.quality));
  j["reason"] = q.reason;
  j["protocol_payload"] =
      payload_json({q.intent, q.target_slot, q.urgency, q.context_ref});
  j["natural_language_fallback"] = q.natural_language_fallback;
  return j.dump();
}

ProtocolQuery decode_query(std::string_view bytes, DecodeMode mode) {
  const json j = parse_bytes(bytes);
  Fields f(j, "query");
  ProtocolQuery q;
  q.trigger_turn_id = f.integer("trigger_turn_id");
  const std::string quality = f.string("query_quality_check");
  const auto ql = parse_quality(quality);
  if (!ql) throw SchemaError("query_quality_check", fmt::format("'{}' not in enum", quality));
  q.quality = *ql;
  q.reason = f.string("reason");
  const ProtocolPayload p = read_payload(f.need("protocol_payload"), mode);
  q.intent = p.intent;
  q.target_slot = p.target_slot;
  q.urgency = p.urgency;
  q.context_ref = p.context_ref;
  q.natural_language_fallback = f.string("natural_language_fallback");
  f.rest(mode);
  return q;
}

}  // namespace concord
