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

// Wire messages exchanged between agents and their JSON codec. Field names
// follow the dataset schema for queries.

#ifndef CONCORD_CODEC_H_
#define CONCORD_CODEC_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "concord/core_model.h"

namespace concord {

class DecodeError : public ConcordError {
 public:
  DecodeError(std::string message, std::size_t byte_offset)
      : ConcordError(std::move(message)), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

class SchemaError : public ConcordError {
 public:
  SchemaError(std::string field, std::string message)
      : ConcordError(std::move(message)), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class ResponseStatus { kAnswered, kPartial, kPendingApproval, kDeclined, kTimedOut };

std::string_view status_name(ResponseStatus status);
std::optional<ResponseStatus> parse_status(std::string_view text);
// ANSWERED, PARTIAL, DECLINED and TIMED_OUT close a query.
bool is_terminal(ResponseStatus status);

inline constexpr std::string_view kReasonNotFound = "NOT_FOUND";

// Unknown fields kept by lenient decoding: key and compact JSON value.
using ExtraFields = std::vector<std::pair<std::string, std::string>>;

struct ProtocolPayload {
  std::string intent{kResolveMissingEntity};
  std::string target_slot;
  Urgency urgency = Urgency::kRoutine;
  std::optional<std::string> context_ref;

  bool operator==(const ProtocolPayload&) const = default;
};

struct QueryRequest {
  std::string message_id;
  std::string conversation_id;
  int trigger_turn_id = 0;
  ProtocolPayload protocol_payload;
  std::string natural_language_fallback;
  double sent_at = 0.0;  // simulated seconds
  ExtraFields extra;

  bool operator==(const QueryRequest&) const = default;
};

struct QueryResponse {
  std::string message_id;
  ResponseStatus status = ResponseStatus::kDeclined;
  std::optional<std::string> content;  // only for ANSWERED and PARTIAL
  bool masked = false;                 // only for PARTIAL
  std::optional<std::string> reason;   // machine-readable, e.g. NOT_FOUND
  double sent_at = 0.0;
  ExtraFields extra;

  bool operator==(const QueryResponse&) const = default;
};

using Message = std::variant<QueryRequest, QueryResponse>;

enum class DecodeMode { kStrict, kLenient };

// Throws SchemaError when a message breaks its invariants.
void check_message(const QueryRequest& request);
void check_message(const QueryResponse& response);

// Canonical single-line JSON. Throws SchemaError for invalid messages.
std::string encode(const Message& message);

// Throws DecodeError for malformed JSON and SchemaError for schema breaks.
Message decode(std::string_view bytes, DecodeMode mode = DecodeMode::kStrict);

QueryRequest make_request(const ProtocolQuery& query, std::string message_id,
                          std::string conversation_id, double sent_at);

// The dataset form of a query ("query_quality_check", "protocol_payload", ...).
std::string encode_query(const ProtocolQuery& query);
ProtocolQuery decode_query(std::string_view bytes, DecodeMode mode = DecodeMode::kStrict);

}  // namespace concord

#endif  // CONCORD_CODEC_H_
