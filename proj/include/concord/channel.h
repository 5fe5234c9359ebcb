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

// Discrete-event message channel between two agents: fixed latency, seeded
// random drops. Time is simulated seconds supplied by the caller.

#ifndef CONCORD_CHANNEL_H_
#define CONCORD_CHANNEL_H_

#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "concord/core_model.h"

namespace concord {

struct ChannelConfig {
  double latency = 0.5;
  double drop_probability = 0.0;
  double timeout = 30.0;
  std::uint64_t rng_seed = 0;

  // Throws InvalidArgumentError.
  void validate() const;
};

enum class ChannelEventKind { kSend, kDrop, kDeliver };

std::string_view channel_event_name(ChannelEventKind kind);

struct ChannelEvent {
  double time = 0.0;
  ChannelEventKind kind = ChannelEventKind::kSend;
  Role from = Role::kUserA;
  std::string message_id;
  std::string wire;

  bool operator==(const ChannelEvent&) const = default;
};

struct Envelope {
  Role from = Role::kUserA;
  std::string message_id;
  std::string wire;
  double sent_at = 0.0;
  double deliver_at = 0.0;
};

// Safe for two endpoints calling concurrently.
class SimChannel {
 public:
  explicit SimChannel(ChannelConfig config);

  // False when the message was dropped.
  bool send(Role from, std::string message_id, std::string wire, double now);

  // Messages for `to` due by `now`, in send order.
  std::vector<Envelope> poll(Role to, double now);

  std::optional<double> next_delivery_time() const;
  std::vector<ChannelEvent> events() const;
  const ChannelConfig& config() const { return config_; }

 private:
  ChannelConfig config_;
  mutable std::mutex mu_;
  std::mt19937_64 rng_;
  std::deque<Envelope> in_flight_;
  std::vector<ChannelEvent> events_;
};

}  // namespace concord

#endif  // CONCORD_CHANNEL_H_
