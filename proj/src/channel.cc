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

#include "concord/channel.h"

#include <algorithm>
#include <cmath>

namespace concord {

void ChannelConfig::validate() const {
  if (!(latency >= 0.0) || !std::isfinite(latency)) {
    throw InvalidArgumentError("latency must be a finite value >= 0");
  }
  if (!(drop_probability >= 0.0 && drop_probability <= 1.0)) {
    throw InvalidArgumentError("drop_probability must lie in [0, 1]");
  }
  if (!(timeout > 0.0) || !std::isfinite(timeout)) {
    throw InvalidArgumentError("timeout must be a finite value > 0");
  }
}

std::string_view channel_event_name(ChannelEventKind kind) {
  switch (kind) {
    case ChannelEventKind::kSend: return "send";
    case ChannelEventKind::kDrop: return "drop";
    case ChannelEventKind::kDeliver: return "deliver";
  }
  return "send";
}

SimChannel::SimChannel(ChannelConfig config) : config_(config), rng_(config.rng_seed) {
  config_.validate();
}

bool SimChannel::send(Role from, std::string message_id, std::string wire, double now) {
  std::lock_guard<std::mutex> lock(mu_);
  // 53 random bits give a uniform double in [0, 1).
  const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  events_.push_back({now, ChannelEventKind::kSend, from, message_id, wire});
  if (u < config_.drop_probability) {
    events_.push_back({now, ChannelEventKind::kDrop, from, std::move(message_id), std::string()});
    return false;
  }
  in_flight_.push_back({from, std::move(message_id), std::move(wire), now, now + config_.latency});
  return true;
}

std::vector<Envelope> SimChannel::poll(Role to, double now) {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<Envelope> out;
  for (auto it = in_flight_.begin(); it != in_flight_.end();) {
    if (it->from != to && it->deliver_at <= now) {
      events_.push_back({it->deliver_at, ChannelEventKind::kDeliver, it->from, it->message_id,
                         std::string()});
      out.push_back(std::move(*it));
      it = in_flight_.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

std::optional<double> SimChannel::next_delivery_time() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::optional<double> best;
  for (const Envelope& e : in_flight_) {
    if (!best || e.deliver_at < *best) best = e.deliver_at;
  }
  return best;
}

std::vector<ChannelEvent> SimChannel::events() const {
  std::lock_guard<std::mutex> lock(mu_);
  return events_;
}

}  // namespace concord
