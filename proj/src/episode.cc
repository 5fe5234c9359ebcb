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

#include "concord/episode.h"

#include <limits>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "concord/text.h"

namespace concord {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<ResolutionRecord> EpisodeTrace::resolutions() const {
  std::vector<ResolutionRecord> out;
  for (const AnalysisRecord& a : analyses) {
    out.insert(out.end(), a.resolutions.begin(), a.resolutions.end());
  }
  for (const MergeRecord& m : merges) {
    if (m.resolution) out.push_back(*m.resolution);
  }
  return out;
}

std::size_t EpisodeTrace::dispatched_count() const {
  std::size_t n = 0;
  for (const AnalysisRecord& a : analyses) {
    for (const GapEntry& g : a.gaps) n += g.dispatched ? 1 : 0;
  }
  return n;
}

namespace {

struct Event {
  enum class Kind { kTurn, kSend, kTimeout };

  double time = 0.0;
  std::uint64_t seq = 0;
  Kind kind = Kind::kTurn;
  Role role = Role::kUserA;
  std::size_t index = 0;   // kTurn
  std::string message_id;  // kSend, kTimeout
  std::string wire;        // kSend

  bool operator>(const Event& o) const {
    return time != o.time ? time > o.time : seq > o.seq;
  }
};

class Runner {
 public:
  Runner(const DatasetRecord& record, const EngineConfig& engine, const ChannelConfig& channel,
         const ApprovalPolicy& approval, const AgentLexicons& lex)
      : record_(record), approval_(approval), channel_(channel) {
    trace_.dataset_id = record.dataset_id;
    trace_.seed = channel.rng_seed;
    trace_.engine = engine;
    trace_.channel = channel;
    for (Role r : {Role::kUserA, Role::kUserB}) {
      agents_.emplace_back(r, one_sided_view(record.conversation_transcript, r),
                           record.snapshot(r), lex, engine);
    }
    const std::vector<Turn>& turns = record.conversation_transcript;
    for (std::size_t i = 0; i < turns.size(); ++i) {
      const double t = turns[i].start_time.value_or(static_cast<double>(i) * engine.turn_spacing);
      Agent& owner = agent(turns[i].speaker);
      const auto& kept = owner.view().turns;
      std::size_t index = 0;
      while (kept[index].turn_id != turns[i].turn_id) ++index;
      push({t, 0, Event::Kind::kTurn, turns[i].speaker, index, {}, {}});
    }
  }

  EpisodeTrace run() {
    constexpr double kNever = std::numeric_limits<double>::infinity();
    while (true) {
      const double next_event = queue_.empty() ? kNever : queue_.top().time;
      const double next_delivery = channel_.next_delivery_time().value_or(kNever);
      if (next_event == kNever && next_delivery == kNever) break;
      if (next_delivery <= next_event) {
        for (Role r : {Role::kUserA, Role::kUserB}) {
          for (Envelope& env : channel_.poll(r, next_delivery)) deliver(r, env, next_delivery);
        }
        continue;
      }
      Event ev = queue_.top();
      queue_.pop();
      switch (ev.kind) {
        case Event::Kind::kTurn: on_turn(ev); break;
        case Event::Kind::kSend:
          channel_.send(ev.role, ev.message_id, std::move(ev.wire), ev.time);
          break;
        case Event::Kind::kTimeout: on_timeout(ev); break;
      }
    }
    trace_.channel_events = channel_.events();
    for (const Agent& a : agents_) {
      for (const std::string& line : a.log()) {
        trace_.log.push_back(fmt::format("{}: {}", role_id(a.owner()), line));
      }
    }
    return std::move(trace_);
  }

 private:
  Agent& agent(Role r) { return agents_[r == Role::kUserA ? 0 : 1]; }

  void push(Event ev) {
    ev.seq = next_seq_++;
    queue_.push(std::move(ev));
  }

  void on_turn(const Event& ev) {
    Agent& a = agent(ev.role);
    TurnAnalysis analysis;
    try {
      analysis = a.analyze(ev.index);
    } catch (const ConcordError& e) {
      throw ConcordError(fmt::format("{} turn {}: {}", role_id(ev.role),
                                     a.view().turns[ev.index].turn_id, e.what()));
    }
    AnalysisRecord rec;
    rec.agent = ev.role;
    rec.focus_turn_id = analysis.focus_turn_id;
    rec.time = ev.time;
    rec.level = analysis.relationship.level;
    rec.locked = analysis.relationship.locked;
    rec.evidence = analysis.relationship.evidence;
    for (const ResolvedMention& rm : analysis.mentions) {
      if (rm.resolution) rec.resolutions.push_back(*rm.resolution);
    }
    rec.candidate_turns = analysis.candidate_turns;
    const std::vector<ProtocolQuery> selected = a.select_queries(analysis);
    std::size_t next = 0;
    for (const ProtocolQuery& q : analysis.gaps.queries) {
      GapEntry g{q, false, {}};
      if (next < selected.size() && selected[next] == q) {
        ++next;
        g.dispatched = true;
        g.message_id = fmt::format("{}-q{:03}", role_id(ev.role), ++sent_[ev.role == Role::kUserA]);
        const QueryRequest req = make_request(q, g.message_id, record_.dataset_id, ev.time);
        a.track(req);
        channel_.send(ev.role, g.message_id, encode(req), ev.time);
        push({ev.time + channel_.config().timeout, 0, Event::Kind::kTimeout, ev.role, 0,
              g.message_id, {}});
      }
      rec.gaps.push_back(std::move(g));
    }
    trace_.analyses.push_back(std::move(rec));
  }

  void deliver(Role to, const Envelope& env, double now) {
    Message msg;
    try {
      msg = decode(env.wire, DecodeMode::kStrict);
    } catch (const ConcordError& e) {
      trace_.log.push_back(fmt::format("{}: protocol error on {}: {}", role_id(to),
                                       env.message_id, e.what()));
      return;
    }
    Agent& a = agent(to);
    if (const auto* req = std::get_if<QueryRequest>(&msg)) {
      RespondResult res = a.respond(*req, approval_, now);
      const DisclosureDecision& d = res.decision;
      trace_.decisions.push_back({to, now, d.message_id, d.trigger_turn_id, d.target_slot,
                                  d.candidate_answer, d.candidate_source, d.sensitivity,
                                  d.intent_elevated, d.relationship.level, d.gate, d.approval,
                                  d.outcome, d.status, d.notes});
      for (const QueryResponse& r : res.responses) {
        const std::string wire = encode(r);
        if (r.sent_at <= now) {
          channel_.send(to, r.message_id, wire, now);
        } else {
          push({r.sent_at, 0, Event::Kind::kSend, to, 0, r.message_id, wire});
        }
      }
      return;
    }
    const auto& resp = std::get<QueryResponse>(msg);
    const MergeResult m = a.merge_response(resp);
    trace_.merges.push_back({to, now, m.message_id, m.trigger_turn_id, m.kind, m.resolution,
                             m.reason});
  }

  void on_timeout(const Event& ev) {
    if (auto m = agent(ev.role).expire(ev.message_id)) {
      trace_.merges.push_back({ev.role, ev.time, m->message_id, m->trigger_turn_id, m->kind,
                               m->resolution, m->reason});
    }
  }

  const DatasetRecord& record_;
  const ApprovalPolicy& approval_;
  SimChannel channel_;
  std::vector<Agent> agents_;
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue_;
  std::uint64_t next_seq_ = 0;
  std::map<bool, int> sent_;
  EpisodeTrace trace_;
};

// --- JSON helpers.

std::optional<Role> role_from_id(std::string_view s) { return parse_role(s); }

ordered_json resolution_json(const ResolutionRecord& r) {
  ordered_json j;
  j["trigger_turn_id"] = r.trigger_turn_id;
  j["ambiguous_phrase"] = r.ambiguous_phrase;
  j["resolved_entity"] = r.resolved_entity;
  j["resolution_source"] = r.resolution_source;
  return j;
}

ResolutionRecord resolution_from(const json& j) {
  return {j.at("trigger_turn_id").get<int>(), j.at("ambiguous_phrase").get<std::string>(),
          j.at("resolved_entity").get<std::string>(), j.at("resolution_source").get<std::string>()};
}

std::string_view approval_name(ApprovalSignal s) {
  return s == ApprovalSignal::kGranted ? "granted" : "denied";
}

std::optional<DisclosureKind> parse_disclosure(std::string_view s) {
  for (DisclosureKind k : {DisclosureKind::kDirectReveal, DisclosureKind::kPartialReveal,
                           DisclosureKind::kApprovalLoop, DisclosureKind::kSuppress,
                           DisclosureKind::kAbort}) {
    if (disclosure_name(k) == s) return k;
  }
  return std::nullopt;
}

std::optional<MergeKind> parse_merge_kind(std::string_view s) {
  for (MergeKind k : {MergeKind::kResolved, MergeKind::kWithheld, MergeKind::kPending,
                      MergeKind::kOrphan, MergeKind::kDuplicate}) {
    if (merge_kind_name(k) == s) return k;
  }
  return std::nullopt;
}

template <typename T>
T need(std::optional<T> v, std::string_view field, std::string_view text) {
  if (!v) throw SchemaError(std::string(field), fmt::format("bad {} '{}'", field, text));
  return *v;
}

std::string private_tag(Role r) { return "private:" + std::string(role_id(r)); }
std::string owner_tag(Role r) { return "owner:" + std::string(role_id(r)); }

}  // namespace

EpisodeTrace run_episode(const DatasetRecord& record, const EngineConfig& engine,
                         const ChannelConfig& channel, const ApprovalPolicy& approval,
                         const AgentLexicons& lex) {
  engine.validate();
  channel.validate();
  if (record.conversation_transcript.empty()) throw EmptyTranscriptError();
  return Runner(record, engine, channel, approval, lex).run();
}

std::string trace_to_jsonl(const EpisodeTrace& t) {
  std::string out;
  const auto line = [&](const ordered_json& j) { out += j.dump() + "\n"; };

  ordered_json h;
  h["record"] = "header";
  h["visibility"] = "public";
  h["dataset_id"] = t.dataset_id;
  h["seed"] = t.seed;
  h["engine"] = {{"history_turns", t.engine.history_turns},
                 {"dispatch_low_value", t.engine.dispatch_low_value},
                 {"approval_delay", t.engine.approval_delay},
                 {"turn_spacing", t.engine.turn_spacing},
                 {"distance_lock", t.engine.thresholds.distance_lock},
                 {"intimacy_types", t.engine.thresholds.intimacy_types},
                 {"collective_floor", t.engine.thresholds.collective_floor},
                 {"ratio_floor", t.engine.thresholds.ratio_floor}};
  h["channel"] = {{"latency", t.channel.latency},
                  {"drop_probability", t.channel.drop_probability},
                  {"timeout", t.channel.timeout},
                  {"rng_seed", t.channel.rng_seed}};
  line(h);

  for (const AnalysisRecord& a : t.analyses) {
    ordered_json j;
    j["record"] = "analysis";
    j["visibility"] = owner_tag(a.agent);
    j["agent"] = std::string(role_id(a.agent));
    j["focus_turn_id"] = a.focus_turn_id;
    j["time"] = a.time;
    ordered_json ev = ordered_json::array();
    for (const MarkerEvidence& e : a.evidence) {
      ev.push_back({{"marker", e.marker}, {"turn_id", e.turn_id}, {"phrase", e.phrase}});
    }
    j["relationship"] = {{"level", std::string(level_name(a.level))},
                         {"locked", a.locked},
                         {"evidence", std::move(ev)}};
    ordered_json res = ordered_json::array();
    for (const ResolutionRecord& r : a.resolutions) res.push_back(resolution_json(r));
    j["resolutions"] = std::move(res);
    j["candidate_turns"] = a.candidate_turns;
    ordered_json gaps = ordered_json::array();
    for (const GapEntry& g : a.gaps) {
      ordered_json gj = ordered_json::parse(encode_query(g.query));
      gj["dispatched"] = g.dispatched;
      if (g.dispatched) gj["message_id"] = g.message_id;
      gaps.push_back(std::move(gj));
    }
    j["gaps"] = std::move(gaps);
    line(j);
  }

  for (const ChannelEvent& e : t.channel_events) {
    ordered_json j;
    j["record"] = "channel";
    j["visibility"] = "public";
    j["time"] = e.time;
    j["event"] = std::string(channel_event_name(e.kind));
    j["from"] = std::string(role_id(e.from));
    j["message_id"] = e.message_id;
    if (e.kind == ChannelEventKind::kSend) j["wire"] = e.wire;
    line(j);
  }

  for (const DecisionRecord& d : t.decisions) {
    ordered_json j;
    j["record"] = "decision";
    j["visibility"] = private_tag(d.agent);
    j["agent"] = std::string(role_id(d.agent));
    j["time"] = d.time;
    j["message_id"] = d.message_id;
    j["trigger_turn_id"] = d.trigger_turn_id;
    j["target_slot"] = d.target_slot;
    if (d.candidate_answer) {
      j["candidate_answer"] = *d.candidate_answer;
      j["candidate_source"] = d.candidate_source;
    }
    j["sensitivity"] = std::string(sensitivity_name(d.sensitivity));
    j["intent_elevated"] = d.intent_elevated;
    j["level"] = std::string(level_name(d.level));
    if (d.gate) j["gate"] = std::string(disclosure_name(*d.gate));
    if (d.approval) j["approval"] = std::string(approval_name(*d.approval));
    j["outcome"] = std::string(disclosure_name(d.outcome));
    j["status"] = std::string(status_name(d.status));
    j["notes"] = d.notes;
    line(j);
  }

  for (const MergeRecord& m : t.merges) {
    ordered_json j;
    j["record"] = "merge";
    j["visibility"] = owner_tag(m.agent);
    j["agent"] = std::string(role_id(m.agent));
    j["time"] = m.time;
    j["message_id"] = m.message_id;
    j["trigger_turn_id"] = m.trigger_turn_id;
    j["kind"] = std::string(merge_kind_name(m.kind));
    if (m.resolution) j["resolution"] = resolution_json(*m.resolution);
    j["reason"] = m.reason;
    line(j);
  }

  ordered_json f;
  f["record"] = "footer";
  f["visibility"] = "public";
  f["analyses"] = t.analyses.size();
  f["dispatched"] = t.dispatched_count();
  f["decisions"] = t.decisions.size();
  f["merges"] = t.merges.size();
  f["log"] = t.log;
  line(f);
  return out;
}

EpisodeTrace parse_trace_jsonl(std::string_view text) {
  EpisodeTrace t;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t offset = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    const std::size_t line_start = offset;
    offset += raw.size() + 1;
    if (trim(raw).empty()) continue;
    json j;
    try {
      j = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw DecodeError(fmt::format("trace parse error at byte {}: {}", line_start + e.byte,
                                    e.what()),
                        line_start + e.byte);
    }
    try {
      const std::string kind = j.at("record").get<std::string>();
      if (kind == "header") {
        header = true;
        t.dataset_id = j.at("dataset_id").get<std::string>();
        t.seed = j.at("seed").get<std::uint64_t>();
        const json& e = j.at("engine");
        t.engine.history_turns = e.at("history_turns").get<std::size_t>();
        t.engine.dispatch_low_value = e.at("dispatch_low_value").get<bool>();
        t.engine.approval_delay = e.at("approval_delay").get<double>();
        t.engine.turn_spacing = e.at("turn_spacing").get<double>();
        t.engine.thresholds.distance_lock = e.at("distance_lock").get<std::size_t>();
        t.engine.thresholds.intimacy_types = e.at("intimacy_types").get<std::size_t>();
        t.engine.thresholds.collective_floor = e.at("collective_floor").get<std::size_t>();
        t.engine.thresholds.ratio_floor = e.at("ratio_floor").get<double>();
        const json& c = j.at("channel");
        t.channel.latency = c.at("latency").get<double>();
        t.channel.drop_probability = c.at("drop_probability").get<double>();
        t.channel.timeout = c.at("timeout").get<double>();
        t.channel.rng_seed = c.at("rng_seed").get<std::uint64_t>();
      } else if (kind == "analysis") {
        AnalysisRecord a;
        const std::string agent = j.at("agent").get<std::string>();
        a.agent = need(role_from_id(agent), "agent", agent);
        a.focus_turn_id = j.at("focus_turn_id").get<int>();
        a.time = j.at("time").get<double>();
        const json& rel = j.at("relationship");
        const std::string level = rel.at("level").get<std::string>();
        a.level = need(parse_level(level), "level", level);
        a.locked = rel.at("locked").get<bool>();
        for (const json& e : rel.at("evidence")) {
          a.evidence.push_back({e.at("marker").get<std::string>(), e.at("turn_id").get<int>(),
                                e.at("phrase").get<std::string>()});
        }
        for (const json& r : j.at("resolutions")) a.resolutions.push_back(resolution_from(r));
        a.candidate_turns = j.at("candidate_turns").get<std::vector<int>>();
        for (const json& g : j.at("gaps")) {
          json q = g;
          q.erase("dispatched");
          q.erase("message_id");
          GapEntry entry{decode_query(q.dump(), DecodeMode::kStrict),
                         g.at("dispatched").get<bool>(), g.value("message_id", std::string())};
          a.gaps.push_back(std::move(entry));
        }
        t.analyses.push_back(std::move(a));
      } else if (kind == "channel") {
        ChannelEvent e;
        e.time = j.at("time").get<double>();
        const std::string ev = j.at("event").get<std::string>();
        if (ev == "send") {
          e.kind = ChannelEventKind::kSend;
        } else if (ev == "drop") {
          e.kind = ChannelEventKind::kDrop;
        } else if (ev == "deliver") {
          e.kind = ChannelEventKind::kDeliver;
        } else {
          throw SchemaError("event", fmt::format("bad channel event '{}'", ev));
        }
        const std::string from = j.at("from").get<std::string>();
        e.from = need(role_from_id(from), "from", from);
        e.message_id = j.at("message_id").get<std::string>();
        e.wire = j.value("wire", std::string());
        t.channel_events.push_back(std::move(e));
      } else if (kind == "decision") {
        DecisionRecord d;
        const std::string agent = j.at("agent").get<std::string>();
        d.agent = need(role_from_id(agent), "agent", agent);
        d.time = j.at("time").get<double>();
        d.message_id = j.at("message_id").get<std::string>();
        d.trigger_turn_id = j.at("trigger_turn_id").get<int>();
        d.target_slot = j.at("target_slot").get<std::string>();
        if (j.contains("candidate_answer")) {
          d.candidate_answer = j.at("candidate_answer").get<std::string>();
          d.candidate_source = j.at("candidate_source").get<std::string>();
        }
        const std::string sens = j.at("sensitivity").get<std::string>();
        d.sensitivity = need(parse_sensitivity(sens), "sensitivity", sens);
        d.intent_elevated = j.at("intent_elevated").get<bool>();
        const std::string level = j.at("level").get<std::string>();
        d.level = need(parse_level(level), "level", level);
        if (j.contains("gate")) {
          const std::string g = j.at("gate").get<std::string>();
          d.gate = need(parse_disclosure(g), "gate", g);
        }
        if (j.contains("approval")) {
          d.approval = j.at("approval").get<std::string>() == "granted" ? ApprovalSignal::kGranted
                                                                         : ApprovalSignal::kDenied;
        }
        const std::string outcome = j.at("outcome").get<std::string>();
        d.outcome = need(parse_disclosure(outcome), "outcome", outcome);
        const std::string status = j.at("status").get<std::string>();
        d.status = need(parse_status(status), "status", status);
        d.notes = j.at("notes").get<std::vector<std::string>>();
        t.decisions.push_back(std::move(d));
      } else if (kind == "merge") {
        MergeRecord m;
        const std::string agent = j.at("agent").get<std::string>();
        m.agent = need(role_from_id(agent), "agent", agent);
        m.time = j.at("time").get<double>();
        m.message_id = j.at("message_id").get<std::string>();
        m.trigger_turn_id = j.at("trigger_turn_id").get<int>();
        const std::string k = j.at("kind").get<std::string>();
        m.kind = need(parse_merge_kind(k), "kind", k);
        if (j.contains("resolution")) m.resolution = resolution_from(j.at("resolution"));
        m.reason = j.at("reason").get<std::string>();
        t.merges.push_back(std::move(m));
      } else if (kind == "footer") {
        t.log = j.at("log").get<std::vector<std::string>>();
      } else {
        throw SchemaError("record", fmt::format("unknown trace record '{}'", kind));
      }
    } catch (const json::exception& e) {
      throw SchemaError("record", fmt::format("trace line at byte {}: {}", line_start, e.what()));
    }
  }
  if (!header) throw SchemaError("header", "trace has no header line");
  return t;
}

std::vector<PrivacyViolation> privacy_audit(std::string_view jsonl) {
  struct Line {
    std::string text;
    json j;
  };
  std::vector<Line> lines;
  std::istringstream in{std::string(jsonl)};
  std::string raw;
  while (std::getline(in, raw)) {
    json j = json::parse(raw, nullptr, false);
    lines.push_back({raw, j.is_discarded() ? json() : std::move(j)});
  }
  std::set<std::string> revealed;
  struct Withheld {
    std::string message_id;
    std::string content;
    std::string responder;
  };
  std::vector<Withheld> withheld;
  for (const Line& l : lines) {
    if (!l.j.is_object()) continue;
    const std::string kind = l.j.value("record", "");
    if (kind == "decision" && l.j.contains("candidate_answer")) {
      const std::string status = l.j.value("status", "");
      const std::string content = l.j.value("candidate_answer", "");
      if (status == "ANSWERED" || status == "PARTIAL") {
        if (status == "ANSWERED") revealed.insert(content);
      } else if (!content.empty()) {
        withheld.push_back({l.j.value("message_id", ""), content, l.j.value("agent", "")});
      }
    }
  }
  std::vector<PrivacyViolation> out;
  for (const Withheld& w : withheld) {
    if (revealed.count(w.content)) continue;
    // Match the escaped form so quotes and backslashes compare correctly.
    const std::string needle = json(w.content).dump();
    const std::string bare = needle.substr(1, needle.size() - 2);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const json& j = lines[i].j;
      if (!j.is_object()) continue;
      const std::string kind = j.value("record", "");
      const bool requester_visible =
          kind == "channel" || (kind == "merge" && j.value("agent", "") != w.responder);
      if (requester_visible && lines[i].text.find(bare) != std::string::npos) {
        out.push_back({w.message_id, w.content, i + 1});
      }
    }
  }
  return out;
}

ApprovalPolicy parse_approval_script(std::string_view text) {
  std::map<int, std::optional<ApprovalSignal>> by_turn;
  std::optional<ApprovalSignal> fallback;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    std::istringstream ls(s);
    std::string key;
    std::string verdict;
    ls >> key >> verdict;
    std::optional<ApprovalSignal> signal;
    if (verdict == "grant") {
      signal = ApprovalSignal::kGranted;
    } else if (verdict == "deny") {
      signal = ApprovalSignal::kDenied;
    } else if (verdict != "none") {
      throw InvalidArgumentError(fmt::format("approval script line {}: bad verdict '{}'",
                                             line_no, verdict));
    }
    if (key == "*") {
      fallback = signal;
      continue;
    }
    int turn = 0;
    try {
      std::size_t used = 0;
      turn = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw InvalidArgumentError(fmt::format("approval script line {}: bad turn '{}'", line_no,
                                             key));
    }
    by_turn[turn] = signal;
  }
  return [by_turn, fallback](const QueryRequest& r) -> std::optional<ApprovalSignal> {
    const auto it = by_turn.find(r.trigger_turn_id);
    return it != by_turn.end() ? it->second : fallback;
  };
}

}  // namespace concord
