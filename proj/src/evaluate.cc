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

#include "concord/evaluate.h"

#include <algorithm>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "concord/context_resolver.h"
#include "concord/disclosure_gate.h"
#include "concord/relationship_engine.h"
#include "concord/text.h"

namespace concord {

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string gold_owner(const std::string& source) {
  if (source.rfind("User A", 0) == 0) return "User A";
  if (source.rfind("User B", 0) == 0) return "User B";
  return "other";
}

}  // namespace

EvalReport recompute_rates(EvalReport r) {
  r.resolution_tpr = r.gold_resolutions == 0 ? std::nullopt
                                             : ratio(r.matched_resolutions, r.gold_resolutions);
  r.resolution_similarity_mean =
      r.matched_resolutions == 0
          ? std::nullopt
          : std::optional<double>(r.similarity_sum / static_cast<double>(r.matched_resolutions));
  r.gap_tpr = ratio(r.matched_high, r.gold_high);
  r.gap_fpr = ratio(r.dispatched_off_gold, r.candidates_off_gold);
  r.relationship_accuracy = r.gold_level ? ratio(r.windows_correct, r.windows) : std::nullopt;
  r.gate_tnr = ratio(r.withheld_correctly, r.should_withhold);
  r.gate_tpr = ratio(r.revealed_correctly, r.should_reveal);
  return r;
}

EvalReport evaluate(const EpisodeTrace& trace, const DatasetRecord& record,
                    const LevelOverrides& overrides) {
  if (trace.dataset_id != record.dataset_id) {
    throw InvalidArgumentError(fmt::format("trace is for '{}' but the record is '{}'",
                                           trace.dataset_id, record.dataset_id));
  }
  EvalReport r;
  r.dataset_id = record.dataset_id;
  const auto custom = overrides.find(to_lower(trim(record.backstory.relationship)));
  r.gold_level = custom != overrides.end()
                     ? std::optional(custom->second)
                     : level_for_relationship(record.backstory.relationship);

  // Resolutions: one-to-one pairing by trigger turn, most similar first.
  const std::vector<ResolutionRecord> predicted = trace.resolutions();
  const auto& gold = record.ground_truth_resolutions;
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t g = 0; g < gold.size(); ++g) {
    for (std::size_t p = 0; p < predicted.size(); ++p) {
      if (predicted[p].trigger_turn_id != gold[g].trigger_turn_id) continue;
      const double sim = predicted[p].resolved_entity.empty()
                             ? 0.0
                             : resolution_similarity(predicted[p].resolved_entity,
                                                     gold[g].resolved_entity);
      pairs.emplace_back(-sim, g, p);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<bool> gold_used(gold.size(), false);
  std::vector<bool> pred_used(predicted.size(), false);
  for (const auto& [neg_sim, g, p] : pairs) {
    if (gold_used[g] || pred_used[p]) continue;
    gold_used[g] = pred_used[p] = true;
    ++r.matched_resolutions;
    r.similarity_sum += -neg_sim;
  }
  r.gold_resolutions = gold.size();
  for (std::size_t g = 0; g < gold.size(); ++g) {
    SlotCounts& c = r.resolution_by_owner[gold_owner(gold[g].resolution_source)];
    ++c.gold;
    if (gold_used[g]) ++c.matched;
  }

  // Gaps.
  std::set<std::pair<int, std::string>> dispatched;
  for (const AnalysisRecord& a : trace.analyses) {
    for (const GapEntry& g : a.gaps) {
      if (g.dispatched) dispatched.emplace(g.query.trigger_turn_id, g.query.target_slot);
    }
  }
  std::set<int> gold_high_turns;
  for (const ProtocolQuery& q : record.required_protocol_queries) {
    if (q.quality != QueryQuality::kHighValue) continue;
    ++r.gold_high;
    gold_high_turns.insert(q.trigger_turn_id);
    SlotCounts& c = r.gap_by_slot[q.target_slot];
    ++c.gold;
    if (dispatched.count({q.trigger_turn_id, q.target_slot})) {
      ++c.matched;
      ++r.matched_high;
    }
  }
  for (const AnalysisRecord& a : trace.analyses) {
    for (const GapEntry& g : a.gaps) {
      if (g.dispatched && !gold_high_turns.count(g.query.trigger_turn_id)) {
        ++r.dispatched_off_gold;
      }
    }
    for (int t : a.candidate_turns) {
      if (!gold_high_turns.count(t)) ++r.candidates_off_gold;
    }
  }

  // Relationship windows.
  for (const AnalysisRecord& a : trace.analyses) {
    ++r.windows;
    if (r.gold_level && a.level == *r.gold_level) ++r.windows_correct;
  }

  // Gate: gold cells come from the backstory level and the effective grade.
  if (r.gold_level) {
    for (const DecisionRecord& d : trace.decisions) {
      if (!d.candidate_answer) continue;
      const Sensitivity s = elevate(d.sensitivity, d.intent_elevated);
      const bool revealed = d.outcome == DisclosureKind::kDirectReveal ||
                            d.outcome == DisclosureKind::kPartialReveal;
      bool withhold = false;
      bool reveal = false;
      if (s == Sensitivity::kCritical) {
        withhold = true;
      } else {
        const DisclosureKind cell = matrix_decide(s, *r.gold_level);
        withhold = cell == DisclosureKind::kSuppress;
        reveal = cell == DisclosureKind::kDirectReveal ||
                 (cell == DisclosureKind::kApprovalLoop && d.approval == ApprovalSignal::kGranted);
      }
      if (withhold) {
        ++r.should_withhold;
        if (!revealed) ++r.withheld_correctly;
      }
      if (reveal) {
        ++r.should_reveal;
        if (revealed) ++r.revealed_correctly;
      }
    }
  }

  r = recompute_rates(std::move(r));
  if (!r.resolution_tpr && r.gold_resolutions > 0) r.resolution_tpr = 0.0;
  return r;
}

namespace {

nlohmann::ordered_json opt(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::string fmt_rate(const std::optional<double>& v) {
  return v ? fmt::format("{:.3f}", *v) : std::string("n/a");
}

}  // namespace

nlohmann::ordered_json report_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["dataset_id"] = r.dataset_id;
  j["gold_level"] = r.gold_level ? nlohmann::ordered_json(std::string(level_name(*r.gold_level)))
                                 : nlohmann::ordered_json(nullptr);
  j["resolution_tpr"] = opt(r.resolution_tpr);
  j["resolution_similarity_mean"] = opt(r.resolution_similarity_mean);
  j["gap_tpr"] = opt(r.gap_tpr);
  j["gap_fpr"] = opt(r.gap_fpr);
  j["relationship_accuracy"] = opt(r.relationship_accuracy);
  j["gate_tnr"] = opt(r.gate_tnr);
  j["gate_tpr"] = opt(r.gate_tpr);
  j["counts"] = {{"gold_resolutions", r.gold_resolutions},
                 {"matched_resolutions", r.matched_resolutions},
                 {"similarity_sum", r.similarity_sum},
                 {"gold_high", r.gold_high},
                 {"matched_high", r.matched_high},
                 {"dispatched_off_gold", r.dispatched_off_gold},
                 {"candidates_off_gold", r.candidates_off_gold},
                 {"windows", r.windows},
                 {"windows_correct", r.windows_correct},
                 {"should_withhold", r.should_withhold},
                 {"withheld_correctly", r.withheld_correctly},
                 {"should_reveal", r.should_reveal},
                 {"revealed_correctly", r.revealed_correctly}};
  nlohmann::ordered_json slots = nlohmann::ordered_json::object();
  for (const auto& [slot, c] : r.gap_by_slot) {
    slots[slot] = {{"gold", c.gold}, {"matched", c.matched}};
  }
  j["gap_by_slot"] = std::move(slots);
  nlohmann::ordered_json owners = nlohmann::ordered_json::object();
  for (const auto& [owner, c] : r.resolution_by_owner) {
    owners[owner] = {{"gold", c.gold}, {"matched", c.matched}};
  }
  j["resolution_by_owner"] = std::move(owners);
  return j;
}

std::string report_table(const EvalReport& r) {
  std::string out = fmt::format("dataset {}  gold level {}\n", r.dataset_id,
                                r.gold_level ? level_name(*r.gold_level) : "n/a");
  const auto row = [&](std::string_view name, const std::optional<double>& v, std::size_t num,
                       std::size_t den) {
    out += fmt::format("  {:<28} {:>6}  ({}/{})\n", name, fmt_rate(v), num, den);
  };
  row("resolution_tpr", r.resolution_tpr, r.matched_resolutions, r.gold_resolutions);
  out += fmt::format("  {:<28} {:>6}\n", "resolution_similarity_mean",
                     fmt_rate(r.resolution_similarity_mean));
  row("gap_tpr", r.gap_tpr, r.matched_high, r.gold_high);
  row("gap_fpr", r.gap_fpr, r.dispatched_off_gold, r.candidates_off_gold);
  row("relationship_accuracy", r.relationship_accuracy, r.windows_correct, r.windows);
  row("gate_tnr", r.gate_tnr, r.withheld_correctly, r.should_withhold);
  row("gate_tpr", r.gate_tpr, r.revealed_correctly, r.should_reveal);
  for (const auto& [slot, c] : r.gap_by_slot) {
    out += fmt::format("    gap {:<30} {}/{}\n", slot, c.matched, c.gold);
  }
  for (const auto& [owner, c] : r.resolution_by_owner) {
    out += fmt::format("    resolution {:<23} {}/{}\n", owner, c.matched, c.gold);
  }
  return out;
}

}  // namespace concord
