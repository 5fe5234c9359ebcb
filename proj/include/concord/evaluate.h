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

// Metrics for an episode trace against a record's gold annotations.

#ifndef CONCORD_EVALUATE_H_
#define CONCORD_EVALUATE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "concord/core_model.h"
#include "concord/episode.h"

namespace concord {

struct SlotCounts {
  std::size_t gold = 0;
  std::size_t matched = 0;
  bool operator==(const SlotCounts&) const = default;
};

// Rates are absent when their denominator is zero, except the two recall
// rates, which are 0.0 against empty predictions.
struct EvalReport {
  std::string dataset_id;
  std::optional<RelationshipLevel> gold_level;

  std::size_t gold_resolutions = 0;
  std::size_t matched_resolutions = 0;
  double similarity_sum = 0.0;

  std::size_t gold_high = 0;
  std::size_t matched_high = 0;
  std::size_t dispatched_off_gold = 0;
  std::size_t candidates_off_gold = 0;

  std::size_t windows = 0;
  std::size_t windows_correct = 0;

  std::size_t should_withhold = 0;
  std::size_t withheld_correctly = 0;
  std::size_t should_reveal = 0;
  std::size_t revealed_correctly = 0;

  std::optional<double> resolution_tpr;
  std::optional<double> resolution_similarity_mean;
  std::optional<double> gap_tpr;
  std::optional<double> gap_fpr;
  std::optional<double> relationship_accuracy;
  std::optional<double> gate_tnr;
  std::optional<double> gate_tpr;

  std::map<std::string, SlotCounts> gap_by_slot;
  std::map<std::string, SlotCounts> resolution_by_owner;  // gold source owner
};

// Backstory labels (lower case) mapped to gold levels ahead of the built-in
// table.
using LevelOverrides = std::map<std::string, RelationshipLevel>;

// Throws InvalidArgumentError when trace and record ids differ.
EvalReport evaluate(const EpisodeTrace& trace, const DatasetRecord& record,
                    const LevelOverrides& overrides = {});

// Recomputes every rate from the report's own counts.
EvalReport recompute_rates(EvalReport report);

nlohmann::ordered_json report_json(const EvalReport& report);
std::string report_table(const EvalReport& report);

}  // namespace concord

#endif  // CONCORD_EVALUATE_H_
