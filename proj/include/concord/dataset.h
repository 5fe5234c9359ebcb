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

// JSON ingestion and emission of dataset records.

#ifndef CONCORD_DATASET_H_
#define CONCORD_DATASET_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "concord/core_model.h"

namespace concord {

class DatasetParseError : public ConcordError {
 public:
  DatasetParseError(std::string message, std::size_t byte_offset)
      : ConcordError(std::move(message)), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

class DatasetValidationError : public ConcordError {
 public:
  explicit DatasetValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct DatasetInspection {
  std::optional<DatasetRecord> record;  // absent when the shape is unusable
  std::vector<Violation> violations;    // structural, then semantic
};

// Never throws for schema problems; malformed JSON raises DatasetParseError.
// In lenient mode unknown fields are ignored instead of reported.
DatasetInspection inspect_dataset(std::string_view json_text, bool strict = true);

// Throws DatasetParseError or DatasetValidationError.
DatasetRecord parse_dataset(std::string_view json_text, bool strict = true);
DatasetRecord load_dataset(const std::filesystem::path& path, bool strict = true);

nlohmann::ordered_json dataset_to_json(const DatasetRecord& record);
std::string dump_dataset(const DatasetRecord& record);

// "30.2672, -97.7431"
std::optional<GeoPoint> parse_geo(std::string_view text);
std::string format_geo(const GeoPoint& point);

}  // namespace concord

#endif  // CONCORD_DATASET_H_
