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

// Deterministic, template-based dataset records with planted gaps and gold
// annotations, plus paths to the fixtures shipped under data/fixtures.

#ifndef CONCORD_FIXTURES_H_
#define CONCORD_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "concord/core_model.h"

namespace concord {

const std::vector<std::string>& fixture_templates();

// Throws InvalidArgumentError for an unknown template.
DatasetRecord generate_fixture(std::string_view template_id, std::uint64_t seed);

std::filesystem::path default_fixture_dir();

// doctor_patient.json, spouses_l1.json, friends_l2.json.
std::vector<std::filesystem::path> bundled_fixtures();

}  // namespace concord

#endif  // CONCORD_FIXTURES_H_
