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

#include "concord/attributes.h"

#include <regex>

namespace concord {

namespace {

bool search(std::string_view text, const std::regex& re) {
  return std::regex_search(text.begin(), text.end(), re);
}

const std::regex& dosage_re() {
  static const std::regex re(
      R"(\b\d+(\.\d+)?\s?(mg|mcg|g|ml|iu|units?|tablets?|pills?|capsules?|drops?|puffs?)\b)",
      std::regex::icase);
  return re;
}

const std::regex& frequency_re() {
  static const std::regex re(
      R"(\b(once|twice|thrice|\d+\s+times|three times|four times)\s+(a\s+|per\s+)?(day|daily|week|weekly|night|hour)\b|\b(daily|nightly|weekly|hourly|as needed|every\s+\d+\s+hours?|every\s+(morning|evening|night))\b)",
      std::regex::icase);
  return re;
}

const std::regex& clock_re() {
  static const std::regex re(R"(\b\d{1,2}(:\d{2})?\s?(am|pm|a\.m\.|p\.m\.)|\b\d{1,2}:\d{2}\b)",
                             std::regex::icase);
  return re;
}

const std::regex& date_re() {
  static const std::regex re(
      R"(\b(january|february|march|april|may|june|july|august|september|october|november|december)\s+\d{1,2}\b|\b\d{4}-\d{2}-\d{2}\b)",
      std::regex::icase);
  return re;
}

const std::regex& place_qualifier_re() {
  static const std::regex re(
      R"(\b(room|rm|floor|building|bldg|suite|ste|wing|campus|entrance|street|st|avenue|ave|road|rd|boulevard|blvd|lane|ln|drive|hall|level|gate|exit|unit|apartment|apt)\b)",
      std::regex::icase);
  return re;
}

}  // namespace

AttributeSet required_attributes(EntityCategory category) {
  switch (category) {
    case EntityCategory::kMedical: return {kAttrName, kAttrDosage, kAttrFrequency};
    case EntityCategory::kTemporal: return {kAttrAnchored};
    case EntityCategory::kSpatial: return {kAttrPlace};
    case EntityCategory::kPerson:
    case EntityCategory::kObject:
    case EntityCategory::kTask: return {kAttrIdentity};
  }
  throw InvalidArgumentError("unknown entity category");
}

bool has_dosage(std::string_view text) { return search(text, dosage_re()); }
bool has_frequency(std::string_view text) { return search(text, frequency_re()); }
bool has_clock(std::string_view text) { return search(text, clock_re()); }
bool has_calendar_date(std::string_view text) { return search(text, date_re()); }

bool spatial_qualified(std::string_view text) {
  return text.find(',') != std::string_view::npos || search(text, place_qualifier_re());
}

AttributeSet infer_attributes(EntityCategory category, std::string_view resolved) {
  AttributeSet out;
  if (resolved.empty()) return out;
  switch (category) {
    case EntityCategory::kMedical:
      out.insert(kAttrName);
      if (has_dosage(resolved)) out.insert(kAttrDosage);
      if (has_frequency(resolved)) out.insert(kAttrFrequency);
      break;
    case EntityCategory::kTemporal:
      if (has_clock(resolved) || has_calendar_date(resolved)) out.insert(kAttrAnchored);
      break;
    case EntityCategory::kSpatial:
      if (spatial_qualified(resolved)) out.insert(kAttrPlace);
      break;
    case EntityCategory::kPerson:
    case EntityCategory::kObject:
    case EntityCategory::kTask:
      // Any grounded referent identifies the entity.
      out.insert(kAttrIdentity);
      break;
  }
  return out;
}

AttributeSet missing_attributes(const EntityMention& mention,
                                const ResolutionRecord* resolution) {
  AttributeSet present;
  for (const auto& [name, value] : mention.attributes) present.insert(name);
  if (resolution != nullptr) {
    for (const std::string& a : infer_attributes(mention.category, resolution->resolved_entity)) {
      present.insert(a);
    }
  }
  AttributeSet missing;
  for (const std::string& a : required_attributes(mention.category)) {
    if (!present.count(a)) missing.insert(a);
  }
  return missing;
}

}  // namespace concord
