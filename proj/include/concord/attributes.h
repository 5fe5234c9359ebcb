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

// Attribute templates per entity category and the text probes that decide
// whether an attribute is present.

#ifndef CONCORD_ATTRIBUTES_H_
#define CONCORD_ATTRIBUTES_H_

#include <set>
#include <string>
#include <string_view>

#include "concord/core_model.h"

namespace concord {

inline constexpr char kAttrName[] = "name";
inline constexpr char kAttrDosage[] = "dosage";
inline constexpr char kAttrFrequency[] = "frequency";
inline constexpr char kAttrAnchored[] = "anchored_datetime_or_event";
inline constexpr char kAttrPlace[] = "building_floor_or_room";
inline constexpr char kAttrIdentity[] = "identifying_attribute";

using AttributeSet = std::set<std::string>;

// Throws InvalidArgumentError for a value outside the enum.
AttributeSet required_attributes(EntityCategory category);

bool has_dosage(std::string_view text);     // "200 mg", "2 tablets"
bool has_frequency(std::string_view text);  // "twice daily", "every 6 hours"
bool has_clock(std::string_view text);      // "4:30 PM", "3 AM", "10:30"
bool has_calendar_date(std::string_view text);  // "June 13", "2024-06-13"
// Building, floor or room level detail: a qualifier word or a comma-separated
// address.
bool spatial_qualified(std::string_view text);

// Attributes a resolved entity string supplies for a mention of `category`.
AttributeSet infer_attributes(EntityCategory category, std::string_view resolved);

// required - (own attributes + attributes inferred from the resolution).
AttributeSet missing_attributes(const EntityMention& mention,
                                const ResolutionRecord* resolution);

}  // namespace concord

#endif  // CONCORD_ATTRIBUTES_H_
