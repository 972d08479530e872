// Copyright 2026 The Accord Authors.
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

#ifndef ACCORD_RELATION_H_
#define ACCORD_RELATION_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace accord {

// The four relations a description may use to tie a target concept to a
// reference concept. Compare is the canonical name of the "is-like" form.
enum class RelationType { kIsA, kCompare, kPartOf, kUsedFor };

inline constexpr std::array<RelationType, 4> kAllRelations = {
    RelationType::kIsA, RelationType::kCompare, RelationType::kPartOf,
    RelationType::kUsedFor};

// Wire name: "is-a", "compare", "part-of", "used-for".
std::string_view relation_name(RelationType r);

// Accepts wire names, "is-like" and the enum spellings ("IsA", "Compare",
// ...), case-insensitively.
std::optional<RelationType> parse_relation(std::string_view name);

// Like parse_relation but throws InvalidArgument.
RelationType relation_from_name(std::string_view name);

}  // namespace accord

#endif  // ACCORD_RELATION_H_
