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

#include "accord/relation.h"

#include "accord/error.h"
#include "accord/text.h"

namespace accord {

std::string_view relation_name(RelationType r) {
  switch (r) {
    case RelationType::kIsA: return "is-a";
    case RelationType::kCompare: return "compare";
    case RelationType::kPartOf: return "part-of";
    case RelationType::kUsedFor: return "used-for";
  }
  return "is-a";
}

std::optional<RelationType> parse_relation(std::string_view name) {
  const std::string n = text::to_lower(text::trim(name));
  if (n == "is-a" || n == "isa" || n == "is_a") return RelationType::kIsA;
  if (n == "compare" || n == "is-like" || n == "is_like") {
    return RelationType::kCompare;
  }
  if (n == "part-of" || n == "partof" || n == "part_of") {
    return RelationType::kPartOf;
  }
  if (n == "used-for" || n == "usedfor" || n == "used_for") {
    return RelationType::kUsedFor;
  }
  return std::nullopt;
}

RelationType relation_from_name(std::string_view name) {
  auto r = parse_relation(name);
  if (!r) throw InvalidArgument("unknown relation '" + std::string(name) + "'");
  return *r;
}

}  // namespace accord
