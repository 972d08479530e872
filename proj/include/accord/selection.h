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

#ifndef ACCORD_SELECTION_H_
#define ACCORD_SELECTION_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "accord/corpus.h"
#include "accord/relation.h"

// Reduces candidate descriptions to a small stratified set per target.
namespace accord {

struct DescriptionRecord {
  std::string description_id;
  std::string target;
  RelationType relation = RelationType::kIsA;
  std::string reference;
  std::string elaboration;
  std::string text;
  std::string context_id;
  std::string paper_id;
  double score = 0.0;  // stage-2 score of the routed relation

  bool operator==(const DescriptionRecord &) const = default;
};

struct SelectionConfig {
  int k = 3;
  std::vector<RelationType> relations = {RelationType::kCompare, RelationType::kIsA};
  std::optional<int> set_size_cap;

  // Throws ConfigError on k < 1, empty or repeated relations, or a
  // non-positive cap.
  void validate() const;

  bool operator==(const SelectionConfig &) const = default;
};

struct DescriptionSet {
  std::string target;
  std::vector<DescriptionRecord> entries;
  SelectionConfig produced_with;

  bool operator==(const DescriptionSet &) const = default;
};

struct DiversityRow {
  std::string target;
  RelationType relation = RelationType::kIsA;
  std::size_t candidate_count = 0;
  std::size_t unique_reference_count = 0;

  bool operator==(const DiversityRow &) const = default;
};

struct DiversityReport {
  std::vector<DiversityRow> rows;  // targets in input order, then relations
};

// Counting key for concepts: lowercase with the head noun singularized.
std::string concept_key(std::string_view term);

using Triple = std::tuple<std::string, std::string, RelationType>;  // keys
Triple triple_of(const DescriptionRecord &record);

// Keeps records whose reference (or its singular form) is a lexicon
// concept. Order preserved.
std::vector<DescriptionRecord> filter_by_lexicon(const std::vector<DescriptionRecord> &descs,
                                                 const Lexicon &lexicon);

// Reference keys for (target, relation) by descending record count, then
// higher maximum score, then lexicographic; at most k.
std::vector<std::string> rank_references(const std::vector<DescriptionRecord> &descs,
                                         std::string_view target, RelationType relation,
                                         int k);

// True when `a` should be preferred over `b` for the same triple: higher
// score, then shorter text, then smaller description_id.
bool better_description(const DescriptionRecord &a, const DescriptionRecord &b);

std::map<Triple, DescriptionRecord> best_per_triple(
    const std::vector<DescriptionRecord> &descs);

DescriptionSet build_set(const std::vector<DescriptionRecord> &descs,
                         std::string_view target, const SelectionConfig &cfg = {});

// Distinct target keys in first-seen order.
std::vector<std::string> targets_of(const std::vector<DescriptionRecord> &descs);

DiversityReport diversity_report(const std::vector<DescriptionRecord> &descs,
                                 const std::vector<std::string> &targets,
                                 const std::vector<RelationType> &relations = {
                                     kAllRelations.begin(), kAllRelations.end()});

}  // namespace accord

#endif  // ACCORD_SELECTION_H_
