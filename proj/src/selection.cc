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

#include "accord/selection.h"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "accord/error.h"
#include "accord/text.h"

namespace accord {

void SelectionConfig::validate() const {
  if (k < 1) throw ConfigError("selection k must be >= 1");
  if (relations.empty()) throw ConfigError("selection relations must not be empty");
  std::set<RelationType> seen(relations.begin(), relations.end());
  if (seen.size() != relations.size()) {
    throw ConfigError("selection relations contain duplicates");
  }
  if (set_size_cap && *set_size_cap < 1) {
    throw ConfigError("set_size_cap must be positive");
  }
}

std::string concept_key(std::string_view term) {
  return text::normalize_concept(term);
}

Triple triple_of(const DescriptionRecord &record) {
  return {concept_key(record.target), concept_key(record.reference), record.relation};
}

std::vector<DescriptionRecord> filter_by_lexicon(const std::vector<DescriptionRecord> &descs,
                                                 const Lexicon &lexicon) {
  std::vector<DescriptionRecord> out;
  for (const auto &d : descs) {
    const std::string lower = text::collapse_whitespace(text::to_lower(d.reference));
    if (lexicon.contains(lower) || lexicon.contains(concept_key(lower))) out.push_back(d);
  }
  return out;
}

std::vector<std::string> rank_references(const std::vector<DescriptionRecord> &descs,
                                         std::string_view target, RelationType relation,
                                         int k) {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  const std::string t = concept_key(target);
  struct Tally {
    std::size_t count = 0;
    double max_score = 0.0;
  };
  std::unordered_map<std::string, Tally> tally;
  for (const auto &d : descs) {
    if (d.relation != relation || concept_key(d.target) != t) continue;
    auto [it, fresh] = tally.try_emplace(concept_key(d.reference));
    it->second.max_score = fresh ? d.score : std::max(it->second.max_score, d.score);
    ++it->second.count;
  }
  std::vector<std::pair<std::string, Tally>> ranked(tally.begin(), tally.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) {
    if (a.second.count != b.second.count) return a.second.count > b.second.count;
    if (a.second.max_score != b.second.max_score) {
      return a.second.max_score > b.second.max_score;
    }
    return a.first < b.first;
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ranked.size() && i < static_cast<std::size_t>(k); ++i) {
    out.push_back(ranked[i].first);
  }
  return out;
}

bool better_description(const DescriptionRecord &a, const DescriptionRecord &b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.text.size() != b.text.size()) return a.text.size() < b.text.size();
  return a.description_id < b.description_id;
}

std::map<Triple, DescriptionRecord> best_per_triple(
    const std::vector<DescriptionRecord> &descs) {
  std::map<Triple, DescriptionRecord> best;
  for (const auto &d : descs) {
    auto [it, fresh] = best.try_emplace(triple_of(d), d);
    if (!fresh && better_description(d, it->second)) it->second = d;
  }
  return best;
}

DescriptionSet build_set(const std::vector<DescriptionRecord> &descs,
                         std::string_view target, const SelectionConfig &cfg) {
  cfg.validate();
  const std::string t = concept_key(target);
  std::vector<DescriptionRecord> mine;
  for (const auto &d : descs) {
    if (concept_key(d.target) == t) mine.push_back(d);
  }
  const auto best = best_per_triple(mine);
  DescriptionSet set{t, {}, cfg};
  for (auto relation : cfg.relations) {
    for (const auto &ref : rank_references(mine, t, relation, cfg.k)) {
      set.entries.push_back(best.at({t, ref, relation}));
    }
  }
  if (cfg.set_size_cap &&
      set.entries.size() > static_cast<std::size_t>(*cfg.set_size_cap)) {
    set.entries.resize(static_cast<std::size_t>(*cfg.set_size_cap));
  }
  return set;
}

std::vector<std::string> targets_of(const std::vector<DescriptionRecord> &descs) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto &d : descs) {
    auto key = concept_key(d.target);
    if (seen.insert(key).second) out.push_back(std::move(key));
  }
  return out;
}

DiversityReport diversity_report(const std::vector<DescriptionRecord> &descs,
                                 const std::vector<std::string> &targets,
                                 const std::vector<RelationType> &relations) {
  DiversityReport report;
  for (const auto &target : targets) {
    const std::string t = concept_key(target);
    for (auto relation : relations) {
      DiversityRow row{t, relation, 0, 0};
      std::set<std::string> refs;
      for (const auto &d : descs) {
        if (d.relation != relation || concept_key(d.target) != t) continue;
        ++row.candidate_count;
        refs.insert(concept_key(d.reference));
      }
      row.unique_reference_count = refs.size();
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace accord
