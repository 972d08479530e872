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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "accord/corpus.h"
#include "accord/error.h"
#include "accord/selection.h"
#include "oracles.h"

namespace accord {
namespace {

using R = RelationType;

DescriptionRecord rec(const std::string &id, const std::string &target, R rel,
                      const std::string &ref, double score, const std::string &text = "") {
  DescriptionRecord d;
  d.description_id = id;
  d.target = target;
  d.relation = rel;
  d.reference = ref;
  d.elaboration = "that does things";
  d.text = text.empty() ? target + " ~ " + ref + " that does things." : text;
  d.context_id = "p:abstract:0-0";
  d.paper_id = "p";
  d.score = score;
  return d;
}

TEST_CASE("filter_by_lexicon") {
  Lexicon lex({{"generative model", 2.0}, {"autoencoder", 2.0}});
  std::vector<DescriptionRecord> ds = {rec("1", "vae", R::kIsA, "Generative Model", 0.5),
                                       rec("2", "vae", R::kIsA, "thing", 0.5),
                                       rec("3", "vae", R::kCompare, "autoencoders", 0.5)};
  auto kept = filter_by_lexicon(ds, lex);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].description_id == "1");
  CHECK(kept[1].description_id == "3");
  CHECK(filter_by_lexicon(ds, Lexicon()).empty());
}

TEST_CASE("rank_references") {
  std::vector<DescriptionRecord> ds;
  int id = 0;
  auto add = [&](const std::string &ref, int n, double score) {
    for (int i = 0; i < n; ++i) ds.push_back(rec(std::to_string(id++), "t", R::kIsA, ref, score));
  };
  add("a", 3, 0.1);
  add("b", 2, 0.1);
  add("c", 1, 0.9);
  CHECK(rank_references(ds, "t", R::kIsA, 2) == std::vector<std::string>{"a", "b"});
  CHECK(rank_references(ds, "t", R::kCompare, 2).empty());

  std::vector<DescriptionRecord> one = {rec("x", "t", R::kIsA, "only", 0.3)};
  CHECK(rank_references(one, "t", R::kIsA, 3).size() == 1);

  std::vector<DescriptionRecord> tie = {rec("1", "t", R::kIsA, "b", 0.7),
                                        rec("2", "t", R::kIsA, "a", 0.9),
                                        rec("3", "t", R::kIsA, "b", 0.7),
                                        rec("4", "t", R::kIsA, "a", 0.1)};
  CHECK(rank_references(tie, "t", R::kIsA, 1) == std::vector<std::string>{"a"});
  CHECK_THROWS_AS(rank_references(tie, "t", R::kIsA, 0), InvalidArgument);

  // Plural and singular references count together.
  std::vector<DescriptionRecord> plural = {rec("1", "t", R::kCompare, "autoencoders", 0.5),
                                           rec("2", "t", R::kCompare, "autoencoder", 0.5),
                                           rec("3", "t", R::kCompare, "gan", 0.9)};
  CHECK(rank_references(plural, "t", R::kCompare, 1) == std::vector<std::string>{"autoencoder"});
}

TEST_CASE("best_per_triple") {
  auto a = rec("a", "t", R::kIsA, "r", 0.8);
  auto b = rec("b", "t", R::kIsA, "r", 0.6);
  auto best = best_per_triple({b, a});
  REQUIRE(best.size() == 1);
  CHECK(best.begin()->second.description_id == "a");

  auto short_text = rec("s", "t", R::kIsA, "r", 0.8, std::string(60, 'x'));
  auto long_text = rec("l", "t", R::kIsA, "r", 0.8, std::string(90, 'x'));
  CHECK(best_per_triple({long_text, short_text}).begin()->second.description_id == "s");
  auto same1 = rec("b2", "t", R::kIsA, "r", 0.8, std::string(60, 'x'));
  CHECK(best_per_triple({same1, short_text}).begin()->second.description_id == "b2");
  CHECK(best_per_triple({b}).begin()->second == b);
}

std::vector<DescriptionRecord> two_strata() {
  std::vector<DescriptionRecord> ds;
  int id = 0;
  for (R rel : {R::kIsA, R::kCompare}) {
    for (const std::string ref : {"r1", "r2", "r3", "r4"}) {
      ds.push_back(rec(std::to_string(id++), "t", rel, ref, 0.5));
    }
  }
  return ds;
}

TEST_CASE("build_set") {
  auto set = build_set(two_strata(), "t");
  REQUIRE(set.entries.size() == 6);
  for (int i = 0; i < 3; ++i) CHECK(set.entries[i].relation == R::kCompare);
  for (int i = 3; i < 6; ++i) CHECK(set.entries[i].relation == R::kIsA);

  std::vector<DescriptionRecord> isa_only;
  for (const auto &d : two_strata()) {
    if (d.relation == R::kIsA) isa_only.push_back(d);
  }
  auto s2 = build_set(isa_only, "t");
  CHECK(s2.entries.size() == 3);
  for (const auto &e : s2.entries) CHECK(e.relation == R::kIsA);

  SelectionConfig capped;
  capped.set_size_cap = 4;
  auto s3 = build_set(two_strata(), "t", capped);
  REQUIRE(s3.entries.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(s3.entries[i] == set.entries[i]);

  CHECK(build_set({}, "nothing").entries.empty());

  SelectionConfig bad;
  bad.relations = {R::kIsA, R::kIsA};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.relations = {};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = SelectionConfig{};
  bad.k = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

std::vector<DescriptionRecord> random_pool(std::mt19937_64 &rng, std::size_t n) {
  const std::vector<std::string> refs = {"a", "b", "c", "d", "e", "f"};
  const std::vector<R> rels = {R::kIsA, R::kCompare, R::kPartOf, R::kUsedFor};
  std::vector<DescriptionRecord> ds;
  for (std::size_t i = 0; i < n; ++i) {
    ds.push_back(rec("d" + std::to_string(i), rng() % 5 ? "t" : "u", rels[rng() % rels.size()],
                     refs[rng() % refs.size()], static_cast<double>(rng() % 5) / 4.0,
                     std::string(10 + rng() % 5, 'x')));
  }
  return ds;
}

TEST_CASE("set invariants over random pools") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto pool = random_pool(rng, rng() % 30);
    SelectionConfig cfg;
    cfg.k = 1 + static_cast<int>(rng() % 4);
    if (rng() % 2) cfg.set_size_cap = 1 + static_cast<int>(rng() % 6);
    const auto set = build_set(pool, "t", cfg);
    std::set<Triple> seen;
    std::map<R, int> per_rel;
    for (const auto &e : set.entries) {
      CHECK(seen.insert(triple_of(e)).second);
      CHECK(e.target == "t");
      ++per_rel[e.relation];
    }
    for (const auto &[rel, n] : per_rel) CHECK(n <= cfg.k);
    if (cfg.set_size_cap) CHECK(set.entries.size() <= static_cast<std::size_t>(*cfg.set_size_cap));
    CHECK(build_set(pool, "t", cfg) == set);
  }
}

TEST_CASE("adding a candidate never evicts a strictly more frequent reference") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    auto pool = random_pool(rng, rng() % 20);
    const int k = 1 + static_cast<int>(rng() % 3);
    const auto before = rank_references(pool, "t", R::kIsA, k);
    std::map<std::string, int> count;
    for (const auto &d : pool) {
      if (d.target == "t" && d.relation == R::kIsA) ++count[d.reference];
    }
    pool.push_back(random_pool(rng, 1).front());
    const auto after = rank_references(pool, "t", R::kIsA, k);
    const std::string added = pool.back().reference;
    for (const auto &ref : before) {
      // ref can only be displaced by the reference that just gained a record.
      if (std::find(after.begin(), after.end(), ref) == after.end()) {
        CHECK(count[ref] <= count[added] + 1);
      }
    }
  }
}

TEST_CASE("rank_references matches the counting oracle") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    const auto pool = random_pool(rng, rng() % 21);
    const int k = 1 + static_cast<int>(rng() % 4);
    for (R rel : {R::kIsA, R::kCompare, R::kPartOf, R::kUsedFor}) {
      CHECK(rank_references(pool, "t", rel, k) == oracle::rank_brute(pool, "t", rel, k));
    }
  }
}

TEST_CASE("diversity_report") {
  std::vector<DescriptionRecord> ds = {
      rec("1", "t", R::kIsA, "a", 0.1), rec("2", "t", R::kIsA, "a", 0.1),
      rec("3", "t", R::kIsA, "b", 0.1), rec("4", "t", R::kIsA, "c", 0.1),
      rec("5", "t", R::kIsA, "c", 0.1), rec("6", "t", R::kCompare, "a", 0.1)};
  auto report = diversity_report(ds, {"t"});
  REQUIRE(report.rows.size() == 4);
  for (const auto &row : report.rows) {
    if (row.relation == R::kIsA) {
      CHECK(row.candidate_count == 5);
      CHECK(row.unique_reference_count == 3);
    } else if (row.relation == R::kCompare) {
      CHECK(row.candidate_count == 1);
      CHECK(row.unique_reference_count == 1);
    } else {
      CHECK(row.candidate_count == 0);
      CHECK(row.unique_reference_count == 0);
    }
  }

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pool = random_pool(rng, rng() % 25);
    for (const auto &row : diversity_report(pool, {"t", "u"}).rows) {
      std::set<std::string> refs;
      std::size_t n = 0;
      for (const auto &d : pool) {
        if (d.target == row.target && d.relation == row.relation) {
          ++n;
          refs.insert(d.reference);
        }
      }
      CHECK(row.candidate_count == n);
      CHECK(row.unique_reference_count == refs.size());
    }
  }
}

}  // namespace
}  // namespace accord
