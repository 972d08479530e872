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

#include "accord/io.h"

#include <filesystem>
#include <string>

#include "accord/text.h"

namespace accord {
namespace {

template <typename T>
void get_opt(const json &j, const char *key, std::optional<T> &out) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    out.reset();
  } else {
    out = it->template get<T>();
  }
}

}  // namespace

void to_json(json &j, const RelationType &r) { j = std::string(relation_name(r)); }
void from_json(const json &j, RelationType &r) {
  r = relation_from_name(j.get<std::string>());
}

void to_json(json &j, const Section &s) {
  j = json{{"kind", section_kind_name(s.kind)}, {"text", s.text}};
}
void from_json(const json &j, Section &s) {
  const auto kind = j.at("kind").get<std::string>();
  auto parsed = parse_section_kind(kind);
  if (!parsed) throw InputError("unknown section kind '" + kind + "'");
  s.kind = *parsed;
  s.text = j.at("text").get<std::string>();
  if (text::trim(s.text).empty()) throw InputError("empty section text");
}

void to_json(json &j, const PaperRecord &p) {
  j = json{{"paper_id", p.paper_id}, {"title", p.title}, {"sections", p.sections}};
  if (p.url) j["url"] = *p.url;
}
void from_json(const json &j, PaperRecord &p) {
  p.paper_id = j.at("paper_id").get<std::string>();
  if (p.paper_id.empty()) throw InputError("empty paper_id");
  p.title = j.value("title", "");
  get_opt(j, "url", p.url);
  p.sections = j.at("sections").get<std::vector<Section>>();
}

void to_json(json &j, const ConceptMention &m) {
  j = json{{"concept", m.term},
           {"char_start", m.char_start},
           {"char_end", m.char_end},
           {"score", m.score}};
}
void from_json(const json &j, ConceptMention &m) {
  m.term = j.at("concept").get<std::string>();
  m.char_start = j.at("char_start").get<std::size_t>();
  m.char_end = j.at("char_end").get<std::size_t>();
  m.score = j.value("score", 0.0);
}

void to_json(json &j, const CandidateContext &c) {
  j = json{{"context_id", c.context_id},
           {"paper_id", c.paper_id},
           {"text", c.text},
           {"window_size", c.window_size},
           {"mentions", c.mentions}};
}
void from_json(const json &j, CandidateContext &c) {
  c.context_id = j.at("context_id").get<std::string>();
  c.paper_id = j.at("paper_id").get<std::string>();
  c.text = j.at("text").get<std::string>();
  c.window_size = j.at("window_size").get<int>();
  c.mentions = j.value("mentions", std::vector<ConceptMention>{});
}

void to_json(json &j, const DemarcatedContext &d) {
  j = json{{"context_id", d.context_id},
           {"target_concept", d.target_concept},
           {"text_with_markers", d.text_with_markers}};
}
void from_json(const json &j, DemarcatedContext &d) {
  d.context_id = j.at("context_id").get<std::string>();
  d.target_concept = j.at("target_concept").get<std::string>();
  d.text_with_markers = j.at("text_with_markers").get<std::string>();
}

void to_json(json &j, const BinaryPrediction &b) {
  j = json{{"context_id", b.context_id}, {"label", b.label}, {"score", b.score}};
}
void from_json(const json &j, BinaryPrediction &b) {
  b.context_id = j.at("context_id").get<std::string>();
  b.label = j.at("label").get<bool>();
  b.score = j.at("score").get<double>();
}

void to_json(json &j, const RelationScores &r) {
  json scores = json::object();
  for (const auto &[rel, s] : r.scores) scores[std::string(relation_name(rel))] = s;
  j = json{{"context_id", r.context_id},
           {"scores", scores},
           {"predicted", std::vector<RelationType>(r.predicted.begin(), r.predicted.end())}};
}
void from_json(const json &j, RelationScores &r) {
  r.context_id = j.at("context_id").get<std::string>();
  r.scores.clear();
  for (const auto &[name, s] : j.at("scores").items()) {
    r.scores[relation_from_name(name)] = s.get<double>();
  }
  auto predicted = j.at("predicted").get<std::vector<RelationType>>();
  r.predicted = {predicted.begin(), predicted.end()};
}

void to_json(json &j, const ExtractionResult &e) {
  j = json{{"input", e.input}};
  j["binary"] = e.binary ? json(*e.binary) : json(nullptr);
  j["relations"] = e.relations ? json(*e.relations) : json(nullptr);
  if (!e.error.empty()) j["error"] = e.error;
}
void from_json(const json &j, ExtractionResult &e) {
  e.input = j.at("input").get<DemarcatedContext>();
  get_opt(j, "binary", e.binary);
  get_opt(j, "relations", e.relations);
  e.error = j.value("error", "");
}

void to_json(json &j, const FewShotExample &e) {
  j = json{{"relation", e.relation},
           {"extraction", e.extraction},
           {"description", e.description}};
}
void from_json(const json &j, FewShotExample &e) {
  e.relation = j.at("relation").get<RelationType>();
  e.extraction = j.at("extraction").get<std::string>();
  e.description = j.at("description").get<std::string>();
}

void to_json(json &j, const RawGeneration &g) {
  j = json{{"context_id", g.context_id},
           {"relation", g.relation},
           {"text", g.text},
           {"backend", g.backend == GenerationBackend::kRemote ? "remote" : "template"}};
}
void from_json(const json &j, RawGeneration &g) {
  g.context_id = j.at("context_id").get<std::string>();
  g.relation = j.at("relation").get<RelationType>();
  g.text = j.at("text").get<std::string>();
  const auto backend = j.value("backend", "template");
  if (backend != "remote" && backend != "template") {
    throw InputError("unknown generation backend '" + backend + "'");
  }
  g.backend = backend == "remote" ? GenerationBackend::kRemote : GenerationBackend::kTemplate;
}

void to_json(json &j, const ParsedDescription &p) {
  j = json{{"target", p.target},
           {"relation", p.relation},
           {"reference", p.reference},
           {"elaboration", p.elaboration},
           {"text", p.text}};
}
void from_json(const json &j, ParsedDescription &p) {
  p.target = j.at("target").get<std::string>();
  p.relation = j.at("relation").get<RelationType>();
  p.reference = j.at("reference").get<std::string>();
  p.elaboration = j.value("elaboration", "");
  p.text = j.at("text").get<std::string>();
}

void to_json(json &j, const DescriptionRecord &d) {
  j = json{{"description_id", d.description_id},
           {"target", d.target},
           {"relation", d.relation},
           {"reference", d.reference},
           {"elaboration", d.elaboration},
           {"text", d.text},
           {"context_id", d.context_id},
           {"paper_id", d.paper_id},
           {"score", d.score}};
}
void from_json(const json &j, DescriptionRecord &d) {
  d.description_id = j.at("description_id").get<std::string>();
  d.target = j.at("target").get<std::string>();
  d.relation = j.at("relation").get<RelationType>();
  d.reference = j.at("reference").get<std::string>();
  d.elaboration = j.value("elaboration", "");
  d.text = j.at("text").get<std::string>();
  d.context_id = j.at("context_id").get<std::string>();
  d.paper_id = j.value("paper_id", "");
  d.score = j.value("score", 0.0);
}

void to_json(json &j, const SelectionConfig &c) {
  j = json{{"k", c.k}, {"relations", c.relations}};
  j["set_size_cap"] = c.set_size_cap ? json(*c.set_size_cap) : json(nullptr);
}
void from_json(const json &j, SelectionConfig &c) {
  c = SelectionConfig{};
  c.k = j.value("k", c.k);
  if (j.contains("relations")) c.relations = j.at("relations").get<std::vector<RelationType>>();
  get_opt(j, "set_size_cap", c.set_size_cap);
}

void to_json(json &j, const DescriptionSet &s) {
  j = json{{"target", s.target}, {"entries", s.entries}, {"produced_with", s.produced_with}};
}
void from_json(const json &j, DescriptionSet &s) {
  s.target = j.at("target").get<std::string>();
  s.entries = j.at("entries").get<std::vector<DescriptionRecord>>();
  s.produced_with = j.value("produced_with", SelectionConfig{});
}

void to_json(json &j, const DiversityRow &r) {
  j = json{{"target", r.target},
           {"relation", r.relation},
           {"candidate_count", r.candidate_count},
           {"unique_reference_count", r.unique_reference_count}};
}
void to_json(json &j, const DiversityReport &r) { j = json{{"rows", r.rows}}; }

void to_json(json &j, const Provenance &p) {
  j = json{{"context_id", p.context_id},
           {"text", p.text},
           {"paper_id", p.paper_id},
           {"title", p.title}};
  j["url"] = p.url ? json(*p.url) : json(nullptr);
}
void from_json(const json &j, Provenance &p) {
  p.context_id = j.at("context_id").get<std::string>();
  p.text = j.at("text").get<std::string>();
  p.paper_id = j.value("paper_id", "");
  p.title = j.value("title", "");
  get_opt(j, "url", p.url);
}

namespace eval {

void to_json(json &j, const AnnotatedDescription &d) {
  j = json{{"target", d.target},
           {"relation", d.relation},
           {"reference", d.reference},
           {"text", d.text}};
}
void from_json(const json &j, AnnotatedDescription &d) {
  d.target = j.at("target").get<std::string>();
  d.relation = j.at("relation").get<RelationType>();
  d.reference = j.at("reference").get<std::string>();
  d.text = j.at("text").get<std::string>();
}

void to_json(json &j, const AnnotationRecord &a) {
  j = json{{"context_id", a.context_id},   {"text", a.text},
           {"window_size", a.window_size}, {"target", a.target},
           {"label", a.label},             {"annotator_id", a.annotator_id},
           {"descriptions", a.descriptions}};
}
void from_json(const json &j, AnnotationRecord &a) {
  a.context_id = j.at("context_id").get<std::string>();
  a.text = j.at("text").get<std::string>();
  a.window_size = j.at("window_size").get<int>();
  a.target = j.at("target").get<std::string>();
  a.label = j.at("label").get<bool>();
  a.annotator_id = j.value("annotator_id", "");
  a.descriptions = j.value("descriptions", std::vector<AnnotatedDescription>{});
}

void to_json(json &j, const PreferenceBallot &b) {
  json votes = json::object();
  for (const auto &[id, v] : b.votes) votes[id] = vote_name(v);
  j = json{{"participant_id", b.participant_id},
           {"concept", b.term},
           {"expertise", b.expertise},
           {"set_choice", set_variant_name(b.set_choice)},
           {"votes", votes}};
}
void from_json(const json &j, PreferenceBallot &b) {
  b.participant_id = j.at("participant_id").get<std::string>();
  b.term = j.at("concept").get<std::string>();
  b.expertise = j.at("expertise").get<int>();
  b.set_choice = set_variant_from_name(j.at("set_choice").get<std::string>());
  b.votes.clear();
  for (const auto &[id, v] : j.at("votes").items()) {
    b.votes[id] = vote_from_name(v.get<std::string>());
  }
}

void to_json(json &j, const Violation &v) {
  j = json{{"code", v.code}, {"detail", v.detail}};
}

void to_json(json &j, const CorpusStats &s) {
  json per_rel = json::object();
  for (const auto &[r, n] : s.descriptions_per_relation) {
    per_rel[std::string(relation_name(r))] = n;
  }
  json per_size = json::object();
  for (const auto &[w, n] : s.windows_per_size) per_size[std::to_string(w)] = n;
  j = json{{"records", s.records},
           {"positives", s.positives},
           {"negatives", s.negatives},
           {"descriptions", s.descriptions},
           {"descriptions_per_relation", per_rel},
           {"windows_per_size", per_size}};
}

void to_json(json &j, const AgreementReport &r) {
  j = json{{"kind", r.kind == AgreementKind::kCohen ? "cohen" : "fleiss"},
           {"kappa", r.kappa},
           {"n_items", r.n_items},
           {"observed", r.observed},
           {"expected", r.expected}};
}

void to_json(json &j, const EvalReport &r) {
  j = json{{"precision", r.precision},
           {"recall", r.recall},
           {"f1", r.f1},
           {"n", r.n},
           {"baseline_f1", r.baseline_f1},
           {"true_positives", r.true_positives},
           {"false_positives", r.false_positives},
           {"false_negatives", r.false_negatives}};
}

void to_json(json &j, const Interval &i) {
  j = json{{"estimate", i.estimate}, {"low", i.low}, {"high", i.high}};
}

void to_json(json &j, const PreferenceSummary &s) {
  json counts = json::object();
  for (const auto &[c, row] : s.counts) {
    json r = json::object();
    for (const auto &[v, n] : row) r[std::string(set_variant_name(v))] = n;
    counts[c] = r;
  }
  json medians = json::object();
  for (const auto &[v, i] : s.median_count) medians[std::string(set_variant_name(v))] = i;
  j = json{{"counts", counts},
           {"median_count", medians},
           {"mean_preferred", s.mean_preferred},
           {"fleiss_per_concept", s.fleiss_per_concept},
           {"mean_fleiss", s.mean_fleiss},
           {"skipped_concepts", s.skipped_concepts}};
}

void to_json(json &j, const RegressionFit &f) {
  j = json{{"slope", f.slope}, {"intercept", f.intercept}};
}

}  // namespace eval
void ensure_parent_dir(const std::string &path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (parent.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(parent, ec);
  if (ec) throw InputError("cannot create " + parent.string() + ": " + ec.message());
}

}  // namespace accord
