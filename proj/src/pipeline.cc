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

#include "accord/pipeline.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "accord/error.h"
#include "accord/io.h"
#include "accord/parallel.h"

namespace accord {
namespace {

using nlohmann::json;

void require_keys(const json &doc, const std::set<std::string> &allowed,
                  const std::string &where) {
  if (!doc.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto &[key, _] : doc.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown config key '" + where + key + "'");
  }
}

void apply_remote(const json &doc, RemoteSettings &r, const std::string &where) {
  require_keys(doc,
               {"endpoint", "token_env", "timeout_ms", "max_attempts", "backoff_ms",
                "max_in_flight", "batch_size"},
               where);
  r.endpoint = doc.value("endpoint", r.endpoint);
  r.token_env = doc.value("token_env", r.token_env);
  r.timeout_ms = doc.value("timeout_ms", r.timeout_ms);
  r.max_attempts = doc.value("max_attempts", r.max_attempts);
  r.backoff_ms = doc.value("backoff_ms", r.backoff_ms);
  r.max_in_flight = doc.value("max_in_flight", r.max_in_flight);
  r.batch_size = doc.value("batch_size", r.batch_size);
}

Backend backend_from_name(const std::string &name) {
  if (name == "rule") return Backend::kRule;
  if (name == "remote") return Backend::kRemote;
  throw ConfigError("unknown extraction backend '" + name + "'");
}

GenerationBackend gen_backend_from_name(const std::string &name) {
  if (name == "template") return GenerationBackend::kTemplate;
  if (name == "remote") return GenerationBackend::kRemote;
  throw ConfigError("unknown generation backend '" + name + "'");
}

PromptMode prompt_mode_from_name(const std::string &name) {
  if (name == "per_relation") return PromptMode::kPerRelation;
  if (name == "top_relation") return PromptMode::kTopRelation;
  throw ConfigError("unknown prompt_mode '" + name + "'");
}

std::vector<RelationType> routes(const RelationScores &rs, PromptMode mode) {
  std::vector<RelationType> out(rs.predicted.begin(), rs.predicted.end());
  if (mode == PromptMode::kTopRelation && out.size() > 1) {
    RelationType best = out.front();
    for (RelationType r : out) {
      if (rs.scores.at(r) > rs.scores.at(best)) best = r;
    }
    out = {best};
  }
  return out;
}

}  // namespace

void PipelineConfig::validate() const {
  if (!std::isfinite(min_score)) throw ConfigError("min_score must be finite");
  if (window_sizes.empty()) throw ConfigError("window_sizes must not be empty");
  for (int w : window_sizes) {
    if (w != 1 && w != 2) throw ConfigError("window sizes must be 1 or 2");
  }
  extractor.validate();
  selection.validate();
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (port < 0 || port > 65535) throw ConfigError("port out of range");
  if (extractor.backend == Backend::kRemote && extractor.remote.endpoint.empty()) {
    throw ConfigError("remote extraction needs scorer.endpoint");
  }
  if (gen_backend == GenerationBackend::kRemote && generator.remote.endpoint.empty()) {
    throw ConfigError("remote generation needs generator.endpoint");
  }
}

void apply_config(const json &doc, PipelineConfig &cfg) {
  require_keys(doc,
               {"corpus", "lexicon", "exemplars", "out", "min_score", "window_sizes", "backend",
                "binary_threshold", "relation_threshold", "scorer", "gen_backend", "generator",
                "prompt_mode", "relax_reference", "selection", "port", "seed", "jobs"},
               "");
  try {
    cfg.corpus_path = doc.value("corpus", cfg.corpus_path);
    cfg.lexicon_path = doc.value("lexicon", cfg.lexicon_path);
    cfg.exemplars_path = doc.value("exemplars", cfg.exemplars_path);
    cfg.out_path = doc.value("out", cfg.out_path);
    cfg.min_score = doc.value("min_score", cfg.min_score);
    if (doc.contains("window_sizes")) {
      auto ws = doc.at("window_sizes").get<std::vector<int>>();
      cfg.window_sizes = {ws.begin(), ws.end()};
    }
    if (doc.contains("backend")) {
      cfg.extractor.backend = backend_from_name(doc.at("backend").get<std::string>());
    }
    cfg.extractor.binary_threshold = doc.value("binary_threshold", cfg.extractor.binary_threshold);
    cfg.extractor.relation_threshold =
        doc.value("relation_threshold", cfg.extractor.relation_threshold);
    if (doc.contains("scorer")) apply_remote(doc.at("scorer"), cfg.extractor.remote, "scorer.");
    if (doc.contains("gen_backend")) {
      cfg.gen_backend = gen_backend_from_name(doc.at("gen_backend").get<std::string>());
    }
    if (doc.contains("generator")) {
      json g = doc.at("generator");
      if (!g.is_object()) throw ConfigError("generator must be a JSON object");
      cfg.generator.max_tokens = g.value("max_tokens", cfg.generator.max_tokens);
      cfg.generator.temperature = g.value("temperature", cfg.generator.temperature);
      g.erase("max_tokens");
      g.erase("temperature");
      apply_remote(g, cfg.generator.remote, "generator.");
    }
    if (doc.contains("prompt_mode")) {
      cfg.prompt_mode = prompt_mode_from_name(doc.at("prompt_mode").get<std::string>());
    }
    cfg.filter.relax_reference = doc.value("relax_reference", cfg.filter.relax_reference);
    if (doc.contains("selection")) {
      const json &s = doc.at("selection");
      require_keys(s, {"k", "relations", "set_size_cap"}, "selection.");
      SelectionConfig sel = cfg.selection;
      sel.k = s.value("k", sel.k);
      if (s.contains("relations")) sel.relations = s.at("relations").get<std::vector<RelationType>>();
      if (s.contains("set_size_cap")) {
        sel.set_size_cap = s.at("set_size_cap").is_null()
                               ? std::nullopt
                               : std::optional<int>(s.at("set_size_cap").get<int>());
      }
      cfg.selection = sel;
    }
    cfg.port = doc.value("port", cfg.port);
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.jobs = doc.value("jobs", cfg.jobs);
  } catch (const json::exception &e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const InvalidArgument &e) {
    throw ConfigError(e.what());
  }
}

void load_config_file(const std::string &path, PipelineConfig &cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception &e) {
    throw ConfigError(path + ": " + e.what());
  }
  apply_config(doc, cfg);
}

std::string provenance_path_for(const std::string &path) {
  const std::string ext = ".jsonl";
  std::string stem = path;
  if (stem.size() > ext.size() && stem.compare(stem.size() - ext.size(), ext.size(), ext) == 0) {
    stem.resize(stem.size() - ext.size());
  }
  return stem + ".provenance.jsonl";
}

std::string paper_id_of(std::string_view context_id) {
  auto last = context_id.rfind(':');
  if (last == std::string_view::npos || last == 0) {
    throw InvalidArgument("malformed context_id '" + std::string(context_id) + "'");
  }
  auto mid = context_id.rfind(':', last - 1);
  if (mid == std::string_view::npos) {
    throw InvalidArgument("malformed context_id '" + std::string(context_id) + "'");
  }
  return std::string(context_id.substr(0, mid));
}

IngestOutput run_ingest(const std::vector<PaperRecord> &papers, const Lexicon &lexicon,
                        const PipelineConfig &cfg) {
  IngestOutput out;
  for (const auto &paper : papers) {
    for (auto &ctx : build_candidate_contexts(paper, lexicon, cfg.window_sizes)) {
      out.provenance.push_back({ctx.context_id, ctx.text, paper.paper_id, paper.title, paper.url});
      out.contexts.push_back(std::move(ctx));
    }
  }
  return out;
}

std::vector<DemarcatedContext> demarcate_all(const std::vector<CandidateContext> &contexts) {
  std::vector<DemarcatedContext> out;
  for (const auto &ctx : contexts) {
    for (const auto &m : ctx.mentions) out.push_back(demarcate(ctx, m));
  }
  return out;
}

std::vector<ExtractionResult> run_extract(const std::vector<CandidateContext> &contexts,
                                          std::shared_ptr<const Lexicon> lexicon,
                                          const PipelineConfig &cfg) {
  const auto inputs = demarcate_all(contexts);
  Extractor extractor(cfg.extractor, std::move(lexicon));
  return extractor.run(inputs);
}

GenerateOutput run_generate(const std::vector<ExtractionResult> &extractions,
                            const Lexicon &lexicon, const ExemplarBank *bank,
                            const PipelineConfig &cfg) {
  if (cfg.gen_backend == GenerationBackend::kRemote && bank == nullptr) {
    throw ConfigError("remote generation needs an exemplar bank");
  }
  GeneratorConfig generator = cfg.generator;
  generator.seed = cfg.seed;
  struct Job {
    const ExtractionResult *source;
    RelationType relation;
  };
  std::vector<Job> jobs;
  for (const auto &e : extractions) {
    if (!e.binary || !e.binary->label || !e.relations) continue;
    for (RelationType r : routes(*e.relations, cfg.prompt_mode)) jobs.push_back({&e, r});
  }

  // Exactly one of the two slots is filled per job.
  std::vector<std::optional<DescriptionRecord>> accepted(jobs.size());
  std::vector<std::optional<Rejection>> rejected(jobs.size());
  parallel_for(jobs.size(), cfg.jobs, [&](std::size_t i) {
    const auto &input = jobs[i].source->input;
    const RelationType rel = jobs[i].relation;
    const std::string id = instance_key(input) + ":" + std::string(relation_name(rel));
    RawGeneration raw;
    try {
      raw = cfg.gen_backend == GenerationBackend::kTemplate
                ? generate_template(input, rel, lexicon)
                : generate_remote(build_prompt(input, rel, *bank), generator);
    } catch (const Error &err) {
      rejected[i] = Rejection{id, "", {"generation_failed"}};
      return;
    }
    ParsedDescription parsed;
    try {
      parsed = parse_description(raw.text, input.target_concept);
    } catch (const UnparseableError &) {
      rejected[i] = Rejection{id, raw.text, {std::string(reject_reason_name(
                                                RejectReason::kUnparseable))}};
      return;
    }
    const std::string context_text = strip_markers(input.text_with_markers);
    const FilterVerdict v = filter_description(parsed, context_text, cfg.filter);
    if (!v.accepted) {
      Rejection rj{id, raw.text, {}};
      for (auto r : v.reasons) rj.reasons.emplace_back(reject_reason_name(r));
      rejected[i] = std::move(rj);
      return;
    }
    accepted[i] = DescriptionRecord{id,
                                    input.target_concept,
                                    parsed.relation,
                                    parsed.reference,
                                    parsed.elaboration,
                                    parsed.text,
                                    input.context_id,
                                    paper_id_of(input.context_id),
                                    jobs[i].source->relations->scores.at(rel)};
  });

  GenerateOutput out;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (accepted[i]) out.accepted.push_back(std::move(*accepted[i]));
    if (rejected[i]) out.rejected.push_back(std::move(*rejected[i]));
  }
  return out;
}

SelectOutput run_select(const std::vector<DescriptionRecord> &descriptions,
                        const Lexicon &lexicon, const std::vector<Provenance> &provenance,
                        const PipelineConfig &cfg) {
  cfg.selection.validate();
  const auto kept = filter_by_lexicon(descriptions, lexicon);
  auto targets = targets_of(kept);
  std::sort(targets.begin(), targets.end());

  SelectOutput out;
  std::set<std::string> cited;
  for (const auto &t : targets) {
    DescriptionSet set = build_set(kept, t, cfg.selection);
    if (set.entries.empty()) continue;
    for (const auto &e : set.entries) cited.insert(e.context_id);
    out.sets.push_back(std::move(set));
  }
  std::set<std::string> seen;
  for (const auto &p : provenance) {
    if (cited.count(p.context_id) && seen.insert(p.context_id).second) {
      out.provenance.push_back(p);
    }
  }
  return out;
}

}  // namespace accord
