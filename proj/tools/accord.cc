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

// Command-line driver for the description set pipeline and its evaluation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "accord/corpus.h"
#include "accord/error.h"
#include "accord/eval.h"
#include "accord/io.h"
#include "accord/parallel.h"
#include "accord/pipeline.h"
#include "accord/service.h"
#include "json.hpp"

namespace {

using accord::PipelineConfig;
using nlohmann::json;

bool g_quiet = false;

void log(const std::string &msg) {
  if (!g_quiet) std::cerr << "accord: " << msg << '\n';
}

// Prints a report to --out or stdout.
void emit(const json &report, const std::string &out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << '\n';
    return;
  }
  accord::ensure_parent_dir(out_path);
  std::ofstream out(out_path);
  if (!out) throw accord::InputError("cannot write " + out_path);
  out << report.dump(2) << '\n';
}

json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw accord::InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    throw accord::InputError(path + ": " + e.what());
  }
}

// Label file for agreement and F1: either a JSON array of labels (ints,
// bools or strings) or JSON Lines of annotation records, keyed by
// (context_id, target). Returns key -> label string.
std::vector<std::pair<std::string, std::string>> read_labels(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw accord::InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  std::vector<std::pair<std::string, std::string>> out;
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && content[first] == '[') {
    json arr;
    try {
      arr = json::parse(content);
    } catch (const json::exception &e) {
      throw accord::InputError(path + ": " + e.what());
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const json &v = arr[i];
      std::string label;
      if (v.is_boolean()) {
        label = v.get<bool>() ? "1" : "0";
      } else if (v.is_number_integer()) {
        label = std::to_string(v.get<long long>());
      } else if (v.is_string()) {
        label = v.get<std::string>();
      } else {
        throw accord::InputError(path + ": label " + std::to_string(i) +
                                 " is not a bool, integer or string");
      }
      out.emplace_back(std::to_string(i), label);
    }
    return out;
  }
  for (const auto &r : accord::read_jsonl<accord::eval::AnnotationRecord>(path)) {
    out.emplace_back(r.context_id + "\t" + r.target, r.label ? "1" : "0");
  }
  return out;
}

// Aligns two label files by key and maps labels to shared category ids.
std::pair<std::vector<int>, std::vector<int>> aligned_labels(const std::string &a_path,
                                                             const std::string &b_path) {
  const auto a = read_labels(a_path);
  const auto b = read_labels(b_path);
  std::map<std::string, std::string> b_by_key(b.begin(), b.end());
  if (b_by_key.size() != b.size() || a.size() != b.size()) {
    throw accord::InvalidArgument("label files differ in size or repeat keys");
  }
  std::map<std::string, int> category;
  auto id = [&](const std::string &label) {
    return category.emplace(label, static_cast<int>(category.size())).first->second;
  };
  std::vector<int> xs, ys;
  for (const auto &[key, label] : a) {
    auto it = b_by_key.find(key);
    if (it == b_by_key.end()) {
      throw accord::InvalidArgument("key present in " + a_path + " but not " + b_path + ": " +
                                    key);
    }
    xs.push_back(id(label));
    ys.push_back(id(it->second));
  }
  return {xs, ys};
}

json rejection_json(const accord::Rejection &r) {
  return {{"description_id", r.description_id}, {"text", r.text}, {"reasons", r.reasons}};
}

// Flags that, when given, override the config file.
struct Overrides {
  std::string corpus, lexicon, exemplars, out, backend, gen_backend, prompt_mode;
  std::string scorer_endpoint, generator_endpoint, relations;
  std::optional<double> min_score, binary_threshold, relation_threshold;
  std::vector<int> window_sizes;
  std::optional<int> k, cap, port, jobs;
  std::optional<std::uint64_t> seed;
  bool strict_reference = false;
};

void add_common(CLI::App *cmd, std::string &config_path, Overrides &o) {
  cmd->add_option("--config", config_path, "JSON config file (flags take precedence)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "random seed for stochastic components");
  cmd->add_option("--jobs", o.jobs, "worker threads (default: processors)")
      ->check(CLI::PositiveNumber);
}

void add_lexicon(CLI::App *cmd, Overrides &o) {
  cmd->add_option("--lexicon", o.lexicon, "TSV lexicon (concept, score)");
  cmd->add_option("--min-score", o.min_score, "lexicon score threshold (default 1.0)");
}

void add_extract_flags(CLI::App *cmd, Overrides &o) {
  cmd->add_option("--backend", o.backend, "rule | remote")
      ->check(CLI::IsMember({"rule", "remote"}));
  cmd->add_option("--binary-threshold", o.binary_threshold);
  cmd->add_option("--relation-threshold", o.relation_threshold);
  cmd->add_option("--scorer-endpoint", o.scorer_endpoint, "remote scorer URL");
}

void add_generate_flags(CLI::App *cmd, Overrides &o) {
  cmd->add_option("--gen-backend", o.gen_backend, "template | remote")
      ->check(CLI::IsMember({"template", "remote"}));
  cmd->add_option("--exemplars", o.exemplars, "JSON Lines exemplar bank");
  cmd->add_option("--prompt-mode", o.prompt_mode, "per_relation | top_relation")
      ->check(CLI::IsMember({"per_relation", "top_relation"}));
  cmd->add_option("--generator-endpoint", o.generator_endpoint, "remote generator URL");
  cmd->add_flag("--strict-reference", o.strict_reference,
                "reject references not literally present in the context");
}

void add_select_flags(CLI::App *cmd, Overrides &o) {
  cmd->add_option("--k", o.k, "references per relation (default 3)");
  cmd->add_option("--relations", o.relations, "comma-separated, e.g. compare,is-a");
  cmd->add_option("--cap", o.cap, "overall set size cap");
}

PipelineConfig resolve(const std::string &config_path, const Overrides &o) {
  PipelineConfig cfg;
  cfg.jobs = accord::default_jobs();
  if (!config_path.empty()) accord::load_config_file(config_path, cfg);
  if (!o.corpus.empty()) cfg.corpus_path = o.corpus;
  if (!o.lexicon.empty()) cfg.lexicon_path = o.lexicon;
  if (!o.exemplars.empty()) cfg.exemplars_path = o.exemplars;
  if (!o.out.empty()) cfg.out_path = o.out;
  if (o.min_score) cfg.min_score = *o.min_score;
  if (!o.window_sizes.empty()) cfg.window_sizes = {o.window_sizes.begin(), o.window_sizes.end()};
  json doc = json::object();
  if (!o.backend.empty()) doc["backend"] = o.backend;
  if (!o.gen_backend.empty()) doc["gen_backend"] = o.gen_backend;
  if (!o.prompt_mode.empty()) doc["prompt_mode"] = o.prompt_mode;
  accord::apply_config(doc, cfg);
  if (o.binary_threshold) cfg.extractor.binary_threshold = *o.binary_threshold;
  if (o.relation_threshold) cfg.extractor.relation_threshold = *o.relation_threshold;
  if (!o.scorer_endpoint.empty()) cfg.extractor.remote.endpoint = o.scorer_endpoint;
  if (!o.generator_endpoint.empty()) cfg.generator.remote.endpoint = o.generator_endpoint;
  if (o.strict_reference) cfg.filter.relax_reference = false;
  if (o.k) cfg.selection.k = *o.k;
  if (o.cap) cfg.selection.set_size_cap = *o.cap;
  if (!o.relations.empty()) {
    cfg.selection.relations.clear();
    for (const auto &name : accord::text::split(o.relations, ',')) {
      cfg.selection.relations.push_back(
          accord::relation_from_name(accord::text::trim(name)));
    }
  }
  if (o.port) cfg.port = *o.port;
  if (o.jobs) cfg.jobs = *o.jobs;
  if (o.seed) cfg.seed = *o.seed;
  cfg.validate();
  return cfg;
}

void require(const std::string &value, const std::string &flag) {
  if (value.empty()) throw accord::ConfigError(flag + " is required");
}

std::shared_ptr<const accord::Lexicon> lexicon_of(const PipelineConfig &cfg) {
  require(cfg.lexicon_path, "--lexicon");
  auto lex = std::make_shared<const accord::Lexicon>(
      accord::load_lexicon(cfg.lexicon_path, cfg.min_score));
  log("lexicon: " + std::to_string(lex->size()) + " concepts with score >= " +
      json(cfg.min_score).dump());
  return lex;
}

std::unique_ptr<accord::ExemplarBank> bank_of(const PipelineConfig &cfg) {
  if (cfg.gen_backend != accord::GenerationBackend::kRemote) return nullptr;
  require(cfg.exemplars_path, "--exemplars");
  return std::make_unique<accord::ExemplarBank>(accord::ExemplarBank::load(cfg.exemplars_path));
}

void write_rejections(const std::string &path, const std::vector<accord::Rejection> &rejected) {
  if (path.empty()) return;
  accord::ensure_parent_dir(path);
  std::ofstream out(path);
  if (!out) throw accord::InputError("cannot write " + path);
  for (const auto &r : rejected) out << rejection_json(r).dump() << '\n';
}

void log_generation(const accord::GenerateOutput &g) {
  std::map<std::string, int> reasons;
  for (const auto &r : g.rejected) {
    for (const auto &why : r.reasons) ++reasons[why];
  }
  std::string msg = "generate: " + std::to_string(g.accepted.size()) + " accepted, " +
                    std::to_string(g.rejected.size()) + " rejected";
  for (const auto &[why, n] : reasons) msg += " " + why + "=" + std::to_string(n);
  log(msg);
}

int run(int argc, char **argv) {
  CLI::App app{"Description set generation for scientific concepts"};
  app.require_subcommand(1);
  app.add_flag("-q,--quiet", g_quiet, "suppress progress logging");

  std::string config_path;
  Overrides o;

  // ingest
  auto *ingest = app.add_subcommand("ingest", "build candidate contexts from a corpus");
  add_common(ingest, config_path, o);
  ingest->add_option("--corpus", o.corpus, "JSON Lines paper records");
  add_lexicon(ingest, o);
  ingest->add_option("--window-sizes", o.window_sizes, "subset of {1,2}")->delimiter(',');
  ingest->add_option("--out", o.out, "contexts output (JSON Lines)")->required();

  // extract
  std::string contexts_path;
  auto *extract = app.add_subcommand("extract", "classify demarcated contexts");
  add_common(extract, config_path, o);
  extract->add_option("--contexts", contexts_path, "ingest output")->required()
      ->check(CLI::ExistingFile);
  add_lexicon(extract, o);
  add_extract_flags(extract, o);
  extract->add_option("--out", o.out, "extraction results (JSON Lines)")->required();

  // generate
  std::string extractions_path, rejected_path;
  auto *generate = app.add_subcommand("generate", "generate, parse and filter descriptions");
  add_common(generate, config_path, o);
  generate->add_option("--extractions", extractions_path, "extract output")->required()
      ->check(CLI::ExistingFile);
  add_lexicon(generate, o);
  add_generate_flags(generate, o);
  generate->add_option("--rejected", rejected_path, "write rejected descriptions here");
  generate->add_option("--out", o.out, "accepted descriptions (JSON Lines)")->required();

  // select
  std::string descriptions_path, provenance_in;
  auto *select = app.add_subcommand("select", "build stratified description sets");
  add_common(select, config_path, o);
  select->add_option("--descriptions", descriptions_path, "generate output")->required()
      ->check(CLI::ExistingFile);
  select->add_option("--provenance", provenance_in,
                     "context provenance from ingest (default: <contexts>.provenance.jsonl)")
      ->required()
      ->check(CLI::ExistingFile);
  add_lexicon(select, o);
  add_select_flags(select, o);
  select->add_option("--out", o.out, "description sets (JSON Lines)")->required();

  // stats
  std::string annotations_path, stats_out, diversity_in;
  auto *stats = app.add_subcommand("stats", "corpus statistics or description diversity");
  auto *stats_ann = stats->add_option("--annotations", annotations_path,
                                      "annotation records (JSON Lines)")
                        ->check(CLI::ExistingFile);
  auto *stats_div = stats->add_option("--descriptions", diversity_in,
                                      "description records (JSON Lines)")
                        ->check(CLI::ExistingFile);
  stats_ann->excludes(stats_div);
  stats->add_option("--out", stats_out, "report path (default stdout)");

  // eval
  auto *eval = app.add_subcommand("eval", "agreement, F1, preference and regression");
  eval->require_subcommand(1);
  std::string eval_out;
  std::string a_path, b_path;
  auto *kappa = eval->add_subcommand("kappa", "Cohen's kappa between two label files");
  kappa->add_option("--a", a_path)->required()->check(CLI::ExistingFile);
  kappa->add_option("--b", b_path)->required()->check(CLI::ExistingFile);
  std::string counts_path;
  auto *fleiss = eval->add_subcommand("fleiss", "Fleiss' kappa over an items x categories matrix");
  fleiss->add_option("--counts", counts_path, "JSON array of per-item category counts")
      ->required()
      ->check(CLI::ExistingFile);
  std::string pred_path, gold_path;
  auto *f1 = eval->add_subcommand("f1", "binary F1 with the always-positive baseline");
  f1->add_option("--pred", pred_path)->required()->check(CLI::ExistingFile);
  f1->add_option("--gold", gold_path)->required()->check(CLI::ExistingFile);
  std::string ballots_path, encoding = "three_way";
  int resamples = 10000;
  std::uint64_t eval_seed = 0;
  auto *pref = eval->add_subcommand("preference", "set preference summary with bootstrap CIs");
  pref->add_option("--ballots", ballots_path)->required()->check(CLI::ExistingFile);
  pref->add_option("--encoding", encoding, "three_way | collapsed")
      ->check(CLI::IsMember({"three_way", "collapsed"}));
  pref->add_option("--resamples", resamples)->check(CLI::PositiveNumber);
  pref->add_option("--seed", eval_seed);
  std::string points_path;
  auto *ols = eval->add_subcommand("ols", "least-squares line through (x, y) points");
  ols->add_option("--points", points_path, "JSON {\"x\":[..],\"y\":[..]}")
      ->required()
      ->check(CLI::ExistingFile);
  std::string validate_lexicon;
  bool strict_validation = false;
  auto *validate = eval->add_subcommand("validate", "check annotations against the criteria");
  validate->add_option("--annotations", annotations_path)->required()->check(CLI::ExistingFile);
  validate->add_option("--lexicon", validate_lexicon)->check(CLI::ExistingFile);
  validate->add_flag("--strict-reference", strict_validation);
  for (auto *sub : {kappa, fleiss, f1, pref, ols, validate}) {
    sub->add_option("--out", eval_out, "report path (default stdout)");
  }

  // serve
  std::string data_path, serve_provenance, ui_dir, host = "127.0.0.1";
  auto *serve = app.add_subcommand("serve", "serve the exploration API");
  add_common(serve, config_path, o);
  serve->add_option("--data", data_path, "description sets (JSON Lines)")->required()
      ->check(CLI::ExistingFile);
  serve->add_option("--provenance", serve_provenance,
                    "context provenance (default: <data>.provenance.jsonl)");
  serve->add_option("--host", host);
  serve->add_option("--port", o.port, "0 picks an ephemeral port");
  serve->add_option("--ui", ui_dir, "built UI directory served under /")
      ->check(CLI::ExistingDirectory);

  // pipeline
  std::string work_dir;
  auto *pipeline = app.add_subcommand("pipeline", "run every stage from corpus to sets");
  add_common(pipeline, config_path, o);
  pipeline->add_option("--corpus", o.corpus, "JSON Lines paper records");
  add_lexicon(pipeline, o);
  pipeline->add_option("--window-sizes", o.window_sizes, "subset of {1,2}")->delimiter(',');
  add_extract_flags(pipeline, o);
  add_generate_flags(pipeline, o);
  add_select_flags(pipeline, o);
  pipeline->add_option("--work-dir", work_dir, "also write every intermediate file here");
  pipeline->add_option("--out", o.out, "description sets (JSON Lines)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*ingest) {
      auto cfg = resolve(config_path, o);
      require(cfg.corpus_path, "--corpus");
      auto lex = lexicon_of(cfg);
      auto out = accord::run_ingest(accord::load_corpus(cfg.corpus_path), *lex, cfg);
      accord::write_jsonl(cfg.out_path, out.contexts);
      accord::write_jsonl(accord::provenance_path_for(cfg.out_path), out.provenance);
      log("ingest: " + std::to_string(out.contexts.size()) + " candidate contexts");
    } else if (*extract) {
      auto cfg = resolve(config_path, o);
      auto lex = lexicon_of(cfg);
      auto results = accord::run_extract(
          accord::read_jsonl<accord::CandidateContext>(contexts_path), lex, cfg);
      std::size_t positives = 0, failed = 0;
      for (const auto &r : results) {
        positives += r.binary && r.binary->label;
        failed += !r.error.empty();
      }
      accord::write_jsonl(cfg.out_path, results);
      log("extract: " + std::to_string(results.size()) + " instances, " +
          std::to_string(positives) + " positive, " + std::to_string(failed) + " failed");
    } else if (*generate) {
      auto cfg = resolve(config_path, o);
      auto lex = lexicon_of(cfg);
      auto bank = bank_of(cfg);
      auto g = accord::run_generate(
          accord::read_jsonl<accord::ExtractionResult>(extractions_path), *lex, bank.get(), cfg);
      accord::write_jsonl(cfg.out_path, g.accepted);
      write_rejections(rejected_path, g.rejected);
      log_generation(g);
    } else if (*select) {
      auto cfg = resolve(config_path, o);
      auto lex = lexicon_of(cfg);
      auto s = accord::run_select(accord::read_jsonl<accord::DescriptionRecord>(descriptions_path),
                                  *lex, accord::read_jsonl<accord::Provenance>(provenance_in),
                                  cfg);
      accord::write_jsonl(cfg.out_path, s.sets);
      accord::write_jsonl(accord::provenance_path_for(cfg.out_path), s.provenance);
      log("select: " + std::to_string(s.sets.size()) + " description sets");
    } else if (*stats) {
      if (!annotations_path.empty()) {
        emit(json(accord::eval::corpus_stats(
                 accord::read_jsonl<accord::eval::AnnotationRecord>(annotations_path))),
             stats_out);
      } else if (!diversity_in.empty()) {
        auto descs = accord::read_jsonl<accord::DescriptionRecord>(diversity_in);
        emit(json(accord::diversity_report(descs, accord::targets_of(descs))), stats_out);
      } else {
        throw CLI::RequiredError("--annotations or --descriptions");
      }
    } else if (*kappa) {
      auto [a, b] = aligned_labels(a_path, b_path);
      emit(json(accord::eval::cohen_kappa(a, b)), eval_out);
    } else if (*fleiss) {
      auto counts = read_json_file(counts_path).get<std::vector<std::vector<int>>>();
      emit(json(accord::eval::fleiss_kappa(counts)), eval_out);
    } else if (*f1) {
      const auto pred = read_labels(pred_path);
      const auto gold = read_labels(gold_path);
      if (pred.size() != gold.size()) throw accord::InvalidArgument("label files differ in size");
      std::map<std::string, std::string> gold_by_key(gold.begin(), gold.end());
      std::vector<bool> p, g;
      auto truthy = [](const std::string &l) { return l == "1" || l == "true"; };
      for (const auto &[key, label] : pred) {
        auto it = gold_by_key.find(key);
        if (it == gold_by_key.end()) throw accord::InvalidArgument("unmatched key " + key);
        p.push_back(truthy(label));
        g.push_back(truthy(it->second));
      }
      emit(json(accord::eval::f1_binary(p, g)), eval_out);
    } else if (*pref) {
      accord::eval::PreferenceOptions opts;
      opts.seed = eval_seed;
      opts.resamples = resamples;
      opts.encoding = encoding == "collapsed" ? accord::eval::VoteEncoding::kCollapsed
                                              : accord::eval::VoteEncoding::kThreeWay;
      emit(json(accord::eval::preference_summary(
               accord::read_jsonl<accord::eval::PreferenceBallot>(ballots_path), opts)),
           eval_out);
    } else if (*ols) {
      const json doc = read_json_file(points_path);
      emit(json(accord::eval::ols_slope(doc.at("x").get<std::vector<double>>(),
                                        doc.at("y").get<std::vector<double>>())),
           eval_out);
    } else if (*validate) {
      accord::Lexicon lex;
      if (!validate_lexicon.empty()) lex = accord::load_lexicon(validate_lexicon, 0.0);
      accord::eval::ValidationOptions opts;
      opts.relax_reference = !strict_validation;
      json rows = json::array();
      std::size_t bad = 0;
      for (const auto &rec :
           accord::read_jsonl<accord::eval::AnnotationRecord>(annotations_path)) {
        auto v = accord::eval::validate_annotation(rec, lex, opts);
        if (v.empty()) continue;
        ++bad;
        rows.push_back({{"context_id", rec.context_id}, {"target", rec.target}, {"violations", v}});
      }
      emit({{"records_with_violations", bad}, {"violations", rows}}, eval_out);
    } else if (*serve) {
      auto cfg = resolve(config_path, o);
      if (serve_provenance.empty()) serve_provenance = accord::provenance_path_for(data_path);
      auto index = std::make_shared<const accord::DescriptionIndex>(
          accord::build_index(data_path, serve_provenance));
      accord::ServerOptions so;
      so.host = host;
      so.port = cfg.port;
      if (!ui_dir.empty()) so.static_dir = ui_dir;
      accord::ApiServer server(index, so);
      const int port = server.bind();
      log("serving " + std::to_string(index->concepts().size()) + " concepts on http://" + host +
          ":" + std::to_string(port));
      server.serve();
    } else if (*pipeline) {
      auto cfg = resolve(config_path, o);
      require(cfg.corpus_path, "--corpus");
      require(cfg.out_path, "--out");
      auto lex = lexicon_of(cfg);
      auto bank = bank_of(cfg);
      auto in = accord::run_ingest(accord::load_corpus(cfg.corpus_path), *lex, cfg);
      log("ingest: " + std::to_string(in.contexts.size()) + " candidate contexts");
      auto ex = accord::run_extract(in.contexts, lex, cfg);
      log("extract: " + std::to_string(ex.size()) + " instances");
      auto g = accord::run_generate(ex, *lex, bank.get(), cfg);
      log_generation(g);
      auto s = accord::run_select(g.accepted, *lex, in.provenance, cfg);
      log("select: " + std::to_string(s.sets.size()) + " description sets");
      if (!work_dir.empty()) {
        const std::string d = work_dir + "/";
        accord::write_jsonl(d + "contexts.jsonl", in.contexts);
        accord::write_jsonl(d + "contexts.provenance.jsonl", in.provenance);
        accord::write_jsonl(d + "extractions.jsonl", ex);
        accord::write_jsonl(d + "descriptions.jsonl", g.accepted);
        write_rejections(d + "rejected.jsonl", g.rejected);
      }
      accord::write_jsonl(cfg.out_path, s.sets);
      accord::write_jsonl(accord::provenance_path_for(cfg.out_path), s.provenance);
    }
  } catch (const CLI::Error &e) {
    std::cerr << "accord: usage error: " << e.what() << '\n';
    return 2;
  } catch (const accord::ConfigError &e) {
    std::cerr << "accord: config error: " << e.what() << '\n';
    return 1;
  } catch (const accord::InputError &e) {
    std::cerr << "accord: input error: " << e.what() << '\n';
    return 1;
  } catch (const accord::TransportError &e) {
    std::cerr << "accord: transport error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "accord: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) { return run(argc, argv); }
