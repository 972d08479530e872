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

#ifndef ACCORD_PIPELINE_H_
#define ACCORD_PIPELINE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "accord/corpus.h"
#include "accord/extraction.h"
#include "accord/generation.h"
#include "accord/selection.h"
#include "accord/service.h"
#include "json.hpp"

// Stage functions shared by the CLI subcommands and the chained pipeline.
namespace accord {

// How a context with several predicted relations is prompted.
enum class PromptMode {
  kPerRelation,  // one generation per predicted relation
  kTopRelation,  // only the highest-scoring predicted relation
};

struct PipelineConfig {
  std::string corpus_path;
  std::string lexicon_path;
  std::string exemplars_path;  // required by the remote generator only
  std::string out_path;
  double min_score = 1.0;
  WindowSizes window_sizes = {1, 2};
  ExtractorConfig extractor;
  GenerationBackend gen_backend = GenerationBackend::kTemplate;
  GeneratorConfig generator;
  PromptMode prompt_mode = PromptMode::kPerRelation;
  FilterOptions filter;
  SelectionConfig selection;
  int port = 8080;
  std::uint64_t seed = 0;
  int jobs = 1;

  // Throws ConfigError.
  void validate() const;
};

// Overlays the fields present in `doc` onto `cfg`; unknown keys are errors.
void apply_config(const nlohmann::json &doc, PipelineConfig &cfg);
void load_config_file(const std::string &path, PipelineConfig &cfg);

// "sets.jsonl" -> "sets.provenance.jsonl".
std::string provenance_path_for(const std::string &path);

struct IngestOutput {
  std::vector<CandidateContext> contexts;
  std::vector<Provenance> provenance;  // one per context
};

IngestOutput run_ingest(const std::vector<PaperRecord> &papers, const Lexicon &lexicon,
                        const PipelineConfig &cfg);

// One demarcated instance per concept mention.
std::vector<DemarcatedContext> demarcate_all(const std::vector<CandidateContext> &contexts);

std::vector<ExtractionResult> run_extract(const std::vector<CandidateContext> &contexts,
                                          std::shared_ptr<const Lexicon> lexicon,
                                          const PipelineConfig &cfg);

struct Rejection {
  std::string description_id;
  std::string text;
  std::vector<std::string> reasons;
};

struct GenerateOutput {
  std::vector<DescriptionRecord> accepted;
  std::vector<Rejection> rejected;
};

// Routes each positive instance to its predicted relation(s), generates,
// parses and filters. Generation failures become "unparseable" rejections.
// `bank` may be null for the template backend.
GenerateOutput run_generate(const std::vector<ExtractionResult> &extractions,
                            const Lexicon &lexicon, const ExemplarBank *bank,
                            const PipelineConfig &cfg);

struct SelectOutput {
  std::vector<DescriptionSet> sets;   // sorted by target, empty sets dropped
  std::vector<Provenance> provenance;  // the contexts the sets cite
};

SelectOutput run_select(const std::vector<DescriptionRecord> &descriptions,
                        const Lexicon &lexicon, const std::vector<Provenance> &provenance,
                        const PipelineConfig &cfg);

// Paper id of a context id "{paper_id}:{section}:{first}-{last}".
std::string paper_id_of(std::string_view context_id);

}  // namespace accord

#endif  // ACCORD_PIPELINE_H_
