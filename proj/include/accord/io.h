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

#ifndef ACCORD_IO_H_
#define ACCORD_IO_H_

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "accord/corpus.h"
#include "accord/error.h"
#include "accord/eval.h"
#include "accord/extraction.h"
#include "accord/generation.h"
#include "accord/relation.h"
#include "accord/selection.h"
#include "accord/service.h"
#include "json.hpp"

// JSON mappings for every record that crosses a stage boundary, plus JSON
// Lines readers and writers. Readers are strict: a missing required field
// is an error naming the field.
namespace accord {

using nlohmann::json;

void to_json(json &j, const RelationType &r);
void from_json(const json &j, RelationType &r);

void to_json(json &j, const Section &s);
void from_json(const json &j, Section &s);
void to_json(json &j, const PaperRecord &p);
void from_json(const json &j, PaperRecord &p);
void to_json(json &j, const ConceptMention &m);
void from_json(const json &j, ConceptMention &m);
void to_json(json &j, const CandidateContext &c);
void from_json(const json &j, CandidateContext &c);
void to_json(json &j, const DemarcatedContext &d);
void from_json(const json &j, DemarcatedContext &d);

void to_json(json &j, const BinaryPrediction &b);
void from_json(const json &j, BinaryPrediction &b);
void to_json(json &j, const RelationScores &r);
void from_json(const json &j, RelationScores &r);
void to_json(json &j, const ExtractionResult &e);
void from_json(const json &j, ExtractionResult &e);

void to_json(json &j, const FewShotExample &e);
void from_json(const json &j, FewShotExample &e);
void to_json(json &j, const RawGeneration &g);
void from_json(const json &j, RawGeneration &g);
void to_json(json &j, const ParsedDescription &p);
void from_json(const json &j, ParsedDescription &p);

void to_json(json &j, const DescriptionRecord &d);
void from_json(const json &j, DescriptionRecord &d);
void to_json(json &j, const SelectionConfig &c);
void from_json(const json &j, SelectionConfig &c);
void to_json(json &j, const DescriptionSet &s);
void from_json(const json &j, DescriptionSet &s);
void to_json(json &j, const DiversityRow &r);
void to_json(json &j, const DiversityReport &r);

void to_json(json &j, const Provenance &p);
void from_json(const json &j, Provenance &p);

namespace eval {
void to_json(json &j, const AnnotatedDescription &d);
void from_json(const json &j, AnnotatedDescription &d);
void to_json(json &j, const AnnotationRecord &a);
void from_json(const json &j, AnnotationRecord &a);
void to_json(json &j, const PreferenceBallot &b);
void from_json(const json &j, PreferenceBallot &b);
void to_json(json &j, const Violation &v);
void to_json(json &j, const CorpusStats &s);
void to_json(json &j, const AgreementReport &r);
void to_json(json &j, const EvalReport &r);
void to_json(json &j, const Interval &i);
void to_json(json &j, const PreferenceSummary &s);
void to_json(json &j, const RegressionFit &f);
}  // namespace eval

// Every non-blank line must hold one T. All bad lines are reported together
// in one InputError.
template <typename T>
std::vector<T> read_jsonl(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::vector<T> out;
  std::vector<std::string> problems;
  std::size_t first_bad = 0;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line).get<T>());
    } catch (const std::exception &e) {
      if (first_bad == 0) first_bad = lineno;
      problems.push_back(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!problems.empty()) {
    std::string msg = std::to_string(problems.size()) + " bad line(s):";
    for (const auto &p : problems) msg += "\n" + p;
    throw InputError(path, first_bad, msg);
  }
  return out;
}

// Creates the directory that will hold `path`. Throws InputError.
void ensure_parent_dir(const std::string &path);

template <typename T>
void write_jsonl(std::ostream &out, const std::vector<T> &items) {
  for (const auto &item : items) out << json(item).dump() << '\n';
}

template <typename T>
void write_jsonl(const std::string &path, const std::vector<T> &items) {
  ensure_parent_dir(path);
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  write_jsonl(out, items);
  if (!out) throw InputError("write failed for " + path);
}

}  // namespace accord

#endif  // ACCORD_IO_H_
