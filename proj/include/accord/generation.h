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

#ifndef ACCORD_GENERATION_H_
#define ACCORD_GENERATION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "accord/corpus.h"
#include "accord/extraction.h"
#include "accord/relation.h"

// Turns a positively classified context into a one-sentence relational
// description: few-shot prompt construction, remote or template-based
// generation, template-aware parsing and a first-pass quality filter.
namespace accord {

struct FewShotExample {
  RelationType relation = RelationType::kIsA;
  std::string extraction;   // demarcated context
  std::string description;

  bool operator==(const FewShotExample &) const = default;
};

// Throws ConfigError unless the extraction has a marked target that occurs
// exactly once in the description.
void validate_example(const FewShotExample &example);

// Hand-picked exemplars grouped by relation, in file order.
class ExemplarBank {
 public:
  ExemplarBank() = default;
  explicit ExemplarBank(std::vector<FewShotExample> examples);

  // JSON Lines of FewShotExample.
  static ExemplarBank load(const std::string &path);

  const std::vector<FewShotExample> &for_relation(RelationType r) const;
  std::size_t size() const;

 private:
  std::map<RelationType, std::vector<FewShotExample>> by_relation_;
};

inline constexpr std::string_view kInstruction =
    "Describe the provided concept in terms of another concept in the text";
inline constexpr std::size_t kShots = 5;

struct Prompt {
  std::string context_id;
  RelationType relation = RelationType::kIsA;
  std::string instruction;
  std::vector<FewShotExample> examples;
  std::string query;  // demarcated extraction

  // Completion-style text sent to the generator.
  std::string render() const;
};

// Throws ConfigError when the bank holds fewer than five exemplars for
// `relation`.
Prompt build_prompt(const DemarcatedContext &context, RelationType relation,
                    const ExemplarBank &bank);

enum class GenerationBackend { kRemote, kTemplate };

struct RawGeneration {
  std::string context_id;
  RelationType relation = RelationType::kIsA;
  std::string text;
  GenerationBackend backend = GenerationBackend::kTemplate;

  bool operator==(const RawGeneration &) const = default;
};

struct GeneratorConfig {
  RemoteSettings remote{.endpoint = "", .token_env = "ACCORD_GENERATOR_TOKEN"};
  int max_tokens = 100;
  double temperature = 0.0;
  std::optional<std::uint64_t> seed;  // forwarded for sampled decoding
};

// Sends the rendered prompt and keeps the completion up to its first blank
// line. Throws TransportError after the retry budget, UnparseableError on
// an empty completion.
RawGeneration generate_remote(const Prompt &prompt, const GeneratorConfig &cfg);

// Deterministic offline generator: fills the relation's canonical template
// with the reference and elaboration recovered by the rule patterns. Throws
// UnparseableError when no pattern for `relation` yields them.
RawGeneration generate_template(const DemarcatedContext &context, RelationType relation,
                                const Lexicon &lexicon);

struct ParsedDescription {
  std::string target;
  RelationType relation = RelationType::kIsA;
  std::string reference;
  std::string elaboration;
  std::string text;

  bool operator==(const ParsedDescription &) const = default;
};

// Canonical surface form, e.g. "x is a y that z." / "x is like y in that
// z." / "x is part of y z." / "x has been used for y z.".
std::string render_description(std::string_view target, RelationType relation,
                               std::string_view reference, std::string_view elaboration);

// Parses a description that starts with `target`. The relation comes from
// the cue right after the target, the reference is the noun chunk after
// the cue and the elaboration is the remainder. A bracketed reference list
// yields its first item. Throws UnparseableError.
ParsedDescription parse_description(std::string_view text, std::string_view target);

// Same, without a known target: the target is whatever precedes the first
// relation cue. Bracketed lists on either side ("[a, b] is a task ...",
// "x is like [a, b] in that ...") expand into one parse per combination.
std::vector<ParsedDescription> parse_description_all(std::string_view text);

enum class RejectReason {
  kUnresolvedReference,
  kAuthorNameReference,
  kDuplicateTarget,
  kUnparseable,
  kReferenceMissing,
};

std::string_view reject_reason_name(RejectReason r);

struct FilterVerdict {
  bool accepted = true;
  std::vector<RejectReason> reasons;

  bool has(RejectReason r) const;
};

struct FilterOptions {
  // Accept a reference absent from the context when it is contained in the
  // target ("neural network" for "recurrent neural network").
  bool relax_reference = true;
};

const std::vector<std::string> &unresolved_reference_phrases();
bool is_author_name(std::string_view reference);

FilterVerdict filter_description(const ParsedDescription &parsed,
                                 std::string_view context_text,
                                 const FilterOptions &options = {});
FilterVerdict filter_description(const ParsedDescription &parsed,
                                 const CandidateContext &context,
                                 const FilterOptions &options = {});

}  // namespace accord

#endif  // ACCORD_GENERATION_H_
