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

#ifndef ACCORD_EXTRACTION_H_
#define ACCORD_EXTRACTION_H_

#include <exception>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "accord/corpus.h"
#include "accord/relation.h"

// Two-stage context classification: stage 1 decides whether a demarcated
// context describes its target in terms of another concept, stage 2 scores
// the four relation types. Backends are interchangeable.
namespace accord {

using RelationScoreMap = std::map<RelationType, double>;

struct BinaryPrediction {
  std::string context_id;
  bool label = false;
  double score = 0.0;

  bool operator==(const BinaryPrediction &) const = default;
};

struct RelationScores {
  std::string context_id;
  RelationScoreMap scores;  // all four relations
  std::set<RelationType> predicted;

  bool operator==(const RelationScores &) const = default;
};

enum class Backend { kRule, kRemote };

// Settings shared by the remote scorer and remote generator clients.
struct RemoteSettings {
  std::string endpoint;  // e.g. "http://127.0.0.1:8000/score"
  std::string token_env;
  int timeout_ms = 10000;
  int max_attempts = 3;
  int backoff_ms = 200;
  int max_in_flight = 4;
  std::size_t batch_size = 8;
};

struct ExtractorConfig {
  Backend backend = Backend::kRule;
  double binary_threshold = 0.5;
  double relation_threshold = 0.5;
  RemoteSettings remote{.endpoint = "", .token_env = "ACCORD_SCORER_TOKEN"};

  // Throws ConfigError unless both thresholds lie in (0, 1).
  void validate() const;
};

// Per-item result of a batch call: a value or the reason it failed.
template <typename T>
struct Outcome {
  std::optional<T> value;
  std::string error;
  std::exception_ptr exception;  // set alongside `error`

  bool ok() const { return value.has_value(); }
};

class ScoringBackend {
 public:
  virtual ~ScoringBackend() = default;

  // Scores in [0, 1], one per input, in input order. A failure on one item
  // never fails the others.
  virtual std::vector<Outcome<double>> binary_scores(
      std::span<const DemarcatedContext> items) const = 0;
  virtual std::vector<Outcome<RelationScoreMap>> relation_scores(
      std::span<const DemarcatedContext> items) const = 0;
};

// Deterministic Hearst-pattern backend: 1.0 when a pattern fires, else 0.0.
class RuleBackend : public ScoringBackend {
 public:
  explicit RuleBackend(std::shared_ptr<const Lexicon> lexicon);

  std::vector<Outcome<double>> binary_scores(
      std::span<const DemarcatedContext> items) const override;
  std::vector<Outcome<RelationScoreMap>> relation_scores(
      std::span<const DemarcatedContext> items) const override;

 private:
  std::shared_ptr<const Lexicon> lexicon_;
};

// JSON-over-HTTP scorer client. Items are sent in batches of
// settings.batch_size keyed by instance_key(); a failed batch is retried
// item by item so one bad context cannot sink its neighbours.
class RemoteScorer : public ScoringBackend {
 public:
  explicit RemoteScorer(RemoteSettings settings);

  std::vector<Outcome<double>> binary_scores(
      std::span<const DemarcatedContext> items) const override;
  std::vector<Outcome<RelationScoreMap>> relation_scores(
      std::span<const DemarcatedContext> items) const override;

 private:
  RemoteSettings settings_;
};

// Stage-1 and stage-2 results for one demarcated context. `relations` is
// absent for stage-1 negatives (they are never scored further) and for
// contexts whose stage-2 call failed.
struct ExtractionResult {
  DemarcatedContext input;
  std::optional<BinaryPrediction> binary;
  std::optional<RelationScores> relations;
  std::string error;

  bool operator==(const ExtractionResult &) const = default;
};

class Extractor {
 public:
  // Builds the backend named by cfg.backend. The rule backend needs the
  // lexicon; the remote one ignores it.
  Extractor(ExtractorConfig cfg, std::shared_ptr<const Lexicon> lexicon);
  Extractor(ExtractorConfig cfg, std::unique_ptr<ScoringBackend> backend);

  // Throws TransportError / ProtocolError carrying the context's key when
  // the remote backend fails.
  BinaryPrediction classify_binary(const DemarcatedContext &input) const;
  RelationScores classify_relations(const DemarcatedContext &input) const;

  // Gated two-stage run over a batch, keeping input order.
  std::vector<ExtractionResult> run(std::span<const DemarcatedContext> inputs) const;

  const ExtractorConfig &config() const { return cfg_; }

 private:
  BinaryPrediction to_binary(const DemarcatedContext &input, double score) const;
  RelationScores to_relations(const DemarcatedContext &input,
                              RelationScoreMap scores) const;

  ExtractorConfig cfg_;
  std::unique_ptr<ScoringBackend> backend_;
};

}  // namespace accord

#endif  // ACCORD_EXTRACTION_H_
