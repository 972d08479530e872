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

#ifndef ACCORD_EVAL_H_
#define ACCORD_EVAL_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "accord/corpus.h"
#include "accord/relation.h"

// Annotation validation and the statistics used to evaluate the pipeline:
// agreement coefficients, binary F1 with the always-positive baseline,
// user-preference summaries and an OLS fit.
namespace accord::eval {

struct AnnotatedDescription {
  std::string target;
  RelationType relation = RelationType::kIsA;
  std::string reference;
  std::string text;

  bool operator==(const AnnotatedDescription &) const = default;
};

struct AnnotationRecord {
  std::string context_id;
  std::string text;
  int window_size = 1;
  std::string target;
  bool label = false;
  std::string annotator_id;
  std::vector<AnnotatedDescription> descriptions;

  bool operator==(const AnnotationRecord &) const = default;
};

struct Violation {
  std::string code;  // e.g. "bad_window_size", "reference_absent"
  std::string detail;
};

struct ValidationOptions {
  // Accept references missing from the text when contained in the target.
  bool relax_reference = true;
};

// Checks a record against the description criteria. A description's target
// must be the record's target or another lexicon concept mentioned in the
// text; its reference must occur in the text outside the target itself; its
// elaboration must be nonempty unless the relation is used-for.
std::vector<Violation> validate_annotation(const AnnotationRecord &record,
                                           const Lexicon &lexicon,
                                           const ValidationOptions &options = {});

struct CorpusStats {
  std::size_t records = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t descriptions = 0;
  std::map<RelationType, std::size_t> descriptions_per_relation;
  std::map<int, std::size_t> windows_per_size;

  bool operator==(const CorpusStats &) const = default;
};

CorpusStats corpus_stats(const std::vector<AnnotationRecord> &records);

enum class AgreementKind { kCohen, kFleiss };

struct AgreementReport {
  AgreementKind kind = AgreementKind::kCohen;
  double kappa = 0.0;
  std::size_t n_items = 0;
  double observed = 0.0;  // p_o (Cohen) or mean item agreement (Fleiss)
  double expected = 0.0;  // chance agreement
};

// Labels are arbitrary category ids. Throws InvalidArgument on a length
// mismatch or empty input. When chance agreement is 1 the coefficient is 1
// for perfect observed agreement and 0 otherwise.
AgreementReport cohen_kappa(const std::vector<int> &a, const std::vector<int> &b);

// counts[i][j] = raters assigning item i to category j. Every item needs the
// same rater total n >= 2.
AgreementReport fleiss_kappa(const std::vector<std::vector<int>> &counts);

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t n = 0;
  double baseline_f1 = 0.0;  // predictor that always says positive
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
};

EvalReport f1_binary(const std::vector<bool> &pred, const std::vector<bool> &gold);

enum class SetVariant { kGenerateStratify, kExtractStratify, kGenerateNaive };
enum class Vote { kWant, kNeutral, kNotWant };

std::string_view set_variant_name(SetVariant v);
SetVariant set_variant_from_name(std::string_view name);
std::string_view vote_name(Vote v);
Vote vote_from_name(std::string_view name);

struct PreferenceBallot {
  std::string participant_id;
  std::string term;
  int expertise = 1;  // 1..5
  SetVariant set_choice = SetVariant::kGenerateStratify;
  std::map<std::string, Vote> votes;  // description_id -> vote

  bool operator==(const PreferenceBallot &) const = default;
};

// How votes map to categories for per-concept Fleiss' kappa.
enum class VoteEncoding {
  kThreeWay,   // want / neutral / not want
  kCollapsed,  // want / anything else
};

struct Interval {
  double estimate = 0.0;
  double low = 0.0;
  double high = 0.0;
};

struct PreferenceOptions {
  std::uint64_t seed = 0;
  int resamples = 10000;
  VoteEncoding encoding = VoteEncoding::kThreeWay;
};

struct PreferenceSummary {
  std::map<std::string, std::map<SetVariant, int>> counts;  // concept -> variant
  std::map<SetVariant, Interval> median_count;  // across concepts, bootstrap CI
  Interval mean_preferred;  // "want" votes per (participant, concept)
  std::map<std::string, double> fleiss_per_concept;
  double mean_fleiss = 0.0;
  std::vector<std::string> skipped_concepts;  // ragged votes, no kappa
};

// Percentile-bootstrap 95% interval of `stat` over `values` (sorted first so
// the result does not depend on input order).
template <typename Stat>
Interval bootstrap_interval(std::vector<double> values, Stat stat, std::uint64_t seed,
                            int resamples);

double median(std::vector<double> values);
double mean(const std::vector<double> &values);

// Throws InvalidArgument on empty input or expertise outside [1, 5].
PreferenceSummary preference_summary(const std::vector<PreferenceBallot> &ballots,
                                     const PreferenceOptions &options = {});

struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Least-squares line. Throws InvalidArgument on size mismatch, fewer than
// two points or constant x.
RegressionFit ols_slope(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace accord::eval

#include "accord/eval_inl.h"

#endif  // ACCORD_EVAL_H_
