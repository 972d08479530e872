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

#include "accord/eval.h"

#include <numeric>
#include <set>
#include <unordered_set>

#include "accord/error.h"
#include "accord/text.h"

namespace accord::eval {

// ---------------------------------------------------------------------------
// Annotation validation

namespace {

// Template and cue words that never count towards an elaboration.
const std::unordered_set<std::string> &template_words() {
  static const std::unordered_set<std::string> kWords = {
      "is",   "a",    "an",      "like",    "in",       "that", "they",
      "are",  "both", "has",     "have",    "been",     "used", "for",
      "part", "of",   "component", "similar", "to",     "utilized", "applied",
      "the",  "it",   "and",     "or"};
  return kWords;
}

// Blanks every case-insensitive, word-bounded occurrence of `phrase`
// (with an optional plural suffix).
void blank_phrase(std::string &lower, std::string_view phrase_in) {
  const std::string phrase = text::collapse_whitespace(text::to_lower(phrase_in));
  if (phrase.empty()) return;
  for (auto p = lower.find(phrase); p != std::string::npos; p = lower.find(phrase, p + 1)) {
    std::size_t e = p + phrase.size();
    if (e < lower.size() && lower[e] == 's') ++e;
    if (!text::at_word_boundary(lower, p, e)) continue;
    std::fill(lower.begin() + static_cast<std::ptrdiff_t>(p),
              lower.begin() + static_cast<std::ptrdiff_t>(e), ' ');
  }
}

bool has_elaboration(const AnnotatedDescription &d) {
  std::string lower = text::to_lower(d.text);
  blank_phrase(lower, d.target);
  blank_phrase(lower, d.reference);
  for (const auto &w : text::words(lower)) {
    if (!template_words().count(w.text)) return true;
  }
  return false;
}

}  // namespace

std::vector<Violation> validate_annotation(const AnnotationRecord &record,
                                           const Lexicon &lexicon,
                                           const ValidationOptions &options) {
  std::vector<Violation> out;
  if (record.window_size != 1 && record.window_size != 2) {
    out.push_back({"bad_window_size", std::to_string(record.window_size)});
  }
  if (!record.label && !record.descriptions.empty()) {
    out.push_back({"negative_with_descriptions", record.context_id});
  }
  std::set<std::string> marked;
  marked.insert(text::normalize_concept(record.target));
  if (!record.text.empty()) {
    for (const auto &m : match_concepts(record.text, lexicon)) {
      marked.insert(text::normalize_concept(m.term));
    }
  }
  for (const auto &d : record.descriptions) {
    const std::string where = d.target + " / " + std::string(relation_name(d.relation)) +
                              " / " + d.reference;
    if (!marked.count(text::normalize_concept(d.target)) ||
        !text::contains_phrase(record.text, d.target)) {
      out.push_back({"target_not_marked", where});
    }
    // A reference only seen inside the target ("neural network" within
    // "recurrent neural network") is not an explicit mention.
    long mentions = static_cast<long>(text::count_occurrences(record.text, d.reference));
    if (!d.target.empty() && text::contains_phrase(d.target, d.reference)) {
      mentions -= static_cast<long>(text::count_occurrences(d.target, d.reference) *
                                    text::count_occurrences(record.text, d.target));
    }
    if (mentions <= 0) {
      const bool relaxed =
          options.relax_reference && text::contains_phrase(d.target, d.reference);
      if (!relaxed) out.push_back({"reference_absent", where});
    }
    if (d.relation != RelationType::kUsedFor && !has_elaboration(d)) {
      out.push_back({"empty_elaboration", where});
    }
  }
  return out;
}

CorpusStats corpus_stats(const std::vector<AnnotationRecord> &records) {
  CorpusStats s;
  for (const auto &r : records) {
    ++s.records;
    if (r.label) {
      ++s.positives;
    } else {
      ++s.negatives;
    }
    s.descriptions += r.descriptions.size();
    for (const auto &d : r.descriptions) ++s.descriptions_per_relation[d.relation];
    ++s.windows_per_size[r.window_size];
  }
  return s;
}

// ---------------------------------------------------------------------------
// Agreement

AgreementReport cohen_kappa(const std::vector<int> &a, const std::vector<int> &b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("cohen_kappa: label vectors differ in length (" +
                          std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw InvalidArgument("cohen_kappa: no items");
  const double n = static_cast<double>(a.size());
  std::map<int, double> ma, mb;
  double agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma[a[i]] += 1;
    mb[b[i]] += 1;
    if (a[i] == b[i]) agree += 1;
  }
  AgreementReport r{AgreementKind::kCohen, 0.0, a.size(), agree / n, 0.0};
  for (const auto &[label, count] : ma) {
    auto it = mb.find(label);
    if (it != mb.end()) r.expected += (count / n) * (it->second / n);
  }
  if (r.expected >= 1.0) {
    r.kappa = r.observed >= 1.0 ? 1.0 : 0.0;
  } else {
    r.kappa = (r.observed - r.expected) / (1.0 - r.expected);
  }
  return r;
}

AgreementReport fleiss_kappa(const std::vector<std::vector<int>> &counts) {
  if (counts.empty()) throw InvalidArgument("fleiss_kappa: no items");
  const std::size_t k = counts.front().size();
  if (k == 0) throw InvalidArgument("fleiss_kappa: no categories");
  long raters = -1;
  for (const auto &row : counts) {
    if (row.size() != k) throw InvalidArgument("fleiss_kappa: ragged category count");
    long total = 0;
    for (int c : row) {
      if (c < 0) throw InvalidArgument("fleiss_kappa: negative count");
      total += c;
    }
    if (raters < 0) raters = total;
    if (total != raters) {
      throw InvalidArgument("fleiss_kappa: items rated by different numbers of raters");
    }
  }
  if (raters < 2) throw InvalidArgument("fleiss_kappa: need at least two raters");
  const double n = static_cast<double>(raters);
  const double items = static_cast<double>(counts.size());
  std::vector<double> category_total(k, 0.0);
  double agreement_sum = 0.0;
  for (const auto &row : counts) {
    double sq = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      sq += static_cast<double>(row[j]) * row[j];
      category_total[j] += row[j];
    }
    agreement_sum += (sq - n) / (n * (n - 1.0));
  }
  AgreementReport r{AgreementKind::kFleiss, 0.0, counts.size(), agreement_sum / items, 0.0};
  for (double t : category_total) {
    const double p = t / (items * n);
    r.expected += p * p;
  }
  if (r.expected >= 1.0) {
    r.kappa = r.observed >= 1.0 ? 1.0 : 0.0;
  } else {
    r.kappa = (r.observed - r.expected) / (1.0 - r.expected);
  }
  return r;
}

// ---------------------------------------------------------------------------
// F1

EvalReport f1_binary(const std::vector<bool> &pred, const std::vector<bool> &gold) {
  if (pred.size() != gold.size()) {
    throw InvalidArgument("f1_binary: prediction and gold lengths differ");
  }
  if (pred.empty()) throw InvalidArgument("f1_binary: no items");
  EvalReport r;
  r.n = pred.size();
  std::size_t gold_pos = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (gold[i]) ++gold_pos;
    if (pred[i] && gold[i]) ++r.true_positives;
    if (pred[i] && !gold[i]) ++r.false_positives;
    if (!pred[i] && gold[i]) ++r.false_negatives;
  }
  const double tp = static_cast<double>(r.true_positives);
  if (r.true_positives + r.false_positives > 0) {
    r.precision = tp / static_cast<double>(r.true_positives + r.false_positives);
  }
  if (gold_pos > 0) r.recall = tp / static_cast<double>(gold_pos);
  if (r.precision + r.recall > 0) {
    r.f1 = 2 * r.precision * r.recall / (r.precision + r.recall);
  }
  r.baseline_f1 = 2.0 * static_cast<double>(gold_pos) /
                  static_cast<double>(r.n + gold_pos);
  return r;
}

// ---------------------------------------------------------------------------
// Preferences

std::string_view set_variant_name(SetVariant v) {
  switch (v) {
    case SetVariant::kGenerateStratify: return "generate_stratify";
    case SetVariant::kExtractStratify: return "extract_stratify";
    case SetVariant::kGenerateNaive: return "generate_naive";
  }
  return "generate_stratify";
}

SetVariant set_variant_from_name(std::string_view name) {
  for (auto v : {SetVariant::kGenerateStratify, SetVariant::kExtractStratify,
                 SetVariant::kGenerateNaive}) {
    if (set_variant_name(v) == name) return v;
  }
  throw InvalidArgument("unknown set variant '" + std::string(name) + "'");
}

std::string_view vote_name(Vote v) {
  switch (v) {
    case Vote::kWant: return "want";
    case Vote::kNeutral: return "neutral";
    case Vote::kNotWant: return "not_want";
  }
  return "neutral";
}

Vote vote_from_name(std::string_view name) {
  for (auto v : {Vote::kWant, Vote::kNeutral, Vote::kNotWant}) {
    if (vote_name(v) == name) return v;
  }
  throw InvalidArgument("unknown vote '" + std::string(name) + "'");
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

double mean(const std::vector<double> &values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

PreferenceSummary preference_summary(const std::vector<PreferenceBallot> &ballots,
                                     const PreferenceOptions &options) {
  if (ballots.empty()) throw InvalidArgument("preference_summary: no ballots");
  PreferenceSummary s;
  constexpr std::array<SetVariant, 3> kVariants = {
      SetVariant::kGenerateStratify, SetVariant::kExtractStratify,
      SetVariant::kGenerateNaive};
  std::vector<double> want_counts;
  for (const auto &b : ballots) {
    if (b.expertise < 1 || b.expertise > 5) {
      throw InvalidArgument("expertise of " + b.participant_id + " outside [1, 5]");
    }
    auto &row = s.counts[b.term];
    for (auto v : kVariants) row.try_emplace(v, 0);
    ++row[b.set_choice];
    double wants = 0;
    for (const auto &[id, vote] : b.votes) wants += vote == Vote::kWant ? 1 : 0;
    want_counts.push_back(wants);
  }
  auto median_stat = [](const std::vector<double> &v) { return median(v); };
  auto mean_stat = [](const std::vector<double> &v) { return mean(v); };
  for (auto v : kVariants) {
    std::vector<double> per_concept;
    for (const auto &[term, row] : s.counts) per_concept.push_back(row.at(v));
    s.median_count[v] =
        bootstrap_interval(per_concept, median_stat, options.seed, options.resamples);
  }
  s.mean_preferred =
      bootstrap_interval(want_counts, mean_stat, options.seed, options.resamples);

  // Per-concept agreement over (description x vote category).
  std::map<std::string, std::map<std::string, std::vector<int>>> tallies;
  const std::size_t categories = options.encoding == VoteEncoding::kThreeWay ? 3 : 2;
  for (const auto &b : ballots) {
    for (const auto &[id, vote] : b.votes) {
      auto &row = tallies[b.term][id];
      row.resize(categories, 0);
      std::size_t cat = static_cast<std::size_t>(vote);
      if (options.encoding == VoteEncoding::kCollapsed) cat = vote == Vote::kWant ? 0 : 1;
      ++row[cat];
    }
  }
  std::vector<double> kappas;
  for (const auto &[term, items] : tallies) {
    std::vector<std::vector<int>> counts;
    for (const auto &[id, row] : items) counts.push_back(row);
    try {
      const double k = fleiss_kappa(counts).kappa;
      s.fleiss_per_concept[term] = k;
      kappas.push_back(k);
    } catch (const InvalidArgument &) {
      s.skipped_concepts.push_back(term);
    }
  }
  s.mean_fleiss = mean(kappas);
  return s;
}

// ---------------------------------------------------------------------------
// Regression

RegressionFit ols_slope(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size()) throw InvalidArgument("ols_slope: x and y differ in length");
  if (x.size() < 2) throw InvalidArgument("ols_slope: need at least two points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("ols_slope: x is constant");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace accord::eval
