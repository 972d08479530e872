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

#include "accord/extraction.h"

#include <unordered_map>

#include "accord/error.h"
#include "accord/parallel.h"
#include "accord/patterns.h"
#include "accord/remote.h"

namespace accord {

void ExtractorConfig::validate() const {
  auto in_open_unit = [](double t) { return t > 0.0 && t < 1.0; };
  if (!in_open_unit(binary_threshold) || !in_open_unit(relation_threshold)) {
    throw ConfigError("extractor thresholds must lie in (0, 1)");
  }
}

// ---------------------------------------------------------------------------
// Rule backend

RuleBackend::RuleBackend(std::shared_ptr<const Lexicon> lexicon)
    : lexicon_(std::move(lexicon)) {
  if (!lexicon_) lexicon_ = std::make_shared<const Lexicon>();
}

std::vector<Outcome<double>> RuleBackend::binary_scores(
    std::span<const DemarcatedContext> items) const {
  std::vector<Outcome<double>> out;
  out.reserve(items.size());
  for (const auto &item : items) {
    try {
      const bool hit = !patterns::match_patterns(item, *lexicon_).empty();
      out.push_back({hit ? 1.0 : 0.0, {}, nullptr});
    } catch (const std::exception &e) {
      out.push_back({std::nullopt, e.what(), std::current_exception()});
    }
  }
  return out;
}

std::vector<Outcome<RelationScoreMap>> RuleBackend::relation_scores(
    std::span<const DemarcatedContext> items) const {
  std::vector<Outcome<RelationScoreMap>> out;
  out.reserve(items.size());
  for (const auto &item : items) {
    try {
      RelationScoreMap scores;
      for (auto r : kAllRelations) scores[r] = 0.0;
      for (const auto &m : patterns::match_patterns(item, *lexicon_)) {
        scores[m.relation] = 1.0;
      }
      out.push_back({std::move(scores), {}, nullptr});
    } catch (const std::exception &e) {
      out.push_back({std::nullopt, e.what(), std::current_exception()});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Remote backend

namespace {

using nlohmann::json;

double checked_score(const json &v, const std::string &key) {
  if (!v.is_number()) throw ProtocolError(key, "[" + key + "] score is not a number");
  const double s = v.get<double>();
  if (!(s >= 0.0 && s <= 1.0)) {
    throw ProtocolError(key, "[" + key + "] score outside [0, 1]");
  }
  return s;
}

template <typename T, typename Decode>
std::vector<Outcome<T>> remote_batches(const RemoteSettings &settings,
                                       std::span<const DemarcatedContext> items,
                                       std::string_view mode, Decode decode) {
  std::vector<Outcome<T>> out(items.size());
  const std::size_t batch = std::max<std::size_t>(1, settings.batch_size);
  const std::size_t n_batches = (items.size() + batch - 1) / batch;

  // One request for items[b, e); decodes every item or throws.
  auto request = [&](std::size_t b, std::size_t e) {
    json body{{"mode", mode}, {"items", json::array()}};
    std::vector<std::string> keys;
    for (std::size_t i = b; i < e; ++i) {
      keys.push_back(instance_key(items[i]));
      body["items"].push_back({{"context_id", keys.back()},
                               {"text", items[i].text_with_markers}});
    }
    const std::string label = e - b == 1 ? keys.front() : keys.front() + "..";
    const json reply = post_json(settings, body, label);
    if (!reply.is_object() || !reply.contains("items") || !reply["items"].is_array()) {
      throw ProtocolError(label, "[" + label + "] reply lacks an items array");
    }
    std::unordered_map<std::string, const json *> by_key;
    for (const auto &it : reply["items"]) {
      if (it.is_object() && it.contains("context_id") && it["context_id"].is_string()) {
        by_key[it["context_id"].get<std::string>()] = &it;
      }
    }
    std::vector<T> decoded;
    for (const auto &k : keys) {
      auto f = by_key.find(k);
      if (f == by_key.end()) throw ProtocolError(k, "[" + k + "] missing from reply");
      decoded.push_back(decode(*f->second, k));
    }
    for (std::size_t i = b; i < e; ++i) out[i] = {std::move(decoded[i - b]), {}, nullptr};
  };

  parallel_for(n_batches, settings.max_in_flight, [&](std::size_t bi) {
    const std::size_t b = bi * batch;
    const std::size_t e = std::min(items.size(), b + batch);
    try {
      request(b, e);
      return;
    } catch (const std::exception &err) {
      if (e - b == 1) {
        out[b] = {std::nullopt, err.what(), std::current_exception()};
        return;
      }
    }
    // Isolate the failure: retry the batch one item at a time.
    for (std::size_t i = b; i < e; ++i) {
      try {
        request(i, i + 1);
      } catch (const std::exception &err) {
        out[i] = {std::nullopt, err.what(), std::current_exception()};
      }
    }
  });
  return out;
}

}  // namespace

RemoteScorer::RemoteScorer(RemoteSettings settings) : settings_(std::move(settings)) {}

std::vector<Outcome<double>> RemoteScorer::binary_scores(
    std::span<const DemarcatedContext> items) const {
  return remote_batches<double>(settings_, items, "binary",
                                [](const json &it, const std::string &key) {
                                  if (!it.contains("score")) {
                                    throw ProtocolError(key, "[" + key + "] no score");
                                  }
                                  return checked_score(it["score"], key);
                                });
}

std::vector<Outcome<RelationScoreMap>> RemoteScorer::relation_scores(
    std::span<const DemarcatedContext> items) const {
  return remote_batches<RelationScoreMap>(
      settings_, items, "relations", [](const json &it, const std::string &key) {
        if (!it.contains("scores") || !it["scores"].is_object()) {
          throw ProtocolError(key, "[" + key + "] no scores object");
        }
        RelationScoreMap scores;
        for (auto r : kAllRelations) {
          const std::string name(relation_name(r));
          if (!it["scores"].contains(name)) {
            throw ProtocolError(key, "[" + key + "] missing score for " + name);
          }
          scores[r] = checked_score(it["scores"][name], key);
        }
        return scores;
      });
}

// ---------------------------------------------------------------------------
// Extractor

Extractor::Extractor(ExtractorConfig cfg, std::shared_ptr<const Lexicon> lexicon)
    : cfg_(std::move(cfg)) {
  cfg_.validate();
  if (cfg_.backend == Backend::kRule) {
    backend_ = std::make_unique<RuleBackend>(std::move(lexicon));
  } else {
    backend_ = std::make_unique<RemoteScorer>(cfg_.remote);
  }
}

Extractor::Extractor(ExtractorConfig cfg, std::unique_ptr<ScoringBackend> backend)
    : cfg_(std::move(cfg)), backend_(std::move(backend)) {
  cfg_.validate();
  if (!backend_) throw ConfigError("extractor backend is null");
}

BinaryPrediction Extractor::to_binary(const DemarcatedContext &input, double score) const {
  return {input.context_id, score >= cfg_.binary_threshold, score};
}

RelationScores Extractor::to_relations(const DemarcatedContext &input,
                                       RelationScoreMap scores) const {
  RelationScores rs{input.context_id, std::move(scores), {}};
  for (auto r : kAllRelations) {
    if (rs.scores.at(r) >= cfg_.relation_threshold) rs.predicted.insert(r);
  }
  return rs;
}

namespace {

template <typename T>
T unwrap(Outcome<T> o) {
  if (!o.ok()) std::rethrow_exception(o.exception);
  return std::move(*o.value);
}

}  // namespace

BinaryPrediction Extractor::classify_binary(const DemarcatedContext &input) const {
  target_span(input);  // exactly one marked target
  auto scores = backend_->binary_scores(std::span(&input, 1));
  return to_binary(input, unwrap(std::move(scores.at(0))));
}

RelationScores Extractor::classify_relations(const DemarcatedContext &input) const {
  target_span(input);
  auto scores = backend_->relation_scores(std::span(&input, 1));
  return to_relations(input, unwrap(std::move(scores.at(0))));
}

std::vector<ExtractionResult> Extractor::run(
    std::span<const DemarcatedContext> inputs) const {
  std::vector<ExtractionResult> out(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) out[i].input = inputs[i];

  const auto binary = backend_->binary_scores(inputs);
  std::vector<DemarcatedContext> positives;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (!binary[i].ok()) {
      out[i].error = binary[i].error;
      continue;
    }
    out[i].binary = to_binary(inputs[i], *binary[i].value);
    if (out[i].binary->label) {
      positives.push_back(inputs[i]);
      where.push_back(i);
    }
  }
  const auto relations = backend_->relation_scores(positives);
  for (std::size_t k = 0; k < positives.size(); ++k) {
    auto &slot = out[where[k]];
    if (!relations[k].ok()) {
      slot.error = relations[k].error;
      continue;
    }
    slot.relations = to_relations(positives[k], *relations[k].value);
  }
  return out;
}

}  // namespace accord
