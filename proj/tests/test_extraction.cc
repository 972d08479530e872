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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "accord/corpus.h"
#include "accord/error.h"
#include "accord/extraction.h"
#include "accord/patterns.h"
#include "json.hpp"
#include "testing.h"

namespace accord {
namespace {

using nlohmann::json;
using testing::StubServer;

// "<<x>>" marks the target; the target concept is the marked text.
DemarcatedContext marked(const std::string &text, const std::string &id = "p:abstract:0-0") {
  const auto open = text.find(kOpenMarker);
  const auto close = text.find(kCloseMarker);
  REQUIRE(open != std::string::npos);
  REQUIRE(close != std::string::npos);
  const std::string target = text.substr(open + 2, close - open - 2);
  return {id, target, text};
}

std::shared_ptr<const Lexicon> mini_lexicon() {
  return std::make_shared<const Lexicon>(std::vector<LexiconEntry>{
      {"variational autoencoder", 3.2},
      {"generative adversarial network", 2.9},
      {"generative model", 2.6},
      {"word representation", 1.8},
      {"sentence classification", 1.6},
      {"relation classification", 1.7},
      {"sentiment analysis", 2.8},
      {"word embedding", 3.0},
      {"beam search", 2.7},
      {"transformer", 3.0},
      {"attention mechanism", 2.0},
  });
}

std::set<RelationType> fired(const std::string &text) {
  std::set<RelationType> out;
  for (const auto &m : patterns::match_patterns(marked(text), *mini_lexicon())) {
    out.insert(m.relation);
  }
  return out;
}

TEST_CASE("rule patterns") {
  CHECK(fired("<<variational autoencoder>> is a generative model that learns a latent space.")
            .count(RelationType::kIsA));
  CHECK(fired("we evaluate <<beam search>> extensively.").empty());
  CHECK(fired("models, such as <<variational autoencoders>> (vaes) and generative adversarial "
              "networks, learn a manifold.")
            .count(RelationType::kCompare));
  CHECK(fired("the <<attention mechanism>> is a component of the transformer.")
            .count(RelationType::kPartOf));
  CHECK(fired("<<word representation>> has been widely utilized for a variety of tasks, such as "
              "sentence classification.")
            .count(RelationType::kUsedFor));

  SUBCASE("reference and elaboration of an IsA hypernym pattern") {
    auto ms = patterns::match_patterns(
        marked("recently, deep generative models such as <<variational autoencoders>> (vaes) "
               "(rezende et al., 2014) have become increasingly popular for modelling "
               "real-valued data, such as images."),
        *mini_lexicon());
    bool found = false;
    for (const auto &m : ms) {
      if (m.relation != RelationType::kIsA) continue;
      found = true;
      CHECK(m.reference == "deep generative models");
      REQUIRE(m.elaboration.has_value());
      CHECK(*m.elaboration == "that is used for modelling real-valued data, such as images");
    }
    CHECK(found);
  }
  SUBCASE("a match never names the target as its own reference") {
    for (const auto &m : patterns::match_patterns(
             marked("<<beam search>> is like beam search in that it searches."),
             *mini_lexicon())) {
      CHECK(m.reference != "beam search");
    }
  }
}

TEST_CASE("rule backend through the extractor") {
  Extractor ex(ExtractorConfig{}, mini_lexicon());
  SUBCASE("binary") {
    auto pos = ex.classify_binary(
        marked("<<variational autoencoder>> is a generative model that learns a latent space."));
    CHECK(pos.label);
    CHECK(pos.score == 1.0);
    auto neg = ex.classify_binary(marked("we evaluate <<beam search>> extensively."));
    CHECK_FALSE(neg.label);
    CHECK(neg.score == 0.0);
  }
  SUBCASE("relations") {
    auto rs = ex.classify_relations(
        marked("models, such as <<variational autoencoders>> (vaes) and generative adversarial "
               "networks, learn a manifold."));
    CHECK(rs.scores.size() == 4);
    CHECK(rs.predicted.count(RelationType::kCompare));
    auto uf = ex.classify_relations(
        marked("<<word representation>> has been widely utilized for a variety of tasks."));
    CHECK(uf.predicted.count(RelationType::kUsedFor));
  }
  SUBCASE("deterministic") {
    const auto in = marked("such as <<beam search>> and greedy decoding are both strategies.");
    CHECK(ex.classify_relations(in) == ex.classify_relations(in));
  }
}

// Scores from a table; counts stage-2 calls.
class TableBackend : public ScoringBackend {
 public:
  std::map<std::string, double> binary;
  RelationScoreMap relations;
  mutable std::vector<std::string> stage2_seen;

  std::vector<Outcome<double>> binary_scores(
      std::span<const DemarcatedContext> items) const override {
    std::vector<Outcome<double>> out;
    for (const auto &it : items) out.push_back({binary.at(it.target_concept), {}, nullptr});
    return out;
  }
  std::vector<Outcome<RelationScoreMap>> relation_scores(
      std::span<const DemarcatedContext> items) const override {
    std::vector<Outcome<RelationScoreMap>> out;
    for (const auto &it : items) {
      stage2_seen.push_back(it.target_concept);
      out.push_back({relations, {}, nullptr});
    }
    return out;
  }
};

TEST_CASE("thresholds and two-stage gating") {
  auto backend = std::make_unique<TableBackend>();
  backend->binary = {{"a", 0.9}, {"b", 0.2}, {"c", 0.5}};
  backend->relations = {{RelationType::kIsA, 0.9},
                        {RelationType::kCompare, 0.6},
                        {RelationType::kPartOf, 0.1},
                        {RelationType::kUsedFor, 0.2}};
  auto *raw = backend.get();
  Extractor ex(ExtractorConfig{}, std::move(backend));

  CHECK(ex.classify_binary(marked("<<a>> x")).label);
  CHECK_FALSE(ex.classify_binary(marked("<<b>> x")).label);
  CHECK(ex.classify_binary(marked("<<c>> x")).label);  // score >= threshold
  CHECK(ex.classify_relations(marked("<<a>> x")).predicted ==
        std::set<RelationType>{RelationType::kIsA, RelationType::kCompare});

  raw->stage2_seen.clear();
  std::vector<DemarcatedContext> batch = {marked("<<a>> x"), marked("<<b>> y"),
                                          marked("<<c>> z")};
  auto results = ex.run(batch);
  REQUIRE(results.size() == 3);
  CHECK(results[0].relations.has_value());
  CHECK_FALSE(results[1].relations.has_value());
  CHECK(results[1].binary.has_value());
  CHECK(raw->stage2_seen == std::vector<std::string>{"a", "c"});

  ExtractorConfig bad;
  bad.binary_threshold = 1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

ExtractorConfig remote_config(const StubServer &srv) {
  ExtractorConfig cfg;
  cfg.backend = Backend::kRemote;
  cfg.remote.endpoint = srv.url("/score");
  cfg.remote.timeout_ms = 2000;
  cfg.remote.backoff_ms = 1;
  cfg.remote.token_env = "ACCORD_TEST_SCORER_TOKEN";
  return cfg;
}

json score_items(const json &req, const std::function<json(const json &)> &one) {
  json out{{"items", json::array()}};
  for (const auto &it : req["items"]) {
    json r = one(it);
    r["context_id"] = it["context_id"];
    out["items"].push_back(r);
  }
  return out;
}

TEST_CASE("remote scorer wire protocol") {
  std::mutex mu;
  std::vector<json> requests;
  std::vector<std::string> auth;
  StubServer srv([&](httplib::Server &s) {
    s.Post("/score", [&](const httplib::Request &req, httplib::Response &res) {
      json body = json::parse(req.body);
      {
        std::lock_guard<std::mutex> lock(mu);
        requests.push_back(body);
        auth.push_back(req.get_header_value("Authorization"));
      }
      json reply = score_items(body, [&](const json &it) -> json {
        const std::string text = it["text"];
        if (body["mode"] == "binary") return {{"score", text.find("good") != std::string::npos ? 0.9 : 0.1}};
        return {{"scores", {{"is-a", 0.9}, {"compare", 0.6}, {"part-of", 0.1}, {"used-for", 0.2}}}};
      });
      res.set_content(reply.dump(), "application/json");
    });
  });
  setenv("ACCORD_TEST_SCORER_TOKEN", "s3cret", 1);
  auto cfg = remote_config(srv);
  cfg.remote.batch_size = 2;
  Extractor ex(cfg, std::shared_ptr<const Lexicon>());

  std::vector<DemarcatedContext> batch = {marked("<<a>> good", "p:abstract:0-0"),
                                          marked("<<b>> bad", "p:abstract:1-1"),
                                          marked("<<c>> good", "p:abstract:2-2")};
  auto results = ex.run(batch);
  REQUIRE(results.size() == 3);
  CHECK(results[0].binary->score == 0.9);
  CHECK(results[0].binary->label);
  CHECK_FALSE(results[1].binary->label);
  CHECK(results[0].relations->predicted ==
        std::set<RelationType>{RelationType::kIsA, RelationType::kCompare});
  CHECK_FALSE(results[1].relations.has_value());

  // Two binary batches (2 + 1 items) and one relations batch of the two positives.
  REQUIRE(requests.size() == 3);
  std::size_t binary_items = 0, relation_items = 0;
  for (const auto &r : requests) {
    (r["mode"] == "binary" ? binary_items : relation_items) += r["items"].size();
    CHECK(r["items"][0].contains("text"));
  }
  CHECK(binary_items == 3);
  CHECK(relation_items == 2);
  for (const auto &a : auth) CHECK(a == "Bearer s3cret");
  CHECK(requests[0]["items"][0]["context_id"] == "p:abstract:0-0@0");
  unsetenv("ACCORD_TEST_SCORER_TOKEN");
}

TEST_CASE("remote scorer retries timeouts and server errors") {
  std::atomic<int> calls{0};
  StubServer slow([&](httplib::Server &s) {
    s.Post("/score", [&](const httplib::Request &req, httplib::Response &res) {
      if (calls++ < 2) std::this_thread::sleep_for(std::chrono::milliseconds(400));
      res.set_content(score_items(json::parse(req.body),
                                  [](const json &) -> json { return {{"score", 0.7}}; })
                          .dump(),
                      "application/json");
    });
  });
  auto cfg = remote_config(slow);
  cfg.remote.timeout_ms = 100;
  cfg.remote.max_attempts = 3;
  Extractor ex(cfg, std::shared_ptr<const Lexicon>());
  auto p = ex.classify_binary(marked("<<a>> x"));
  CHECK(p.score == doctest::Approx(0.7));
  CHECK(calls.load() == 3);

  std::atomic<int> flaky_calls{0};
  StubServer flaky([&](httplib::Server &s) {
    s.Post("/score", [&](const httplib::Request &req, httplib::Response &res) {
      if (flaky_calls++ == 0) {
        res.status = 503;
        return;
      }
      res.set_content(score_items(json::parse(req.body),
                                  [](const json &) -> json { return {{"score", 0.2}}; })
                          .dump(),
                      "application/json");
    });
  });
  Extractor ex2(remote_config(flaky), std::shared_ptr<const Lexicon>());
  CHECK_FALSE(ex2.classify_binary(marked("<<a>> x")).label);
  CHECK(flaky_calls.load() == 2);
}

TEST_CASE("remote scorer failures") {
  SUBCASE("exhausted retries raise a transport error naming the context") {
    StubServer down([&](httplib::Server &s) {
      s.Post("/score", [](const httplib::Request &, httplib::Response &res) { res.status = 500; });
    });
    auto cfg = remote_config(down);
    cfg.remote.max_attempts = 2;
    Extractor ex(cfg, std::shared_ptr<const Lexicon>());
    try {
      ex.classify_binary(marked("<<a>> x", "p:intro:0-0"));
      FAIL("expected TransportError");
    } catch (const TransportError &e) {
      CHECK(std::string(e.what()).find("p:intro:0-0") != std::string::npos);
    }
  }
  SUBCASE("unreachable endpoint") {
    ExtractorConfig cfg;
    cfg.backend = Backend::kRemote;
    cfg.remote.endpoint = "http://127.0.0.1:1/score";
    cfg.remote.max_attempts = 1;
    cfg.remote.timeout_ms = 200;
    Extractor ex(cfg, std::shared_ptr<const Lexicon>());
    CHECK_THROWS_AS(ex.classify_binary(marked("<<a>> x")), TransportError);
  }
  SUBCASE("malformed payloads are protocol errors") {
    StubServer bad([&](httplib::Server &s) {
      s.Post("/score", [](const httplib::Request &req, httplib::Response &res) {
        json body = json::parse(req.body);
        if (body["mode"] == "binary") {
          res.set_content(R"({"items":[{"context_id":"nope","score":0.5}]})", "application/json");
        } else {
          res.set_content("not json", "application/json");
        }
      });
    });
    Extractor ex(remote_config(bad), std::shared_ptr<const Lexicon>());
    CHECK_THROWS_AS(ex.classify_binary(marked("<<a>> x")), ProtocolError);
    CHECK_THROWS_AS(ex.classify_relations(marked("<<a>> x")), ProtocolError);
  }
  SUBCASE("one bad item does not sink its batch") {
    StubServer partial([&](httplib::Server &s) {
      s.Post("/score", [](const httplib::Request &req, httplib::Response &res) {
        res.set_content(score_items(json::parse(req.body),
                                    [](const json &it) -> json {
                                      const std::string t = it["text"];
                                      return {{"score", t.find("bad") != std::string::npos
                                                            ? 1.5
                                                            : 0.8}};
                                    })
                            .dump(),
                        "application/json");
      });
    });
    auto cfg = remote_config(partial);
    cfg.remote.batch_size = 8;
    Extractor ex(cfg, std::shared_ptr<const Lexicon>());
    std::vector<DemarcatedContext> batch = {marked("<<a>> fine", "p:abstract:0-0"),
                                            marked("<<b>> bad", "p:abstract:1-1"),
                                            marked("<<c>> fine", "p:abstract:2-2")};
    RemoteScorer scorer(cfg.remote);
    auto scores = scorer.binary_scores(batch);
    REQUIRE(scores.size() == 3);
    CHECK(scores[0].ok());
    CHECK_FALSE(scores[1].ok());
    CHECK(scores[2].ok());
    auto results = ex.run(batch);
    CHECK(results[1].error.find("outside [0, 1]") != std::string::npos);
    CHECK(results[0].binary.has_value());
    CHECK(results[2].binary.has_value());
  }
}

}  // namespace
}  // namespace accord
