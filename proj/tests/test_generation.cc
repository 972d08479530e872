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
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "accord/corpus.h"
#include "accord/error.h"
#include "accord/generation.h"
#include "accord/io.h"
#include "accord/text.h"
#include "json.hpp"
#include "testing.h"

namespace accord {
namespace {

using nlohmann::json;
using testing::StubServer;

DemarcatedContext marked(const std::string &text, const std::string &id = "p:abstract:0-0") {
  const auto open = text.find(kOpenMarker);
  const auto close = text.find(kCloseMarker);
  return {id, text::normalize_concept(text.substr(open + 2, close - open - 2)), text};
}

Lexicon vae_lexicon() {
  return Lexicon({{"variational autoencoder", 3.2},
                  {"generative adversarial network", 2.9},
                  {"deep generative model", 2.2},
                  {"latent variable model", 2.0}});
}

TEST_CASE("exemplar bank") {
  const auto bank = ExemplarBank::load(testing::data_path("exemplars.jsonl"));
  for (auto r : kAllRelations) CHECK(bank.for_relation(r).size() == kShots);
  CHECK(bank.size() == 4 * kShots);

  CHECK_THROWS_AS(validate_example({RelationType::kIsA, "no marker here", "x is a y."}),
                  ConfigError);
  CHECK_THROWS_AS(validate_example({RelationType::kIsA, "<<x>> is a y", "x is a y like x."}),
                  ConfigError);
  CHECK_NOTHROW(validate_example({RelationType::kIsA, "<<x>> is a y", "x is a y."}));
}

TEST_CASE("build_prompt") {
  const auto bank = ExemplarBank::load(testing::data_path("exemplars.jsonl"));
  const auto ctx = marked("<<beam search>> is a heuristic search algorithm.");
  const auto isa = build_prompt(ctx, RelationType::kIsA, bank);
  const auto cmp = build_prompt(ctx, RelationType::kCompare, bank);
  REQUIRE(isa.examples.size() == 5);
  for (const auto &e : isa.examples) CHECK(e.relation == RelationType::kIsA);
  for (const auto &e : cmp.examples) CHECK(e.relation == RelationType::kCompare);
  CHECK(isa.instruction == "Describe the provided concept in terms of another concept in the text");
  CHECK(isa.instruction == cmp.instruction);
  CHECK(isa.examples == std::vector<FewShotExample>(bank.for_relation(RelationType::kIsA).begin(),
                                                    bank.for_relation(RelationType::kIsA).end()));
  const std::string rendered = isa.render();
  CHECK(rendered.rfind(isa.instruction, 0) == 0);
  CHECK(rendered.size() > ctx.text_with_markers.size());
  CHECK(rendered.substr(rendered.size() - 13) == "\nDescription:");

  std::vector<FewShotExample> four(4, {RelationType::kUsedFor, "<<x>> is used for y", "x has been used for y."});
  CHECK_THROWS_AS(build_prompt(ctx, RelationType::kUsedFor, ExemplarBank(four)), ConfigError);
}

Prompt sample_prompt() {
  const auto bank = ExemplarBank::load(testing::data_path("exemplars.jsonl"));
  return build_prompt(marked("<<x>> is a y that z."), RelationType::kIsA, bank);
}

GeneratorConfig stub_config(const StubServer &srv) {
  GeneratorConfig cfg;
  cfg.remote.endpoint = srv.url("/v1/generate");
  cfg.remote.backoff_ms = 1;
  cfg.remote.timeout_ms = 2000;
  return cfg;
}

TEST_CASE("generate_remote") {
  std::string reply_text = "x is a y that z.";
  json last_request;
  StubServer srv([&](httplib::Server &s) {
    s.Post("/v1/generate", [&](const httplib::Request &req, httplib::Response &res) {
      last_request = json::parse(req.body);
      res.set_content(json{{"text", reply_text}}.dump(), "application/json");
    });
  });
  const auto prompt = sample_prompt();
  auto g = generate_remote(prompt, stub_config(srv));
  CHECK(g.text == "x is a y that z.");
  CHECK(g.backend == GenerationBackend::kRemote);
  CHECK(g.relation == RelationType::kIsA);
  CHECK(last_request["prompt"] == prompt.render());
  CHECK(last_request["max_tokens"] == 100);
  CHECK(last_request["temperature"] == 0.0);
  CHECK_FALSE(last_request.contains("seed"));
  auto seeded = stub_config(srv);
  seeded.seed = 9;
  generate_remote(prompt, seeded);
  CHECK(last_request["seed"] == 9);

  reply_text = " x is a y that z.\n\nExtraction: another one";
  CHECK(generate_remote(prompt, stub_config(srv)).text == "x is a y that z.");
  reply_text = "";
  CHECK_THROWS_AS(generate_remote(prompt, stub_config(srv)), UnparseableError);
  reply_text = "  \n";
  CHECK_THROWS_AS(generate_remote(prompt, stub_config(srv)), UnparseableError);
}

TEST_CASE("generate_remote retries within its budget") {
  std::atomic<int> calls{0};
  StubServer srv([&](httplib::Server &s) {
    s.Post("/v1/generate", [&](const httplib::Request &, httplib::Response &res) {
      if (calls++ < 2) std::this_thread::sleep_for(std::chrono::milliseconds(400));
      res.set_content(R"({"text":"x is a y that z."})", "application/json");
    });
  });
  auto cfg = stub_config(srv);
  cfg.remote.timeout_ms = 100;
  cfg.remote.max_attempts = 3;
  CHECK(generate_remote(sample_prompt(), cfg).text == "x is a y that z.");
  CHECK(calls.load() == 3);

  calls = 0;
  cfg.remote.max_attempts = 2;
  CHECK_THROWS_AS(generate_remote(sample_prompt(), cfg), TransportError);
}

TEST_CASE("generate_template") {
  const Lexicon lex = vae_lexicon();
  SUBCASE("IsA from a hypernym list") {
    auto g = generate_template(
        marked("recently, deep generative models such as <<variational autoencoders>> (vaes) "
               "(rezende et al., 2014) have become increasingly popular for modelling "
               "real-valued data, such as images."),
        RelationType::kIsA, lex);
    CHECK(g.text ==
          "variational autoencoder is a deep generative model that is used for modelling "
          "real-valued data, such as images.");
    CHECK(g.backend == GenerationBackend::kTemplate);
  }
  SUBCASE("Compare from a coordination") {
    auto g = generate_template(
        marked("some such models, including <<variational autoencoders>> (vaes) and generative "
               "adversarial networks (gans) [goodfellow et al., 2014, kingma and welling, 2013, "
               "rezende et al., 2014], learn an explicit low-dimensional manifold that "
               "approximates a natural signal class."),
        RelationType::kCompare, lex);
    CHECK(g.text ==
          "variational autoencoder is like generative adversarial network in that they are both "
          "models that learn an explicit low-dimensional manifold that approximates a natural "
          "signal class.");
  }
  SUBCASE("no pattern") {
    CHECK_THROWS_AS(generate_template(marked("we evaluate <<beam search>> extensively."),
                                      RelationType::kIsA, lex),
                    UnparseableError);
  }
}

TEST_CASE("parse_description") {
  SUBCASE("IsA") {
    auto p = parse_description(
        "variational autoencoder is a latent variable model that does not offer an exact "
        "density estimate.",
        "variational autoencoder");
    CHECK(p.target == "variational autoencoder");
    CHECK(p.relation == RelationType::kIsA);
    CHECK(p.reference == "latent variable model");
    CHECK(p.elaboration == "that does not offer an exact density estimate");
  }
  SUBCASE("Compare") {
    auto p = parse_description(
        "sentence classification is like relation classification in that they are both tasks "
        "that word embedding has been used for since the introduction of word2vec software.",
        "sentence classification");
    CHECK(p.relation == RelationType::kCompare);
    CHECK(p.reference == "relation classification");
    CHECK(p.elaboration ==
          "they are both tasks that word embedding has been used for since the introduction of "
          "word2vec software");
  }
  SUBCASE("UsedFor") {
    auto p = parse_description(
        "word representation has been used for sentence classification since the introduction "
        "of word2vec software.",
        "word representation");
    CHECK(p.relation == RelationType::kUsedFor);
    CHECK(p.reference == "sentence classification");
    CHECK(p.elaboration == "since the introduction of word2vec software");
  }
  SUBCASE("PartOf and aliases") {
    auto p = parse_description("encoder is a component of the transformer that reads input.",
                               "encoder");
    CHECK(p.relation == RelationType::kPartOf);
    CHECK(p.reference == "transformer");
    auto s = parse_description("adam is similar to rmsprop in that both adapt step sizes.",
                               "adam");
    CHECK(s.relation == RelationType::kCompare);
    CHECK(s.reference == "rmsprop");
  }
  SUBCASE("unparseable") {
    CHECK_THROWS_AS(parse_description("beam search works well.", "beam search"),
                    UnparseableError);
    CHECK_THROWS_AS(parse_description("greedy decoding is a method.", "beam search"),
                    UnparseableError);
    CHECK_THROWS_AS(parse_description("beam search is a beam search that is fast.", "beam search"),
                    UnparseableError);
  }
}

TEST_CASE("render and parse round trip") {
  const std::vector<std::string> targets = {"beam search", "variational autoencoder",
                                            "word embedding", "dropout"};
  const std::vector<std::string> refs = {"heuristic search algorithm", "deep generative model",
                                         "sentence classification", "regularization technique"};
  const std::map<RelationType, std::vector<std::string>> elabs = {
      {RelationType::kIsA, {"that explores a graph", "that is used for modelling images"}},
      {RelationType::kCompare, {"they are both models that learn a manifold",
                                "they are both methods for representation learning"}},
      {RelationType::kPartOf, {"that lets each position weigh the others",
                               "where it stabilises training"}},
      {RelationType::kUsedFor, {"since the introduction of word2vec software",
                                "with strong results on news text", ""}},
  };
  std::size_t n = 0;
  for (const auto &t : targets) {
    for (const auto &r : refs) {
      for (const auto &[rel, es] : elabs) {
        for (const auto &e : es) {
          const std::string text = render_description(t, rel, r, e);
          const auto p = parse_description(text, t);
          CHECK_MESSAGE(p.target == t, text);
          CHECK_MESSAGE(p.relation == rel, text);
          CHECK_MESSAGE(p.reference == r, text);
          CHECK_MESSAGE(p.elaboration == e, text);
          CHECK(p.text == text);
          ++n;
        }
      }
    }
  }
  CHECK(n == 4 * 4 * 9);
}

std::vector<std::string> reasons(const FilterVerdict &v) {
  std::vector<std::string> out;
  for (auto r : v.reasons) out.emplace_back(reject_reason_name(r));
  return out;
}

TEST_CASE("filter_description") {
  const std::string ctx =
      "beam search is a heuristic search algorithm. cho et al. extended our work on beam "
      "search for translation.";
  SUBCASE("unresolved reference") {
    ParsedDescription p{"beam search", RelationType::kIsA, "heuristic search algorithm",
                        "that extends our work", "beam search is a heuristic search algorithm "
                                                 "that extends our work."};
    auto v = filter_description(p, ctx);
    CHECK_FALSE(v.accepted);
    CHECK(reasons(v) == std::vector<std::string>{"unresolved_reference"});
  }
  SUBCASE("duplicate target") {
    ParsedDescription p{"beam search", RelationType::kIsA, "method", "based on beam search",
                        "beam search is a method based on beam search"};
    auto v = filter_description(p, "a method based on beam search");
    CHECK(reasons(v) == std::vector<std::string>{"duplicate_target"});
  }
  SUBCASE("author-name reference") {
    ParsedDescription p{"beam search", RelationType::kCompare, "cho et al",
                        "they are both studied", "beam search is like cho et al in that they are "
                                                 "both studied."};
    auto v = filter_description(p, ctx);
    CHECK(reasons(v) == std::vector<std::string>{"author_name_reference"});
    CHECK(is_author_name("Vaswani (2017)"));
    CHECK(is_author_name("Kingma and Welling (2013)"));
    CHECK_FALSE(is_author_name("heuristic search algorithm"));
  }
  SUBCASE("reference missing, with the head-noun relaxation") {
    ParsedDescription p{"recurrent neural network", RelationType::kIsA, "neural network",
                        "that keeps state", "recurrent neural network is a neural network that "
                                            "keeps state."};
    CHECK(filter_description(p, "a recurrent model keeps state").accepted);
    CHECK(reasons(filter_description(p, "a recurrent model keeps state",
                                     FilterOptions{false})) ==
          std::vector<std::string>{"reference_missing"});
    ParsedDescription q{"beam search", RelationType::kIsA, "sorting algorithm",
                        "that is fast", "beam search is a sorting algorithm that is fast."};
    CHECK(reasons(filter_description(q, ctx)) == std::vector<std::string>{"reference_missing"});
  }
  SUBCASE("empty elaboration is only tolerated for UsedFor") {
    ParsedDescription p{"beam search", RelationType::kIsA, "heuristic search algorithm", "",
                        "beam search is a heuristic search algorithm."};
    CHECK(reasons(filter_description(p, ctx)) == std::vector<std::string>{"unparseable"});
    p.relation = RelationType::kUsedFor;
    p.reference = "translation";
    p.text = "beam search has been used for translation.";
    CHECK(filter_description(p, ctx).accepted);
  }
  SUBCASE("nested target inside the reference is not a repeat") {
    ParsedDescription p{"autoencoder", RelationType::kCompare, "variational autoencoder",
                        "they are both models", "autoencoder is like variational autoencoder in "
                                                "that they are both models."};
    CHECK(filter_description(p, "autoencoders and variational autoencoders are models").accepted);
  }
}

}  // namespace
}  // namespace accord
