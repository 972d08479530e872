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

#include <algorithm>
#include <cctype>
#include <memory>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "accord/error.h"
#include "accord/io.h"
#include "accord/service.h"
#include "oracles.h"
#include "testing.h"

namespace accord {
namespace {

using oracle::dp_spans;
using oracle::oracle_tokens;
using testing::data_path;

std::vector<std::string> runs_of(const std::string &s, const std::vector<HighlightSpan> &spans) {
  std::vector<std::string> out;
  for (const auto &sp : spans) {
    std::string joined;
    for (const auto &t : oracle_tokens(s.substr(sp.char_start, sp.char_end - sp.char_start))) {
      joined += t.norm + " ";
    }
    out.push_back(joined);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST_CASE("shared_spans examples") {
  const std::string s = "a variational autoencoder, for images.";
  const auto id = shared_spans(s, s, 1);
  REQUIRE(id.description.size() == 1);
  CHECK(id.description[0] == HighlightSpan{0, s.size() - 1});  // trailing '.' trimmed
  CHECK(id.context == id.description);

  const auto none = shared_spans("alpha beta gamma", "delta epsilon zeta", 1);
  CHECK(none.description.empty());
  CHECK(none.context.empty());
  CHECK_THROWS_AS(shared_spans("a", "a", 0), InvalidArgument);

  const std::string desc =
      "variational autoencoder is a deep generative model that has become increasingly "
      "popular for modelling real-valued data, such as images.";
  const std::string ctx =
      "recently, deep generative models such as variational autoencoders (vaes) (rezende et "
      "al., 2014) have become increasingly popular for modelling real-valued data, such as "
      "images.";
  const auto sp = shared_spans(desc, ctx, 3);
  CHECK(sp == dp_spans(desc, ctx, 3));
  // Brute force: the phrase must sit inside exactly one highlighted span per side.
  const std::string phrase = "modelling real-valued data, such as images";
  const auto dpos = desc.find(phrase), cpos = ctx.find(phrase);
  REQUIRE(dpos != std::string::npos);
  REQUIRE(cpos != std::string::npos);
  auto covers = [&](const std::vector<HighlightSpan> &spans, std::size_t p) {
    return std::any_of(spans.begin(), spans.end(), [&](const HighlightSpan &h) {
      return h.char_start <= p && p + phrase.size() <= h.char_end;
    });
  };
  CHECK(covers(sp.description, dpos));
  CHECK(covers(sp.context, cpos));
}

TEST_CASE("shared_spans against the DP oracle") {
  const std::vector<std::string> vocab = {"the", "model", "Data", "data,", "(vae)", "is",
                                          "a",   "net",   "of",   "images.", "--"};
  std::mt19937_64 rng(21);
  auto sentence = [&](std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
      s += vocab[rng() % vocab.size()];
      s += rng() % 4 ? " " : "  ";
    }
    return s;
  };
  for (int t = 0; t < 3000; ++t) {
    const auto a = sentence(rng() % 25), b = sentence(rng() % 25);
    const int m = 1 + static_cast<int>(rng() % 3);
    const auto got = shared_spans(a, b, m);
    CHECK(got == dp_spans(a, b, m));
    const auto swapped = shared_spans(b, a, m);
    CHECK(runs_of(a, got.description) == runs_of(b, got.context));
    CHECK(runs_of(a, got.description) == runs_of(a, swapped.context));
    for (const auto *side : {&got.description, &got.context}) {
      for (std::size_t i = 0; i < side->size(); ++i) {
        CHECK((*side)[i].char_start < (*side)[i].char_end);
        if (i) CHECK((*side)[i - 1].char_end <= (*side)[i].char_start);
      }
    }
  }
}

DescriptionIndex fixture_index() {
  return build_index(data_path("fixtures/sets.jsonl"),
                     data_path("fixtures/sets.provenance.jsonl"));
}

TEST_CASE("build_index") {
  const auto index = fixture_index();
  CHECK(index.concepts() ==
        std::vector<std::string>{"beam search", "variational autoencoder"});
  for (const auto &term : index.concepts()) {
    for (const auto &card : index.cards_for(term)) {
      for (const auto &h : card.highlights.description) CHECK(h.char_end <= card.text.size());
      for (const auto &h : card.highlights.context) {
        CHECK(h.char_end <= card.provenance.text.size());
      }
    }
  }

  auto sets = read_jsonl<DescriptionSet>(data_path("fixtures/sets.jsonl"));
  auto prov = read_jsonl<Provenance>(data_path("fixtures/sets.provenance.jsonl"));
  sets[0].entries[0].context_id = "ghost:abstract:9-9";
  try {
    DescriptionIndex::build(sets, prov);
    FAIL("expected a build error");
  } catch (const InputError &e) {
    CHECK(std::string(e.what()).find("ghost:abstract:9-9") != std::string::npos);
  }
  CHECK(DescriptionIndex::build({}, {}).concepts().empty());

  testing::TempDir dir;
  const auto empty = build_index(dir.write("s.jsonl", ""), dir.write("p.jsonl", ""));
  CHECK(empty.concepts().empty());
}

TEST_CASE("query and cards") {
  const auto index = fixture_index();
  CHECK(query_concepts(index, "var") == std::vector<std::string>{"variational autoencoder"});
  CHECK(query_concepts(index, "VAR") == std::vector<std::string>{"variational autoencoder"});
  CHECK(query_concepts(index, "").size() == 2);
  CHECK(query_concepts(index, "zz").empty());

  const auto groups = get_cards(index, "variational autoencoder");
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].relation == RelationType::kCompare);
  CHECK(groups[1].relation == RelationType::kIsA);
  CHECK(groups[0].cards.size() == 3);
  CHECK(groups[1].cards.size() == 3);

  const auto isa = get_cards(index, "variational autoencoder", {RelationType::kIsA});
  REQUIRE(isa.size() == 1);
  CHECK(isa[0].relation == RelationType::kIsA);
  CHECK(get_cards(index, "variational autoencoder", kDefaultCardRelations, 1)[0].cards.size() ==
        1);
  CHECK_THROWS_AS(get_cards(index, "unknown"), NotFound);
  CHECK(cards_to_json("variational autoencoder", groups) ==
        cards_to_json("variational autoencoder", get_cards(index, "variational autoencoder")));
}

class Running {
 public:
  explicit Running(std::shared_ptr<const DescriptionIndex> index)
      : server_(std::move(index), {.host = "127.0.0.1", .port = 0, .static_dir = {}}) {
    port_ = server_.bind();
    thread_ = std::thread([this] { server_.serve(); });
  }
  ~Running() {
    server_.stop();
    thread_.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_connection_timeout(5);
    return c;
  }

 private:
  ApiServer server_;
  int port_ = 0;
  std::thread thread_;
};

TEST_CASE("http api") {
  Running running(std::make_shared<const DescriptionIndex>(fixture_index()));
  auto cli = running.client();

  auto health = cli.Get("/api/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(json::parse(health->body) == json{{"status", "ok"}, {"concepts", 2}});

  auto concepts = cli.Get("/api/concepts?q=var");
  REQUIRE(concepts);
  CHECK(json::parse(concepts->body)["concepts"] == json{"variational autoencoder"});

  auto cards = cli.Get("/api/concepts/variational%20autoencoder/cards?relations=compare,is-a&k=3");
  REQUIRE(cards);
  CHECK(cards->status == 200);
  const auto body = json::parse(cards->body);
  CHECK(body["target"] == "variational autoencoder");
  REQUIRE(body["groups"].size() == 2);
  CHECK(body["groups"][0]["relation"] == "compare");
  CHECK(body["groups"][1]["relation"] == "is-a");
  for (const auto &g : body["groups"]) {
    CHECK(g["cards"].size() == 3);
    for (const auto &c : g["cards"]) {
      for (const char *key : {"text", "reference", "context", "paper_url", "paper_title"}) {
        CHECK(c[key].is_string());
      }
      const std::string text = c["text"], context = c["context"];
      for (const auto &[side, len] :
           {std::pair{"description", text.size()}, std::pair{"context", context.size()}}) {
        std::size_t prev = 0;
        for (const auto &span : c["highlights"][side]) {
          const std::size_t s = span[0], e = span[1];
          CHECK(prev <= s);
          CHECK(s < e);
          CHECK(e <= len);
          prev = e;
        }
      }
    }
  }

  auto only_isa = cli.Get("/api/concepts/variational%20autoencoder/cards?relations=is-a&k=1");
  REQUIRE(only_isa);
  const auto oi = json::parse(only_isa->body);
  REQUIRE(oi["groups"].size() == 1);
  CHECK(oi["groups"][0]["cards"].size() == 1);

  auto missing = cli.Get("/api/concepts/nope/cards");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(json::parse(missing->body) == json{{"error", "unknown_concept"}});

  auto bad = cli.Get("/api/concepts/beam%20search/cards?relations=kind-of");
  REQUIRE(bad);
  CHECK(bad->status == 400);
  CHECK(json::parse(bad->body)["error"] == "bad_request");
  auto bad_k = cli.Get("/api/concepts/beam%20search/cards?k=0");
  REQUIRE(bad_k);
  CHECK(bad_k->status == 400);

  // beam search provenance has no url.
  auto beam = cli.Get("/api/concepts/beam%20search/cards?relations=is-a");
  REQUIRE(beam);
  CHECK(json::parse(beam->body)["groups"][0]["cards"][0]["paper_url"] == "");
}

TEST_CASE("concurrent identical requests") {
  Running running(std::make_shared<const DescriptionIndex>(fixture_index()));
  const std::string path = "/api/concepts/variational%20autoencoder/cards";
  const std::string expected = running.client().Get(path)->body;
  std::vector<std::string> bodies(8);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    threads.emplace_back([&, i] {
      auto c = running.client();
      for (int r = 0; r < 10; ++r) {
        auto res = c.Get(path);
        if (!res || res->body != expected) return;
      }
      bodies[i] = expected;
    });
  }
  for (auto &t : threads) t.join();
  for (const auto &b : bodies) CHECK(b == expected);
}

TEST_CASE("empty index still healthy") {
  Running running(std::make_shared<const DescriptionIndex>(DescriptionIndex::build({}, {})));
  auto res = running.client().Get("/api/health");
  REQUIRE(res);
  CHECK(json::parse(res->body)["concepts"] == 0);
}

}  // namespace
}  // namespace accord
