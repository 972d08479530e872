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

#include "accord/service.h"

#include <algorithm>
#include <set>

#include "accord/error.h"
#include "accord/io.h"
#include "httplib.h"

namespace accord {

std::vector<text::Token> highlight_tokens(std::string_view s) {
  std::vector<text::Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && text::is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !text::is_space(s[j])) ++j;
    std::size_t b = i, e = j;
    while (b < e && !text::is_word_char(s[b])) ++b;
    while (e > b && !text::is_word_char(s[e - 1])) --e;
    if (b < e) out.push_back({text::to_lower(s.substr(b, e - b)), b, e});
    i = j;
  }
  return out;
}

namespace {

// Compares the runs of `len` tokens starting at i and j.
bool run_less(const std::vector<text::Token> &toks, std::size_t i, std::size_t j,
              std::size_t len) {
  for (std::size_t t = 0; t < len; ++t) {
    if (toks[i + t].text != toks[j + t].text) return toks[i + t].text < toks[j + t].text;
  }
  return false;
}

}  // namespace

SharedSpans shared_spans(std::string_view description, std::string_view context,
                         int min_tokens) {
  if (min_tokens < 1) throw InvalidArgument("min_tokens must be >= 1");
  const auto d = highlight_tokens(description);
  const auto c = highlight_tokens(context);
  std::vector<bool> used_d(d.size()), used_c(c.size());
  SharedSpans out;
  for (;;) {
    std::size_t bi = 0, bj = 0, best = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (used_d[i]) continue;
      for (std::size_t j = 0; j < c.size(); ++j) {
        std::size_t len = 0;
        while (i + len < d.size() && j + len < c.size() && !used_d[i + len] &&
               !used_c[j + len] && d[i + len].text == c[j + len].text) {
          ++len;
        }
        // Equal-length runs: the lexicographically smaller one wins, so the
        // choice does not depend on argument order.
        if (len > best || (len == best && len > 0 && run_less(d, i, bi, len))) {
          best = len, bi = i, bj = j;
        }
      }
    }
    if (best == 0 || best < static_cast<std::size_t>(min_tokens)) break;
    for (std::size_t t = 0; t < best; ++t) used_d[bi + t] = used_c[bj + t] = true;
    out.description.push_back({d[bi].start, d[bi + best - 1].end});
    out.context.push_back({c[bj].start, c[bj + best - 1].end});
  }
  auto by_start = [](const HighlightSpan &a, const HighlightSpan &b) {
    return a.char_start < b.char_start;
  };
  std::sort(out.description.begin(), out.description.end(), by_start);
  std::sort(out.context.begin(), out.context.end(), by_start);
  return out;
}

DescriptionIndex DescriptionIndex::build(const std::vector<DescriptionSet> &sets,
                                         const std::vector<Provenance> &provenance,
                                         int min_tokens) {
  std::map<std::string, const Provenance *> by_id;
  for (const auto &p : provenance) by_id.emplace(p.context_id, &p);

  std::set<std::string> dangling;
  for (const auto &s : sets) {
    for (const auto &e : s.entries) {
      if (!by_id.count(e.context_id)) dangling.insert(e.context_id);
    }
  }
  if (!dangling.empty()) {
    throw InputError("description entries reference unknown context_id(s): " +
                     text::join(std::vector<std::string>(dangling.begin(), dangling.end()),
                                ", "));
  }

  DescriptionIndex index;
  for (const auto &s : sets) {
    auto [it, inserted] = index.cards_.try_emplace(s.target);
    if (!inserted) throw InputError("target '" + s.target + "' appears in more than one set");
    for (const auto &e : s.entries) {
      const Provenance &p = *by_id.at(e.context_id);
      it->second.push_back({e.description_id, e.text, e.relation, e.reference, p,
                            shared_spans(e.text, p.text, min_tokens)});
    }
    index.concepts_.push_back(s.target);
  }
  std::sort(index.concepts_.begin(), index.concepts_.end());
  return index;
}

bool DescriptionIndex::contains(std::string_view term) const {
  return cards_.find(term) != cards_.end();
}

const std::vector<Card> &DescriptionIndex::cards_for(std::string_view term) const {
  auto it = cards_.find(term);
  if (it == cards_.end()) throw NotFound("unknown concept '" + std::string(term) + "'");
  return it->second;
}

DescriptionIndex build_index(const std::string &sets_path, const std::string &provenance_path) {
  return DescriptionIndex::build(read_jsonl<DescriptionSet>(sets_path),
                                 read_jsonl<Provenance>(provenance_path));
}

std::vector<std::string> query_concepts(const DescriptionIndex &index, std::string_view q) {
  const std::string prefix = text::to_lower(q);
  std::vector<std::string> out;
  for (const auto &c : index.concepts()) {
    if (text::to_lower(c).compare(0, prefix.size(), prefix) == 0) out.push_back(c);
  }
  return out;
}

std::vector<CardGroup> get_cards(const DescriptionIndex &index, std::string_view term,
                                 const std::vector<RelationType> &relations, int k) {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  const auto &cards = index.cards_for(term);
  std::vector<CardGroup> out;
  for (RelationType r : relations) {
    CardGroup g{r, {}};
    for (const auto &c : cards) {
      if (c.relation != r) continue;
      if (static_cast<int>(g.cards.size()) == k) break;
      g.cards.push_back(c);
    }
    if (!g.cards.empty()) out.push_back(std::move(g));
  }
  return out;
}

namespace {

nlohmann::json spans_json(const std::vector<HighlightSpan> &spans) {
  auto out = nlohmann::json::array();
  for (const auto &s : spans) out.push_back({s.char_start, s.char_end});
  return out;
}

void send_json(httplib::Response &res, int status, const nlohmann::json &body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

}  // namespace

nlohmann::json cards_to_json(std::string_view target, const std::vector<CardGroup> &groups) {
  auto gs = nlohmann::json::array();
  for (const auto &g : groups) {
    auto cards = nlohmann::json::array();
    for (const auto &c : g.cards) {
      cards.push_back({{"text", c.text},
                       {"reference", c.reference},
                       {"context", c.provenance.text},
                       {"paper_url", c.provenance.url.value_or("")},
                       {"paper_title", c.provenance.title},
                       {"highlights",
                        {{"description", spans_json(c.highlights.description)},
                         {"context", spans_json(c.highlights.context)}}}});
    }
    gs.push_back({{"relation", relation_name(g.relation)}, {"cards", cards}});
  }
  return {{"target", target}, {"groups", gs}};
}

ApiServer::ApiServer(std::shared_ptr<const DescriptionIndex> index, ServerOptions options)
    : index_(std::move(index)),
      options_(std::move(options)),
      server_(std::make_unique<httplib::Server>()) {
  auto idx = index_;
  server_->Get("/api/health", [idx](const httplib::Request &, httplib::Response &res) {
    send_json(res, 200, {{"status", "ok"}, {"concepts", idx->concepts().size()}});
  });
  server_->Get("/api/concepts", [idx](const httplib::Request &req, httplib::Response &res) {
    const auto q = req.has_param("q") ? req.get_param_value("q") : std::string();
    send_json(res, 200, {{"concepts", query_concepts(*idx, q)}});
  });
  server_->Get(R"(/api/concepts/([^/]+)/cards)",
               [idx](const httplib::Request &req, httplib::Response &res) {
                 const std::string term = req.matches[1];  // path is already decoded
                 if (!idx->contains(term)) {
                   send_json(res, 404, {{"error", "unknown_concept"}});
                   return;
                 }
                 std::vector<RelationType> relations = kDefaultCardRelations;
                 int k = 3;
                 try {
                   if (req.has_param("relations")) {
                     relations.clear();
                     for (const auto &name :
                          text::split(req.get_param_value("relations"), ',')) {
                       relations.push_back(relation_from_name(text::trim(name)));
                     }
                   }
                   if (req.has_param("k")) k = std::stoi(req.get_param_value("k"));
                   if (k < 1) throw InvalidArgument("k must be >= 1");
                 } catch (const std::exception &e) {
                   send_json(res, 400, {{"error", "bad_request"}, {"detail", e.what()}});
                   return;
                 }
                 send_json(res, 200, cards_to_json(term, get_cards(*idx, term, relations, k)));
               });
  if (options_.static_dir && !server_->set_mount_point("/", *options_.static_dir)) {
    throw ConfigError("UI directory not found: " + *options_.static_dir);
  }
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind() {
  if (options_.port == 0) {
    port_ = server_->bind_to_any_port(options_.host);
  } else {
    port_ = server_->bind_to_port(options_.host, options_.port) ? options_.port : -1;
  }
  if (port_ < 0) {
    throw Error("cannot bind " + options_.host + ":" + std::to_string(options_.port));
  }
  return port_;
}

void ApiServer::serve() { server_->listen_after_bind(); }

void ApiServer::stop() {
  if (server_) server_->stop();
}

}  // namespace accord
