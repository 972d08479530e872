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

#ifndef ACCORD_SERVICE_H_
#define ACCORD_SERVICE_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "accord/relation.h"
#include "accord/selection.h"
#include "accord/text.h"
#include "json.hpp"

namespace httplib {
class Server;
}

// Read-only description index and the HTTP exploration API over it.
namespace accord {

// Half-open byte range into its owning string.
struct HighlightSpan {
  std::size_t char_start = 0;
  std::size_t char_end = 0;

  bool operator==(const HighlightSpan &) const = default;
};

struct SharedSpans {
  std::vector<HighlightSpan> description;
  std::vector<HighlightSpan> context;

  bool operator==(const SharedSpans &) const = default;
};

// Highlight tokenization: whitespace-separated pieces with leading and
// trailing punctuation stripped, compared lowercase.
std::vector<text::Token> highlight_tokens(std::string_view s);

// Common token runs of at least min_tokens tokens, chosen greedily longest
// first among tokens not yet highlighted, mapped back to byte offsets. Ties
// go to the lexicographically smaller run, then the earliest description
// token, then the earliest context token. Spans in each list are sorted and
// non-overlapping.
SharedSpans shared_spans(std::string_view description, std::string_view context,
                         int min_tokens = 3);

// Where a description came from.
struct Provenance {
  std::string context_id;
  std::string text;
  std::string paper_id;
  std::string title;
  std::optional<std::string> url;

  bool operator==(const Provenance &) const = default;
};

struct Card {
  std::string description_id;
  std::string text;
  RelationType relation = RelationType::kIsA;
  std::string reference;
  Provenance provenance;
  SharedSpans highlights;
};

struct CardGroup {
  RelationType relation = RelationType::kIsA;
  std::vector<Card> cards;
};

inline const std::vector<RelationType> kDefaultCardRelations = {RelationType::kCompare,
                                                               RelationType::kIsA};

class DescriptionIndex {
 public:
  // Throws InputError naming every entry whose context_id has no
  // provenance, or a target that appears in more than one set.
  static DescriptionIndex build(const std::vector<DescriptionSet> &sets,
                                const std::vector<Provenance> &provenance,
                                int min_tokens = 3);

  const std::vector<std::string> &concepts() const { return concepts_; }
  bool contains(std::string_view term) const;

  // Cards in set order; throws NotFound for an unknown concept.
  const std::vector<Card> &cards_for(std::string_view term) const;

 private:
  std::vector<std::string> concepts_;  // sorted
  std::map<std::string, std::vector<Card>, std::less<>> cards_;
};

DescriptionIndex build_index(const std::string &sets_path,
                             const std::string &provenance_path);

// Case-insensitive prefix search; an empty prefix lists every concept.
std::vector<std::string> query_concepts(const DescriptionIndex &index, std::string_view q);

// Cards grouped by relation in `relations` order, at most k per group;
// relations without cards produce no group. Throws NotFound.
std::vector<CardGroup> get_cards(const DescriptionIndex &index, std::string_view term,
                                 const std::vector<RelationType> &relations =
                                     kDefaultCardRelations,
                                 int k = 3);

nlohmann::json cards_to_json(std::string_view target, const std::vector<CardGroup> &groups);

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks an ephemeral port
  std::optional<std::string> static_dir;  // built UI bundle served under "/"
};

// Owns an httplib server wired to the API routes. The index is shared
// read-only between handler threads.
class ApiServer {
 public:
  ApiServer(std::shared_ptr<const DescriptionIndex> index, ServerOptions options);
  ~ApiServer();
  ApiServer(const ApiServer &) = delete;
  ApiServer &operator=(const ApiServer &) = delete;

  // Binds and returns the port actually bound. Throws Error on failure.
  int bind();
  // Serves until stop(); call after bind().
  void serve();
  void stop();
  int port() const { return port_; }

 private:
  std::shared_ptr<const DescriptionIndex> index_;
  ServerOptions options_;
  std::unique_ptr<httplib::Server> server_;
  int port_ = -1;
};

}  // namespace accord

#endif  // ACCORD_SERVICE_H_
