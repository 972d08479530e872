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

#ifndef ACCORD_PATTERNS_H_
#define ACCORD_PATTERNS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "accord/corpus.h"
#include "accord/relation.h"

// Hearst-style lexical patterns over a demarcated context. Shared by the
// rule extraction backend (which only needs to know what matched) and the
// template generator (which needs the recovered reference and elaboration).
namespace accord::patterns {

struct PatternMatch {
  RelationType relation = RelationType::kIsA;
  std::string pattern;    // e.g. "np-such-as-target"
  std::string reference;  // surface form as found in the context, lowercase
  // Elaboration phrased for the relation's template, when one can be
  // recovered from the context.
  std::optional<std::string> elaboration;
};

// Every pattern that fires, in a fixed order (IsA, Compare, PartOf,
// UsedFor; within a relation in declaration order). The lexicon supplies
// the other concepts a target may be coordinated with.
std::vector<PatternMatch> match_patterns(const DemarcatedContext &context,
                                         const Lexicon &lexicon);

// Words that end a noun chunk.
bool is_chunk_stop(std::string_view word);
// Determiners and quantifiers dropped from the front of a chunk.
bool is_determiner(std::string_view word);

struct Chunk {
  std::string text;      // lowercase, single-spaced
  std::size_t end = 0;   // offset just past the chunk in the scanned string
  std::size_t begin = 0;
};

// Shallow noun chunk starting at `pos`: the longest run of words up to a
// stop word or punctuation, with leading determiners dropped.
std::optional<Chunk> chunk_after(std::string_view s, std::size_t pos);

// Same, scanning leftwards from `pos` (exclusive).
std::optional<Chunk> chunk_before(std::string_view s, std::size_t pos);

// Singular-subject agreement for a predicate's leading auxiliary
// ("have made" -> "has made").
std::string singular_agreement(std::string_view predicate);

}  // namespace accord::patterns

#endif  // ACCORD_PATTERNS_H_
