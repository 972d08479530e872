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

#ifndef ACCORD_TEXT_H_
#define ACCORD_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Small ASCII text helpers shared by the pipeline modules. All case folding
// is byte-wise ASCII so character offsets survive lowercasing.
namespace accord::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::string collapse_whitespace(std::string_view s);

bool is_word_char(char c);
bool is_space(char c);

// True when [start, end) of `s` is not glued to neighbouring word characters.
bool at_word_boundary(std::string_view s, std::size_t start, std::size_t end);

// A whitespace- or punctuation-delimited word with its byte range.
struct Token {
  std::string text;  // as it appears in the source
  std::size_t start = 0;
  std::size_t end = 0;
};

// Maximal runs of word characters, with intra-word hyphens, apostrophes and
// dots between word characters kept ("real-valued", "word2vec", "3.5").
std::vector<Token> words(std::string_view s);

// Singular form of an English noun by suffix rules ("autoencoders" ->
// "autoencoder", "taxonomies" -> "taxonomy", "analysis" unchanged).
std::string singularize(std::string_view word);

// Lowercases and singularizes the last word: "Deep Generative Models" ->
// "deep generative model".
std::string normalize_concept(std::string_view phrase);

// Counts case-insensitive, word-boundary occurrences of `needle` in `hay`,
// also accepting a plural "s"/"es" directly after the match.
std::size_t count_occurrences(std::string_view hay, std::string_view needle);

// Case-insensitive word-boundary containment with the same plural tolerance.
bool contains_phrase(std::string_view hay, std::string_view needle);

// Removes [...] and (...) groups, then tidies the spacing they leave behind
// (" ," -> ",", double spaces).
std::string strip_brackets(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string> &parts, std::string_view sep);

}  // namespace accord::text

#endif  // ACCORD_TEXT_H_
