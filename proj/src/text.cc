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

#include "accord/text.h"

#include <algorithm>
#include <cctype>

namespace accord::text {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_word_char(char c) {
  // Non-ASCII bytes are treated as letters so UTF-8 words stay whole.
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || u >= 0x80;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : trim(s)) {
    if (is_space(c)) {
      pending = true;
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

bool at_word_boundary(std::string_view s, std::size_t start, std::size_t end) {
  if (start > 0 && is_word_char(s[start - 1]) && is_word_char(s[start])) {
    return false;
  }
  if (end < s.size() && end > 0 && is_word_char(s[end]) &&
      is_word_char(s[end - 1])) {
    return false;
  }
  return true;
}

std::vector<Token> words(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    if (!is_word_char(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n) {
      if (is_word_char(s[j])) {
        ++j;
      } else if ((s[j] == '-' || s[j] == '\'' || s[j] == '.') && j + 1 < n &&
                 is_word_char(s[j + 1])) {
        ++j;
      } else {
        break;
      }
    }
    out.push_back({std::string(s.substr(i, j - i)), i, j});
    i = j;
  }
  return out;
}

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string singularize(std::string_view word) {
  std::string w(word);
  if (w.size() <= 3) return w;
  if (ends_with(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (ends_with(w, "sses") || ends_with(w, "xes") || ends_with(w, "ches") ||
      ends_with(w, "shes")) {
    return w.substr(0, w.size() - 2);
  }
  if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is") ||
      ends_with(w, "as")) {
    return w;
  }
  if (ends_with(w, "s")) return w.substr(0, w.size() - 1);
  return w;
}

std::string normalize_concept(std::string_view phrase) {
  std::string p = collapse_whitespace(to_lower(phrase));
  const auto cut = p.find_last_of(' ');
  if (cut == std::string::npos) return singularize(p);
  return p.substr(0, cut + 1) + singularize(std::string_view(p).substr(cut + 1));
}

namespace {

// End of a match at [start, end) including an optional plural suffix, or
// npos when the match is glued to following word characters.
std::size_t match_end(std::string_view hay, std::size_t end) {
  if (end >= hay.size() || !is_word_char(hay[end])) return end;
  for (std::string_view suf : {"s", "es"}) {
    const std::size_t e = end + suf.size();
    if (hay.substr(end, suf.size()) == suf &&
        (e == hay.size() || !is_word_char(hay[e]))) {
      return e;
    }
  }
  return std::string_view::npos;
}

}  // namespace

std::size_t count_occurrences(std::string_view hay_in, std::string_view needle_in) {
  const std::string hay = to_lower(hay_in);
  const std::string needle = to_lower(trim(needle_in));
  if (needle.empty()) return 0;
  std::size_t count = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + 1)) {
    if (pos > 0 && is_word_char(hay[pos - 1]) && is_word_char(hay[pos])) continue;
    if (match_end(hay, pos + needle.size()) == std::string_view::npos) continue;
    ++count;
  }
  return count;
}

bool contains_phrase(std::string_view hay, std::string_view needle) {
  return count_occurrences(hay, needle) > 0;
}

std::string strip_brackets(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '[') {
      ++depth;
      continue;
    }
    if ((c == ')' || c == ']') && depth > 0) {
      --depth;
      continue;
    }
    if (depth == 0) out.push_back(c);
  }
  std::string collapsed = collapse_whitespace(out);
  std::string tidy;
  tidy.reserve(collapsed.size());
  for (std::size_t i = 0; i < collapsed.size(); ++i) {
    const char c = collapsed[i];
    if (c == ' ' && i + 1 < collapsed.size() &&
        (collapsed[i + 1] == ',' || collapsed[i + 1] == '.' ||
         collapsed[i + 1] == ';' || collapsed[i + 1] == ':')) {
      continue;
    }
    // Collapse ",," left behind by removed citation groups.
    if (c == ',' && !tidy.empty() && tidy.back() == ',') continue;
    tidy.push_back(c);
  }
  return tidy;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string join(const std::vector<std::string> &parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

}  // namespace accord::text
