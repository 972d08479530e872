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

// Reference implementations shared by the unit tests and the acceptance
// runner. They are written from the documented rules, not from the library.

#ifndef ACCORD_TESTS_ORACLES_H_
#define ACCORD_TESTS_ORACLES_H_

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "accord/selection.h"
#include "accord/service.h"

namespace accord::oracle {

struct Tok {
  std::string norm;
  std::size_t start, end;
};

// Tokenizer written from the normalization rule: split on whitespace, trim
// punctuation at both ends, lowercase.
inline std::vector<Tok> oracle_tokens(const std::string &s) {
  auto word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || (c & 0x80); };
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    std::size_t b = i, e = j;
    while (b < e && !word(s[b])) ++b;
    while (e > b && !word(s[e - 1])) --e;
    if (b < e) {
      std::string n = s.substr(b, e - b);
      for (auto &c : n) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      out.push_back({n, b, e});
    }
    i = j;
  }
  return out;
}

// Greedy runs from a fresh suffix-run DP table each round.
inline SharedSpans dp_spans(const std::string &a, const std::string &b, int min_tokens) {
  const auto x = oracle_tokens(a), y = oracle_tokens(b);
  std::vector<bool> ux(x.size()), uy(y.size());
  SharedSpans out;
  for (;;) {
    std::vector<std::vector<int>> run(x.size() + 1, std::vector<int>(y.size() + 1, 0));
    for (std::size_t i = x.size(); i-- > 0;) {
      for (std::size_t j = y.size(); j-- > 0;) {
        if (!ux[i] && !uy[j] && x[i].norm == y[j].norm) run[i][j] = run[i + 1][j + 1] + 1;
      }
    }
    // Longest first; equal lengths by token content, then position.
    int best = 0;
    std::size_t bi = 0, bj = 0;
    std::vector<std::string> best_text;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (run[i][j] == 0 || run[i][j] < best) continue;
        std::vector<std::string> text;
        for (int t = 0; t < run[i][j]; ++t) text.push_back(x[i + t].norm);
        if (run[i][j] > best || text < best_text) {
          best = run[i][j], bi = i, bj = j, best_text = text;
        }
      }
    }
    if (best < std::max(min_tokens, 1)) break;
    for (int t = 0; t < best; ++t) ux[bi + t] = uy[bj + t] = true;
    out.description.push_back({x[bi].start, x[bi + best - 1].end});
    out.context.push_back({y[bj].start, y[bj + best - 1].end});
  }
  auto by_start = [](const HighlightSpan &p, const HighlightSpan &q) {
    return p.char_start < q.char_start;
  };
  std::sort(out.description.begin(), out.description.end(), by_start);
  std::sort(out.context.begin(), out.context.end(), by_start);
  return out;
}

// Reference ranking by counting, then repeated selection of the best
// remaining key: more records, then higher best score, then smaller key.
// Assumes references are already in key form.
inline std::vector<std::string> rank_brute(const std::vector<DescriptionRecord> &descs,
                                           const std::string &target, RelationType relation,
                                           int k) {
  std::vector<std::string> keys;
  for (const auto &d : descs) {
    if (d.target != target || d.relation != relation) continue;
    if (std::find(keys.begin(), keys.end(), d.reference) == keys.end()) {
      keys.push_back(d.reference);
    }
  }
  auto count = [&](const std::string &key) {
    int n = 0;
    for (const auto &d : descs) {
      n += d.target == target && d.relation == relation && d.reference == key;
    }
    return n;
  };
  auto best = [&](const std::string &key) {
    double m = -1e300;
    for (const auto &d : descs) {
      if (d.target == target && d.relation == relation && d.reference == key) {
        m = std::max(m, d.score);
      }
    }
    return m;
  };
  std::vector<std::string> out;
  while (static_cast<int>(out.size()) < k && !keys.empty()) {
    std::size_t pick = 0;
    for (std::size_t i = 1; i < keys.size(); ++i) {
      const int ci = count(keys[i]), cp = count(keys[pick]);
      const double bi = best(keys[i]), bp = best(keys[pick]);
      if (ci > cp || (ci == cp && (bi > bp || (bi == bp && keys[i] < keys[pick])))) pick = i;
    }
    out.push_back(keys[pick]);
    keys.erase(keys.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

}  // namespace accord::oracle

#endif  // ACCORD_TESTS_ORACLES_H_
