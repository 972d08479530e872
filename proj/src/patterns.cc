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

#include "accord/patterns.h"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <unordered_set>

#include "accord/text.h"

namespace accord::patterns {

namespace {

const std::unordered_set<std::string_view> &chunk_stops() {
  static const std::unordered_set<std::string_view> kStops = {
      "that",    "which",   "who",     "whom",   "whose",  "where",  "when",
      "while",   "in",      "since",   "to",     "for",    "with",   "by",
      "from",    "on",      "at",      "as",     "and",    "or",     "but",
      "because", "is",      "are",     "was",    "were",   "be",     "been",
      "being",   "has",     "have",    "had",    "can",    "could",  "will",
      "would",   "may",     "might",   "should", "must",   "do",     "does",
      "did",     "than",    "into",    "through", "via",   "within", "without",
      "across",  "due",     "after",   "before", "during", "under",  "over",
      "between", "among",   "using",   "used",   "although", "though", "if",
      "so",      "of",      "also",    "not",    "like",   "including", "along",
      "until",   "we",      "they",    "it",     "he",     "she",    "then",
      "e.g",     "i.e",     "etc",     "very",   "more",   "less"};
  return kStops;
}

const std::unordered_set<std::string_view> &determiners() {
  static const std::unordered_set<std::string_view> kDet = {
      "a",     "an",    "the",   "some",  "such",    "these", "those",
      "this",  "many",  "other", "several", "various", "most", "all",
      "both",  "their", "its",   "our",   "any",     "each",  "every",
      "another", "certain", "numerous", "few", "recent", "existing"};
  return kDet;
}

// Auxiliaries and modals that open a finite predicate.
const std::unordered_set<std::string_view> &verb_cues() {
  static const std::unordered_set<std::string_view> kVerbs = {
      "is",  "are",   "was",   "were", "has",   "have",   "had",
      "can", "could", "may",   "might", "will", "would",  "should",
      "must", "do",   "does",  "did",  "tend",  "tends"};
  return kVerbs;
}

const std::unordered_set<std::string_view> &subordinators() {
  static const std::unordered_set<std::string_view> kSub = {
      "since", "because", "due",    "when",   "while", "through", "by",
      "after", "before",  "during", "until",  "as",    "in",      "with",
      "without"};
  return kSub;
}

bool word_char(char c) { return text::is_word_char(c); }

// Reads the word starting at `i` (which must be a word character) using the
// same joining rules as text::words.
std::size_t word_end(std::string_view s, std::size_t i) {
  std::size_t j = i;
  while (j < s.size()) {
    if (word_char(s[j])) {
      ++j;
    } else if ((s[j] == '-' || s[j] == '\'' || s[j] == '.') && j + 1 < s.size() &&
               word_char(s[j + 1]) && j > i) {
      ++j;
    } else {
      break;
    }
  }
  return j;
}

std::size_t word_start(std::string_view s, std::size_t end) {
  std::size_t i = end;
  while (i > 0) {
    if (word_char(s[i - 1])) {
      --i;
    } else if ((s[i - 1] == '-' || s[i - 1] == '\'' || s[i - 1] == '.') && i >= 2 &&
               word_char(s[i - 2]) && i < end) {
      --i;
    } else {
      break;
    }
  }
  return i;
}

std::size_t skip_spaces(std::string_view s, std::size_t i) {
  while (i < s.size() && text::is_space(s[i])) ++i;
  return i;
}

std::size_t skip_spaces_back(std::string_view s, std::size_t i) {
  while (i > 0 && text::is_space(s[i - 1])) --i;
  return i;
}

// Collapses the blank runs left by removed bracket groups and the stray
// spaces before punctuation; drops trailing sentence punctuation.
std::string tidy(std::string_view s) {
  std::string c = text::collapse_whitespace(s);
  std::string out;
  out.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == ' ' && i + 1 < c.size() &&
        (c[i + 1] == ',' || c[i + 1] == '.' || c[i + 1] == ';' || c[i + 1] == ':')) {
      continue;
    }
    if (c[i] == ',' && !out.empty() && out.back() == ',') continue;
    out.push_back(c[i]);
  }
  while (!out.empty() && (out.back() == '.' || out.back() == ',' ||
                          out.back() == ';' || out.back() == ' ')) {
    out.pop_back();
  }
  std::size_t b = 0;
  while (b < out.size() && (out[b] == ',' || out[b] == ' ')) ++b;
  return out.substr(b);
}

// Does `phrase` start at `pos` (after optional spaces) on word boundaries?
// Returns the end offset.
std::optional<std::size_t> phrase_at(std::string_view s, std::size_t pos,
                                     std::string_view phrase) {
  const std::size_t p = skip_spaces(s, pos);
  if (s.substr(p, phrase.size()) != phrase) return std::nullopt;
  const std::size_t e = p + phrase.size();
  if (e < s.size() && word_char(s[e]) && word_char(phrase.back())) return std::nullopt;
  return e;
}

// First word-boundary occurrence of `phrase` in s[from, to).
std::optional<std::size_t> find_phrase(std::string_view s, std::size_t from,
                                       std::size_t to, std::string_view phrase) {
  for (auto p = s.find(phrase, from); p != std::string_view::npos && p + phrase.size() <= to;
       p = s.find(phrase, p + 1)) {
    if (text::at_word_boundary(s, p, p + phrase.size())) return p;
  }
  return std::nullopt;
}

// Last occurrence ending at or before `to`.
std::optional<std::size_t> rfind_phrase(std::string_view s, std::size_t from,
                                        std::size_t to, std::string_view phrase) {
  std::optional<std::size_t> best;
  for (auto p = find_phrase(s, from, to, phrase); p;
       p = find_phrase(s, *p + 1, to, phrase)) {
    best = p;
  }
  return best;
}

std::vector<std::string> words_of(std::string_view s) {
  std::vector<std::string> out;
  for (auto &t : text::words(s)) out.push_back(std::move(t.text));
  return out;
}

bool has_verb_cue(const std::vector<std::string> &ws) {
  return std::any_of(ws.begin(), ws.end(),
                     [](const std::string &w) { return verb_cues().count(w) > 0; });
}

// Replaces matched ()/[] groups that do not contain [keep_b, keep_e) with
// spaces, preserving offsets.
std::string blank_brackets(std::string_view s, std::size_t keep_b, std::size_t keep_e) {
  std::string out(s);
  std::vector<std::pair<char, std::size_t>> stack;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') {
      stack.emplace_back(c, i);
    } else if (c == ')' || c == ']') {
      const char open = c == ')' ? '(' : '[';
      for (std::size_t k = stack.size(); k-- > 0;) {
        if (stack[k].first != open) continue;
        const std::size_t b = stack[k].second;
        stack.resize(k);
        const bool holds_target = b < keep_b && keep_e <= i;
        if (!holds_target) {
          for (std::size_t j = b; j <= i; ++j) out[j] = ' ';
        }
        break;
      }
    }
  }
  return out;
}

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
};

// Analysis of one demarcated context.
struct Scene {
  std::string plain;    // markers removed, original case
  std::string b;        // lowercase, bracket groups blanked
  Span target;
  Span sentence;        // sentence holding the target
  std::vector<Span> sentences;
  std::vector<ConceptMention> others;  // lexicon mentions besides the target
};

Scene make_scene(const DemarcatedContext &ctx, const Lexicon &lexicon) {
  Scene sc;
  const auto span = target_span(ctx);
  sc.plain = strip_markers(ctx.text_with_markers);
  sc.target = {span.start, span.end};
  sc.b = blank_brackets(text::to_lower(sc.plain), span.start, span.end);
  for (const auto &s : split_sentences(sc.plain)) {
    sc.sentences.push_back({s.char_start, s.char_end});
  }
  sc.sentence = {0, sc.plain.size()};
  for (const auto &s : sc.sentences) {
    if (s.start <= span.start && span.start < s.end) sc.sentence = s;
  }
  for (auto &m : match_concepts(sc.plain, lexicon)) {
    if (m.char_start < span.end && span.start < m.char_end) continue;
    if (text::normalize_concept(m.term) ==
        text::normalize_concept(ctx.target_concept)) {
      continue;
    }
    // Mentions inside blanked citation groups are not part of the prose.
    if (sc.b[m.char_start] == ' ') continue;
    sc.others.push_back(std::move(m));
  }
  return sc;
}

// Comma-delimited structure of a list region [from, to): where the list of
// coordinated items stops and the governing predicate (if any) begins.
struct ListInfo {
  std::size_t list_end = 0;
  std::optional<std::size_t> predicate_start;
  bool all_items = true;  // every segment looked like a list item
};

ListInfo analyze_list(std::string_view b, std::size_t from, std::size_t to) {
  ListInfo info;
  info.list_end = to;
  std::size_t seg_start = from;
  while (seg_start < to) {
    std::size_t seg_end = b.find(',', seg_start);
    if (seg_end == std::string_view::npos || seg_end > to) seg_end = to;
    const auto seg = b.substr(seg_start, seg_end - seg_start);
    const auto toks = text::words(seg);
    if (!toks.empty()) {
      std::vector<std::string> ws;
      for (const auto &t : toks) ws.push_back(t.text);
      const bool coordinated = ws.front() == "and" || ws.front() == "or";
      const bool verb = has_verb_cue(ws);
      const bool item = !verb && (coordinated || (ws.size() <= 6 &&
                                                  subordinators().count(ws.front()) == 0));
      if (!item) {
        info.all_items = false;
        std::size_t p = seg_start + toks.front().start;
        if (!coordinated || verb) {
          for (const auto &t : toks) {
            if (verb_cues().count(t.text)) {
              p = seg_start + t.start;
              break;
            }
          }
          // A segment opened by a subordinator is an adjunct, not a predicate.
          if (!verb && subordinators().count(ws.front())) {
            info.list_end = seg_start;
            return info;
          }
          info.predicate_start = p;
        }
        info.list_end = seg_start;
        return info;
      }
    }
    seg_start = seg_end + 1;
  }
  return info;
}

std::optional<std::string> predicate_text(const Scene &sc, const ListInfo &li) {
  if (!li.predicate_start) return std::nullopt;
  std::string p = tidy(std::string_view(sc.b).substr(
      *li.predicate_start, sc.sentence.end - *li.predicate_start));
  if (p.empty()) return std::nullopt;
  return p;
}

// "that ..." clause for a singular subject, turning a "for" purpose into the
// canonical "that is used for ..." form.
std::string isa_elaboration(const std::string &predicate) {
  const auto ws = text::words(predicate);
  for (const auto &w : ws) {
    if (w.text == "for" && w.end < predicate.size()) {
      const auto rest = text::trim(std::string_view(predicate).substr(w.end));
      if (!rest.empty()) return "that is used for " + std::string(rest);
    }
  }
  return "that " + singular_agreement(predicate);
}

struct ListCue {
  std::string_view phrase;
  std::size_t start = 0;
  std::size_t end = 0;
};

// Nearest list-introducing cue left of the target within its sentence such
// that only list items sit between the cue and the target.
std::optional<ListCue> list_cue(const Scene &sc,
                                 std::initializer_list<std::string_view> cues) {
  std::optional<ListCue> best;
  for (auto cue : cues) {
    auto p = rfind_phrase(sc.b, sc.sentence.start, sc.target.start, cue);
    if (!p) continue;
    if (best && best->start > *p) continue;
    best = ListCue{cue, *p, *p + cue.size()};
  }
  if (!best) return std::nullopt;
  const auto between = analyze_list(sc.b, best->end, sc.target.start);
  if (!between.all_items) return std::nullopt;
  return best;
}

// Noun phrase governing a list cue, e.g. "deep generative models" in
// "deep generative models, such as ...".
std::optional<Chunk> hypernym_before(const Scene &sc, std::size_t cue_start) {
  std::size_t p = skip_spaces_back(sc.b, cue_start);
  if (p > sc.sentence.start && sc.b[p - 1] == ',') --p;
  if (p <= sc.sentence.start) return std::nullopt;
  auto c = chunk_before(std::string_view(sc.b).substr(0, p), p);
  if (!c || c->begin < sc.sentence.start) return std::nullopt;
  // "generative models in combination with neural networks, such as x":
  // the hypernym is the head phrase, not the accompanying one.
  const std::size_t q = skip_spaces_back(sc.b, c->begin);
  for (std::string_view joint : {"in combination with", "combined with", "together with"}) {
    if (q < joint.size() + sc.sentence.start) continue;
    if (text::to_lower(sc.b.substr(q - joint.size(), joint.size())) != joint) continue;
    const std::size_t r = skip_spaces_back(sc.b, q - joint.size());
    auto head = chunk_before(std::string_view(sc.b).substr(0, r), r);
    if (head && head->begin >= sc.sentence.start) return head;
  }
  return c;
}

std::string surface(const Scene &sc, const ConceptMention &m) {
  return text::to_lower(sc.plain.substr(m.char_start, m.char_end - m.char_start));
}

// --- IsA -------------------------------------------------------------------

void isa_patterns(const Scene &sc, std::vector<PatternMatch> &out) {
  const std::string_view b = sc.b;
  // <target> is a/an <NP> ...
  for (std::string_view cue : {"is a", "is an"}) {
    auto e = phrase_at(b, sc.target.end, cue);
    if (!e) continue;
    if (phrase_at(b, *e, "component of") || phrase_at(b, *e, "part of")) break;
    auto chunk = chunk_after(b.substr(0, sc.sentence.end), *e);
    if (!chunk) break;
    PatternMatch m{RelationType::kIsA, "target-is-a-np", chunk->text, std::nullopt};
    auto rest = tidy(b.substr(chunk->end, sc.sentence.end - chunk->end));
    if (!rest.empty()) m.elaboration = rest;
    out.push_back(std::move(m));
    break;
  }
  // <NP> such as <target>  /  <NP>, including <target>
  for (auto [cue, name] : {std::pair<std::string_view, std::string_view>{
                               "such as", "np-such-as-target"},
                           {"including", "np-including-target"}}) {
    auto lc = list_cue(sc, {cue});
    if (!lc) continue;
    auto hyp = hypernym_before(sc, lc->start);
    if (!hyp) continue;
    PatternMatch m{RelationType::kIsA, std::string(name), hyp->text, std::nullopt};
    const auto li = analyze_list(b, sc.target.end, sc.sentence.end);
    if (auto pred = predicate_text(sc, li)) m.elaboration = isa_elaboration(*pred);
    out.push_back(std::move(m));
  }
  // <target>, a <NP> ...
  for (std::string_view cue : {", a", ", an"}) {
    const std::size_t p = skip_spaces(b, sc.target.end);
    if (b.substr(p, cue.size()) != cue || p + cue.size() >= b.size() ||
        !text::is_space(b[p + cue.size()])) {
      continue;
    }
    auto chunk = chunk_after(b.substr(0, sc.sentence.end), p + cue.size());
    if (!chunk) continue;
    PatternMatch m{RelationType::kIsA, "target-appositive-np", chunk->text, std::nullopt};
    auto rest = tidy(b.substr(chunk->end, sc.sentence.end - chunk->end));
    if (!rest.empty()) m.elaboration = rest;
    out.push_back(std::move(m));
    break;
  }
}

// --- Compare ---------------------------------------------------------------

void compare_patterns(const Scene &sc, std::vector<PatternMatch> &out) {
  const std::string_view b = sc.b;
  // Target coordinated with another lexicon concept in a list.
  if (auto lc = list_cue(sc, {"such as", "including", "like"})) {
    const auto li = analyze_list(b, sc.target.end, sc.sentence.end);
    const ConceptMention *after = nullptr;
    const ConceptMention *before = nullptr;
    for (const auto &m : sc.others) {
      if (m.char_start >= sc.target.end && m.char_start < li.list_end && !after) {
        after = &m;
      }
      if (m.char_start >= lc->end && m.char_end <= sc.target.start) before = &m;
    }
    const ConceptMention *ref = after ? after : before;
    if (ref) {
      PatternMatch m{RelationType::kCompare, "coordinated-list", surface(sc, *ref),
                     std::nullopt};
      auto hyp = hypernym_before(sc, lc->start);
      auto pred = predicate_text(sc, li);
      if (hyp || pred) {
        std::string e = "they are both";
        if (hyp) e += " " + hyp->text;
        if (pred) e += std::string(hyp ? " that " : " ") + *pred;
        m.elaboration = e;
      }
      out.push_back(std::move(m));
    }
  }
  // <target> and <concept> are both ...
  if (auto e = phrase_at(b, sc.target.end, "and")) {
    const std::size_t p = skip_spaces(b, *e);
    for (const auto &m : sc.others) {
      if (m.char_start != p) continue;
      if (auto both = phrase_at(b, m.char_end, "are both")) {
        PatternMatch pm{RelationType::kCompare, "target-and-np-are-both",
                        surface(sc, m), std::nullopt};
        auto rest = tidy(b.substr(*both, sc.sentence.end - *both));
        if (!rest.empty()) pm.elaboration = "they are both " + rest;
        out.push_back(std::move(pm));
      }
      break;
    }
  }
  // <target> is like / is similar to <NP> ...
  for (std::string_view cue : {"is like", "is similar to"}) {
    auto e = phrase_at(b, sc.target.end, cue);
    if (!e) continue;
    auto chunk = chunk_after(b.substr(0, sc.sentence.end), *e);
    if (!chunk) continue;
    PatternMatch m{RelationType::kCompare, "target-is-like-np", chunk->text, std::nullopt};
    std::size_t r = chunk->end;
    if (auto in_that = phrase_at(b, r, "in that")) r = *in_that;
    auto rest = tidy(b.substr(r, sc.sentence.end - r));
    if (!rest.empty()) m.elaboration = rest;
    out.push_back(std::move(m));
    break;
  }
}

// --- PartOf ----------------------------------------------------------------

void part_of_patterns(const Scene &sc, std::vector<PatternMatch> &out) {
  const std::string_view b = sc.b;
  std::optional<std::size_t> cue_end;
  for (std::string_view cue : {"component of", "part of"}) {
    if (auto p = find_phrase(b, sc.target.end, sc.sentence.end, cue)) {
      if (!cue_end || *p + cue.size() < *cue_end) cue_end = *p + cue.size();
    }
  }
  if (cue_end) {
    if (auto chunk = chunk_after(b.substr(0, sc.sentence.end), *cue_end)) {
      PatternMatch m{RelationType::kPartOf, "target-part-of-np", chunk->text,
                     std::nullopt};
      auto rest = tidy(b.substr(chunk->end, sc.sentence.end - chunk->end));
      if (!rest.empty()) m.elaboration = rest;
      out.push_back(std::move(m));
    }
  }
  for (std::string_view cue : {"consists of", "consist of", "composed of"}) {
    auto p = rfind_phrase(b, sc.sentence.start, sc.target.start, cue);
    if (!p) continue;
    auto whole = chunk_before(b.substr(0, *p), skip_spaces_back(b, *p));
    if (!whole || whole->begin < sc.sentence.start) continue;
    const auto li = analyze_list(b, sc.target.end, sc.sentence.end);
    std::vector<std::string> siblings;
    for (const auto &m : sc.others) {
      if (m.char_start >= *p + cue.size() && m.char_start < li.list_end) {
        siblings.push_back(surface(sc, m));
      }
    }
    PatternMatch m{RelationType::kPartOf, "np-consists-of-target", whole->text,
                   std::nullopt};
    if (!siblings.empty()) m.elaboration = "along with " + text::join(siblings, " and ");
    out.push_back(std::move(m));
    break;
  }
}

// --- UsedFor ---------------------------------------------------------------

void used_for_patterns(const Scene &sc, std::vector<PatternMatch> &out) {
  const std::string_view b = sc.b;
  // The cue may sit in the target's sentence or the one after it
  // ("X is ... . it has been used for ...").
  std::size_t limit = sc.sentence.end;
  for (std::size_t i = 0; i + 1 < sc.sentences.size(); ++i) {
    if (sc.sentences[i].start == sc.sentence.start) limit = sc.sentences[i + 1].end;
  }
  std::optional<std::size_t> cue_start;
  std::size_t cue_len = 0;
  for (std::string_view cue : {"used for", "utilized for", "applied to", "employed for"}) {
    if (auto p = find_phrase(b, sc.target.end, limit, cue)) {
      if (!cue_start || *p < *cue_start) {
        cue_start = p;
        cue_len = cue.size();
      }
    }
  }
  if (!cue_start) return;
  const std::size_t cue_end = *cue_start + cue_len;
  Span cue_sentence = sc.sentence;
  for (const auto &s : sc.sentences) {
    if (s.start <= *cue_start && *cue_start < s.end) cue_sentence = s;
  }
  std::string reference;
  std::size_t ref_end = 0;
  for (const auto &m : sc.others) {
    if (m.char_start < cue_end || m.char_start >= cue_sentence.end) continue;
    if (has_verb_cue(words_of(b.substr(cue_end, m.char_start - cue_end)))) break;
    reference = surface(sc, m);
    ref_end = m.char_end;
    break;
  }
  if (reference.empty()) {
    auto chunk = chunk_after(b.substr(0, cue_sentence.end), cue_end);
    if (!chunk) return;
    reference = chunk->text;
    ref_end = chunk->end;
  }
  PatternMatch m{RelationType::kUsedFor, "target-used-for-np", reference, std::nullopt};
  // Trailing adjunct of the cue's sentence, e.g. "since the introduction of
  // word2vec software".
  std::size_t seg = ref_end;
  std::optional<std::string> adjunct;
  while (seg < cue_sentence.end) {
    std::size_t next = b.find(',', seg);
    if (next == std::string_view::npos || next > cue_sentence.end) next = cue_sentence.end;
    const auto ws = words_of(b.substr(seg, next - seg));
    if (!ws.empty() && subordinators().count(ws.front())) {
      adjunct = tidy(b.substr(seg, cue_sentence.end - seg));
    }
    seg = next + 1;
  }
  if (adjunct && !adjunct->empty()) m.elaboration = adjunct;
  out.push_back(std::move(m));
}

}  // namespace

bool is_chunk_stop(std::string_view word) { return chunk_stops().count(word) > 0; }

bool is_determiner(std::string_view word) { return determiners().count(word) > 0; }

std::optional<Chunk> chunk_after(std::string_view s, std::size_t pos) {
  std::vector<std::pair<std::size_t, std::size_t>> taken;
  std::size_t i = pos;
  while (true) {
    i = skip_spaces(s, i);
    if (i >= s.size() || !word_char(s[i])) break;
    const std::size_t e = word_end(s, i);
    const std::string w = text::to_lower(s.substr(i, e - i));
    if (is_chunk_stop(w)) break;
    taken.emplace_back(i, e);
    i = e;
  }
  std::size_t first = 0;
  while (first < taken.size() &&
         is_determiner(text::to_lower(s.substr(taken[first].first,
                                               taken[first].second - taken[first].first)))) {
    ++first;
  }
  if (first == taken.size()) return std::nullopt;
  std::vector<std::string> ws;
  for (std::size_t k = first; k < taken.size(); ++k) {
    ws.push_back(text::to_lower(s.substr(taken[k].first, taken[k].second - taken[k].first)));
  }
  return Chunk{text::join(ws, " "), taken.back().second, taken[first].first};
}

std::optional<Chunk> chunk_before(std::string_view s, std::size_t pos) {
  std::vector<std::pair<std::size_t, std::size_t>> taken;  // right to left
  std::size_t i = std::min(pos, s.size());
  while (true) {
    i = skip_spaces_back(s, i);
    if (i == 0 || !word_char(s[i - 1])) break;
    const std::size_t b = word_start(s, i);
    const std::string w = text::to_lower(s.substr(b, i - b));
    if (is_chunk_stop(w)) break;
    taken.emplace_back(b, i);
    i = b;
  }
  std::reverse(taken.begin(), taken.end());
  std::size_t first = 0;
  while (first < taken.size() &&
         is_determiner(text::to_lower(s.substr(taken[first].first,
                                               taken[first].second - taken[first].first)))) {
    ++first;
  }
  if (first == taken.size()) return std::nullopt;
  std::vector<std::string> ws;
  for (std::size_t k = first; k < taken.size(); ++k) {
    ws.push_back(text::to_lower(s.substr(taken[k].first, taken[k].second - taken[k].first)));
  }
  return Chunk{text::join(ws, " "), taken.back().second, taken[first].first};
}

namespace {

// Third-person singular of a base-form verb; empty when `w` does not look
// like one (modals, adverbs, inflected forms).
std::string third_person(std::string_view w, bool regular) {
  static const std::map<std::string_view, std::string_view> kIrregular = {
      {"have", "has"}, {"are", "is"}, {"were", "was"}, {"do", "does"}, {"go", "goes"}};
  if (auto it = kIrregular.find(w); it != kIrregular.end()) return std::string(it->second);
  if (!regular || w.size() < 2) return "";
  static const std::set<std::string_view> kKeep = {
      "can", "may", "might", "will", "would", "should", "could", "must", "shall",
      "not", "also", "often", "only", "still", "then", "thus", "is", "was", "has"};
  if (kKeep.count(w)) return "";
  for (char c : w) {
    if (c < 'a' || c > 'z') return "";
  }
  auto ends = [&](std::string_view suf) {
    return w.size() > suf.size() && w.substr(w.size() - suf.size()) == suf;
  };
  if (ends("s") || ends("ed") || ends("ing") || ends("ly")) return "";
  if (ends("sh") || ends("ch") || ends("x") || ends("z") || ends("o")) {
    return std::string(w) + "es";
  }
  if (ends("y") && std::string_view("aeiou").find(w[w.size() - 2]) == std::string_view::npos) {
    return std::string(w.substr(0, w.size() - 1)) + "ies";
  }
  return std::string(w) + "s";
}

}  // namespace

std::string singular_agreement(std::string_view predicate) {
  auto pieces = text::split(predicate, ' ');
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    // The head verb, and a verb right after a coordinating "and"/"but".
    const bool head = i == 0;
    const bool conjunct = i > 0 && (pieces[i - 1] == "and" || pieces[i - 1] == "but");
    if (!head && !conjunct) continue;
    auto s = third_person(pieces[i], head);
    if (!s.empty()) pieces[i] = s;
  }
  return text::join(pieces, " ");
}

std::vector<PatternMatch> match_patterns(const DemarcatedContext &context,
                                         const Lexicon &lexicon) {
  const Scene sc = make_scene(context, lexicon);
  std::vector<PatternMatch> out;
  isa_patterns(sc, out);
  compare_patterns(sc, out);
  part_of_patterns(sc, out);
  used_for_patterns(sc, out);
  const std::string target = text::normalize_concept(context.target_concept);
  std::erase_if(out, [&](const PatternMatch &m) {
    return text::normalize_concept(m.reference) == target;
  });
  return out;
}

}  // namespace accord::patterns
