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

#include "accord/corpus.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "accord/error.h"
#include "accord/io.h"
#include "accord/text.h"

namespace accord {

std::string_view section_kind_name(SectionKind kind) {
  switch (kind) {
    case SectionKind::kAbstract: return "abstract";
    case SectionKind::kIntroduction: return "introduction";
    case SectionKind::kRelatedWork: return "related_work";
  }
  return "abstract";
}

std::optional<SectionKind> parse_section_kind(std::string_view name) {
  if (name == "abstract") return SectionKind::kAbstract;
  if (name == "introduction") return SectionKind::kIntroduction;
  if (name == "related_work") return SectionKind::kRelatedWork;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lexicon

Lexicon::Lexicon(const std::vector<LexiconEntry> &entries) {
  std::map<std::string, double> best;
  for (const auto &e : entries) {
    std::string c = text::collapse_whitespace(text::to_lower(e.term));
    if (c.empty()) throw InvalidArgument("lexicon concept is empty");
    if (!(e.score >= 0.0)) {
      throw InvalidArgument("lexicon score for '" + c + "' is negative");
    }
    auto [it, inserted] = best.emplace(c, e.score);
    if (!inserted) it->second = std::max(it->second, e.score);
  }
  entries_.reserve(best.size());
  for (auto &[c, s] : best) entries_.push_back({c, s});
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    position_.emplace(entries_[i].term, i);
    auto ws = text::words(entries_[i].term);
    if (ws.empty()) continue;
    first_word_[ws.front().text].push_back(i);
  }
  for (auto &[w, ids] : first_word_) {
    std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
      return entries_[a].term.size() > entries_[b].term.size();
    });
  }
}

bool Lexicon::contains(std::string_view term) const {
  return position_.count(text::to_lower(term)) > 0;
}

std::optional<double> Lexicon::score(std::string_view term) const {
  auto it = position_.find(text::to_lower(term));
  if (it == position_.end()) return std::nullopt;
  return entries_[it->second].score;
}

const std::vector<std::size_t> *Lexicon::by_first_word(
    const std::string &word) const {
  auto it = first_word_.find(word);
  return it == first_word_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Loading

std::vector<PaperRecord> load_corpus(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus file " + path);
  std::vector<PaperRecord> records;
  std::map<std::string, std::size_t> seen;
  std::vector<std::string> problems;
  std::size_t first_bad = 0;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (text::trim(line).empty()) continue;
    auto fail = [&](const std::string &msg) {
      if (first_bad == 0) first_bad = lineno;
      problems.push_back(path + ":" + std::to_string(lineno) + ": " + msg);
    };
    PaperRecord rec;
    try {
      rec = nlohmann::json::parse(line).get<PaperRecord>();
    } catch (const std::exception &e) {
      fail(e.what());
      continue;
    }
    auto [it, inserted] = seen.emplace(rec.paper_id, lineno);
    if (!inserted) {
      fail("duplicate paper_id '" + rec.paper_id + "' (first seen on line " +
           std::to_string(it->second) + ")");
      continue;
    }
    records.push_back(std::move(rec));
  }
  if (!problems.empty()) {
    throw InputError(path, first_bad,
                     std::to_string(problems.size()) + " bad line(s):\n" +
                         text::join(problems, "\n"));
  }
  return records;
}

Lexicon load_lexicon(const std::string &path, double min_score) {
  if (!std::isfinite(min_score)) {
    throw InvalidArgument("min_score must be finite");
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open lexicon file " + path);
  std::vector<LexiconEntry> kept;
  std::vector<std::string> problems;
  std::size_t first_bad = 0;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto tab = line.rfind('\t');
    auto fail = [&](const std::string &msg) {
      if (first_bad == 0) first_bad = lineno;
      problems.push_back(path + ":" + std::to_string(lineno) + ": " + msg);
    };
    if (tab == std::string::npos) {
      fail("expected concept<TAB>score");
      continue;
    }
    const std::string term(text::trim(std::string_view(line).substr(0, tab)));
    const auto score_text = text::trim(std::string_view(line).substr(tab + 1));
    double score = 0.0;
    auto [ptr, ec] = std::from_chars(score_text.data(),
                                     score_text.data() + score_text.size(), score);
    if (ec != std::errc() || ptr != score_text.data() + score_text.size() ||
        !std::isfinite(score)) {
      fail("non-numeric score '" + std::string(score_text) + "'");
      continue;
    }
    if (term.empty() || score < 0.0) {
      fail("empty concept or negative score");
      continue;
    }
    if (score >= min_score) kept.push_back({term, score});
  }
  if (!problems.empty()) {
    throw InputError(path, first_bad,
                     std::to_string(problems.size()) + " bad line(s):\n" +
                         text::join(problems, "\n"));
  }
  return Lexicon(kept);
}

// ---------------------------------------------------------------------------
// Sentences

const std::vector<std::string> &abbreviation_guards() {
  static const std::vector<std::string> kGuards = {
      "et al.", "e.g.", "i.e.", "fig.", "figs.", "eq.", "eqs.", "cf.",
      "vs.",    "approx.", "resp.", "sec.", "no.", "dr.", "prof.", "ref."};
  return kGuards;
}

namespace {

// Marks positions enclosed by a matched () or [] pair. Unmatched brackets
// are ignored so a stray "(" cannot swallow the rest of a section.
std::vector<bool> bracket_mask(std::string_view text) {
  std::vector<bool> inside(text.size(), false);
  std::vector<std::pair<char, std::size_t>> stack;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(' || c == '[') {
      stack.emplace_back(c, i);
    } else if (c == ')' || c == ']') {
      const char open = c == ')' ? '(' : '[';
      // Pop to the nearest matching opener; skipped openers stay unmatched.
      for (std::size_t k = stack.size(); k-- > 0;) {
        if (stack[k].first == open) {
          for (std::size_t j = stack[k].second + 1; j < i; ++j) inside[j] = true;
          stack.resize(k);
          break;
        }
      }
    }
  }
  return inside;
}

bool guarded(std::string_view text, std::size_t period) {
  std::size_t ws = period;
  while (ws > 0 && !text::is_space(text[ws - 1])) --ws;
  std::string word = text::to_lower(text.substr(ws, period + 1 - ws));
  while (!word.empty() && (word.front() == '(' || word.front() == '[' ||
                           word.front() == '"')) {
    word.erase(word.begin());
  }
  for (const auto &g : abbreviation_guards()) {
    if (g.find(' ') == std::string::npos) {
      if (word == g) return true;
      continue;
    }
    // Multi-word guard such as "et al.": compare the trailing words.
    std::size_t start = ws;
    std::size_t spaces = static_cast<std::size_t>(std::count(g.begin(), g.end(), ' '));
    for (; spaces > 0 && start > 0; --spaces) {
      --start;
      while (start > 0 && text::is_space(text[start - 1])) --start;
      while (start > 0 && !text::is_space(text[start - 1])) --start;
    }
    const std::string tail = text::collapse_whitespace(
        text::to_lower(text.substr(start, period + 1 - start)));
    if (tail == g) return true;
  }
  return false;
}

}  // namespace

std::vector<Sentence> split_sentences(std::string_view text) {
  std::vector<Sentence> out;
  const auto inside = bracket_mask(text);
  const std::size_t n = text.size();
  std::size_t start = 0;
  auto emit = [&](std::size_t b, std::size_t e) {
    while (b < e && text::is_space(text[b])) ++b;
    while (e > b && text::is_space(text[e - 1])) --e;
    if (b < e) {
      out.push_back({std::string(text.substr(b, e - b)), b, e, out.size()});
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    if (inside[i]) continue;
    std::size_t end = i + 1;
    while (end < n && (text[end] == '"' || text[end] == '\'')) ++end;
    if (end < n && !text::is_space(text[end])) continue;
    if (c == '.' && guarded(text, i)) continue;
    emit(start, end);
    start = end;
  }
  emit(start, n);
  return out;
}

// ---------------------------------------------------------------------------
// Matching and windows

std::vector<ConceptMention> match_concepts(std::string_view text,
                                           const Lexicon &lexicon,
                                           const MatchOptions &options) {
  const std::string lower = text::to_lower(text);
  struct Hit {
    std::size_t entry, start, end;
  };
  std::vector<Hit> hits;
  for (const auto &tok : text::words(lower)) {
    // A one-word concept may only show up in plural form.
    std::vector<std::size_t> ids;
    for (std::size_t cut : {0, 1, 2}) {
      if (cut > 0 && !options.allow_plural) break;
      if (tok.text.size() <= cut) break;
      const auto *found = lexicon.by_first_word(tok.text.substr(0, tok.text.size() - cut));
      if (found == nullptr) continue;
      for (std::size_t id : *found) {
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
      }
    }
    for (std::size_t id : ids) {
      const auto &c = lexicon.entries()[id].term;
      if (lower.compare(tok.start, c.size(), c) != 0) continue;
      std::size_t end = tok.start + c.size();
      if (!text::at_word_boundary(lower, tok.start, end)) {
        if (!options.allow_plural) continue;
        bool ok = false;
        for (std::string_view suf : {"s", "es"}) {
          const std::size_t e = end + suf.size();
          if (std::string_view(lower).substr(end, suf.size()) == suf &&
              (e == lower.size() || !text::is_word_char(lower[e]))) {
            end = e;
            ok = true;
            break;
          }
        }
        if (!ok) continue;
      }
      hits.push_back({id, tok.start, end});
    }
  }
  std::sort(hits.begin(), hits.end(), [&](const Hit &a, const Hit &b) {
    const auto &ca = lexicon.entries()[a.entry].term;
    const auto &cb = lexicon.entries()[b.entry].term;
    if (ca.size() != cb.size()) return ca.size() > cb.size();
    if (a.start != b.start) return a.start < b.start;
    return ca < cb;
  });
  std::vector<Hit> kept;
  for (const auto &h : hits) {
    const bool overlaps = std::any_of(kept.begin(), kept.end(), [&](const Hit &k) {
      return h.start < k.end && k.start < h.end;
    });
    if (!overlaps) kept.push_back(h);
  }
  std::sort(kept.begin(), kept.end(),
            [](const Hit &a, const Hit &b) { return a.start < b.start; });
  std::vector<ConceptMention> out;
  out.reserve(kept.size());
  for (const auto &h : kept) {
    const auto &e = lexicon.entries()[h.entry];
    out.push_back({e.term, h.start, h.end, e.score});
  }
  return out;
}

std::string make_context_id(std::string_view paper_id, SectionKind kind,
                            std::size_t first, std::size_t last) {
  std::ostringstream id;
  id << paper_id << ':' << section_kind_name(kind) << ':' << first << '-' << last;
  return id.str();
}

std::vector<CandidateContext> enumerate_windows(const std::string &paper_id,
                                                SectionKind kind,
                                                std::string_view section_text,
                                                const WindowSizes &sizes) {
  if (sizes.empty()) throw InvalidArgument("window_sizes is empty");
  for (int s : sizes) {
    if (s != 1 && s != 2) {
      throw InvalidArgument("window size " + std::to_string(s) + " not in {1,2}");
    }
  }
  const auto sentences = split_sentences(section_text);
  std::vector<CandidateContext> out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    for (int size : sizes) {
      const std::size_t last = i + static_cast<std::size_t>(size) - 1;
      if (last >= sentences.size()) continue;
      CandidateContext c;
      c.context_id = make_context_id(paper_id, kind, i, last);
      c.paper_id = paper_id;
      c.window_size = size;
      const std::size_t b = sentences[i].char_start;
      c.text = std::string(section_text.substr(b, sentences[last].char_end - b));
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<CandidateContext> build_candidate_contexts(const PaperRecord &record,
                                                       const Lexicon &lexicon,
                                                       const WindowSizes &sizes,
                                                       const MatchOptions &options) {
  std::vector<CandidateContext> out;
  for (const auto &section : record.sections) {
    if (text::trim(section.text).empty()) continue;
    for (auto &c : enumerate_windows(record.paper_id, section.kind, section.text,
                                     sizes)) {
      c.mentions = match_concepts(c.text, lexicon, options);
      if (!c.mentions.empty()) out.push_back(std::move(c));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Demarcation

DemarcatedContext demarcate(const CandidateContext &context,
                            const ConceptMention &mention) {
  const auto &t = context.text;
  if (t.find(kOpenMarker) != std::string::npos ||
      t.find(kCloseMarker) != std::string::npos) {
    throw InvalidArgument("context " + context.context_id +
                          " already contains marker tokens");
  }
  if (mention.char_start >= mention.char_end || mention.char_end > t.size()) {
    throw InvalidArgument("mention span out of bounds in " + context.context_id);
  }
  DemarcatedContext d;
  d.context_id = context.context_id;
  d.target_concept = mention.term;
  d.text_with_markers.reserve(t.size() + 4);
  d.text_with_markers.append(t, 0, mention.char_start);
  d.text_with_markers.append(kOpenMarker);
  d.text_with_markers.append(t, mention.char_start,
                             mention.char_end - mention.char_start);
  d.text_with_markers.append(kCloseMarker);
  d.text_with_markers.append(t, mention.char_end);
  return d;
}

std::string strip_markers(std::string_view marked) {
  const auto open = marked.find(kOpenMarker);
  if (open == std::string_view::npos) return std::string(marked);
  const auto close = marked.find(kCloseMarker, open + kOpenMarker.size());
  if (close == std::string_view::npos) return std::string(marked);
  std::string out(marked.substr(0, open));
  out.append(marked.substr(open + kOpenMarker.size(),
                           close - open - kOpenMarker.size()));
  out.append(marked.substr(close + kCloseMarker.size()));
  return out;
}

TargetSpan target_span(const DemarcatedContext &context) {
  const auto &m = context.text_with_markers;
  const auto open = m.find(kOpenMarker);
  const auto close =
      open == std::string::npos ? open : m.find(kCloseMarker, open + 2);
  if (open == std::string::npos || close == std::string::npos) {
    throw InvalidArgument("context " + context.context_id + " has no marked target");
  }
  if (m.find(kOpenMarker, close) != std::string::npos) {
    throw InvalidArgument("context " + context.context_id +
                          " has more than one marked target");
  }
  return {open, close - kOpenMarker.size()};
}

std::string instance_key(const DemarcatedContext &context) {
  return context.context_id + "@" + std::to_string(target_span(context).start);
}

}  // namespace accord
