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

#ifndef ACCORD_CORPUS_H_
#define ACCORD_CORPUS_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

// Corpus ingestion: paper records, the scored concept lexicon, sentence
// splitting, candidate context windows and target demarcation.
namespace accord {

enum class SectionKind { kAbstract, kIntroduction, kRelatedWork };

std::string_view section_kind_name(SectionKind kind);
std::optional<SectionKind> parse_section_kind(std::string_view name);

struct Section {
  SectionKind kind = SectionKind::kAbstract;
  std::string text;

  bool operator==(const Section &) const = default;
};

struct PaperRecord {
  std::string paper_id;
  std::string title;
  std::optional<std::string> url;
  std::vector<Section> sections;

  bool operator==(const PaperRecord &) const = default;
};

struct LexiconEntry {
  std::string term;  // lowercase
  double score = 0.0;

  bool operator==(const LexiconEntry &) const = default;
};

// A set of scored concept strings with an index for mention matching.
// Entries are kept sorted by concept.
class Lexicon {
 public:
  Lexicon() = default;
  // Lowercases and deduplicates, keeping the maximum score per concept.
  explicit Lexicon(const std::vector<LexiconEntry> &entries);

  bool contains(std::string_view term) const;
  std::optional<double> score(std::string_view term) const;
  const std::vector<LexiconEntry> &entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Entry indices whose first word is `word` (lowercase), longest first.
  const std::vector<std::size_t> *by_first_word(const std::string &word) const;

 private:
  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, std::size_t> position_;
  std::unordered_map<std::string, std::vector<std::size_t>> first_word_;
};

struct Sentence {
  std::string text;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::size_t index = 0;

  bool operator==(const Sentence &) const = default;
};

struct ConceptMention {
  std::string term;  // the lexicon string
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  double score = 0.0;

  bool operator==(const ConceptMention &) const = default;
};

struct CandidateContext {
  std::string context_id;  // {paper_id}:{section_kind}:{first}-{last}
  std::string paper_id;
  std::string text;
  int window_size = 1;
  std::vector<ConceptMention> mentions;

  bool operator==(const CandidateContext &) const = default;
};

inline constexpr std::string_view kOpenMarker = "<<";
inline constexpr std::string_view kCloseMarker = ">>";

struct DemarcatedContext {
  std::string context_id;
  std::string target_concept;
  std::string text_with_markers;

  bool operator==(const DemarcatedContext &) const = default;
};

// Reads a JSON Lines corpus. Throws InputError listing every malformed line
// and every duplicate paper_id (with both line numbers).
std::vector<PaperRecord> load_corpus(const std::string &path);

// Reads a `concept<TAB>score` file, skipping blank and `#` lines, and keeps
// entries with score >= min_score.
Lexicon load_lexicon(const std::string &path, double min_score);

// Abbreviations that never end a sentence.
const std::vector<std::string> &abbreviation_guards();

// Rule-based splitter: breaks after . ! ? followed by whitespace, except
// after a guarded abbreviation or inside a bracketed group.
std::vector<Sentence> split_sentences(std::string_view text);

struct MatchOptions {
  // Also match a concept followed directly by a plural "s"/"es"; the mention
  // span then covers the inflected surface form.
  bool allow_plural = true;
};

// Case-insensitive, word-boundary lexicon matching; overlaps resolved in
// favour of the longer concept. Sorted by char_start.
std::vector<ConceptMention> match_concepts(std::string_view text,
                                           const Lexicon &lexicon,
                                           const MatchOptions &options = {});

using WindowSizes = std::set<int>;

// All windows of the requested sizes for one section, before any lexicon
// filtering. Windows never cross section boundaries.
std::vector<CandidateContext> enumerate_windows(const std::string &paper_id,
                                                SectionKind kind,
                                                std::string_view section_text,
                                                const WindowSizes &sizes);

// Windows over every section with at least one concept mention.
std::vector<CandidateContext> build_candidate_contexts(
    const PaperRecord &record, const Lexicon &lexicon,
    const WindowSizes &sizes = {1, 2}, const MatchOptions &options = {});

std::string make_context_id(std::string_view paper_id, SectionKind kind,
                            std::size_t first, std::size_t last);

// Wraps the mention span in << >>. Throws InvalidArgument when the span is
// out of bounds or the text already contains a marker token.
DemarcatedContext demarcate(const CandidateContext &context,
                            const ConceptMention &mention);

// Removes the first marker pair; the inverse of demarcate.
std::string strip_markers(std::string_view text_with_markers);

// Byte range of the marked target inside strip_markers(text).
struct TargetSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};
TargetSpan target_span(const DemarcatedContext &context);

// Stable key for one (context, target) instance, used to key remote calls
// and generated descriptions: "{context_id}@{start}".
std::string instance_key(const DemarcatedContext &context);

}  // namespace accord

#endif  // ACCORD_CORPUS_H_
