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

#include "accord/generation.h"

#include <algorithm>
#include <fstream>
#include <regex>

#include "accord/error.h"
#include "accord/io.h"
#include "accord/patterns.h"
#include "accord/remote.h"
#include "accord/text.h"

namespace accord {

// ---------------------------------------------------------------------------
// Exemplars and prompts

void validate_example(const FewShotExample &example) {
  DemarcatedContext probe{"exemplar", "", example.extraction};
  TargetSpan span;
  try {
    span = target_span(probe);
  } catch (const InvalidArgument &) {
    throw ConfigError("exemplar extraction has no marked target: " + example.extraction);
  }
  const std::string plain = strip_markers(example.extraction);
  const std::string target =
      text::normalize_concept(plain.substr(span.start, span.end - span.start));
  if (text::count_occurrences(example.description, target) != 1) {
    throw ConfigError("exemplar description must mention '" + target +
                      "' exactly once: " + example.description);
  }
}

ExemplarBank::ExemplarBank(std::vector<FewShotExample> examples) {
  for (auto &ex : examples) {
    validate_example(ex);
    by_relation_[ex.relation].push_back(std::move(ex));
  }
}

ExemplarBank ExemplarBank::load(const std::string &path) {
  return ExemplarBank(read_jsonl<FewShotExample>(path));
}

const std::vector<FewShotExample> &ExemplarBank::for_relation(RelationType r) const {
  static const std::vector<FewShotExample> kEmpty;
  auto it = by_relation_.find(r);
  return it == by_relation_.end() ? kEmpty : it->second;
}

std::size_t ExemplarBank::size() const {
  std::size_t n = 0;
  for (const auto &[r, v] : by_relation_) n += v.size();
  return n;
}

std::string Prompt::render() const {
  std::string out = instruction + "\n\n";
  for (const auto &ex : examples) {
    out += "Extraction: " + ex.extraction + "\nDescription: " + ex.description + "\n\n";
  }
  out += "Extraction: " + query + "\nDescription:";
  return out;
}

Prompt build_prompt(const DemarcatedContext &context, RelationType relation,
                    const ExemplarBank &bank) {
  const auto &pool = bank.for_relation(relation);
  if (pool.size() < kShots) {
    throw ConfigError("exemplar bank has " + std::to_string(pool.size()) + " " +
                      std::string(relation_name(relation)) + " exemplars, need " +
                      std::to_string(kShots));
  }
  Prompt p;
  p.context_id = context.context_id;
  p.relation = relation;
  p.instruction = std::string(kInstruction);
  p.examples.assign(pool.begin(), pool.begin() + kShots);
  p.query = context.text_with_markers;
  return p;
}

// ---------------------------------------------------------------------------
// Generation backends

RawGeneration generate_remote(const Prompt &prompt, const GeneratorConfig &cfg) {
  nlohmann::json body{{"prompt", prompt.render()},
                      {"max_tokens", cfg.max_tokens},
                      {"temperature", cfg.temperature}};
  if (cfg.seed) body["seed"] = *cfg.seed;
  const std::string key =
      prompt.context_id + "/" + std::string(relation_name(prompt.relation));
  const auto reply = post_json(cfg.remote, body, key);
  if (!reply.is_object() || !reply.contains("text") || !reply["text"].is_string()) {
    throw ProtocolError(key, "[" + key + "] reply lacks a text field");
  }
  std::string completion = reply["text"].get<std::string>();
  // Keep the first paragraph only.
  std::size_t cut = std::string::npos;
  for (std::size_t i = completion.find('\n'); i != std::string::npos;
       i = completion.find('\n', i + 1)) {
    std::size_t j = i + 1;
    while (j < completion.size() && (completion[j] == ' ' || completion[j] == '\t' ||
                                     completion[j] == '\r')) {
      ++j;
    }
    if (j < completion.size() && completion[j] == '\n') {
      cut = i;
      break;
    }
  }
  const std::string first(text::trim(std::string_view(completion).substr(0, cut)));
  if (first.empty()) throw UnparseableError("[" + key + "] empty completion");
  return {prompt.context_id, prompt.relation, first, GenerationBackend::kRemote};
}

RawGeneration generate_template(const DemarcatedContext &context, RelationType relation,
                                const Lexicon &lexicon) {
  for (const auto &m : patterns::match_patterns(context, lexicon)) {
    if (m.relation != relation) continue;
    if (!m.elaboration && relation != RelationType::kUsedFor) continue;
    const std::string reference = text::normalize_concept(m.reference);
    return {context.context_id, relation,
            render_description(context.target_concept, relation, reference,
                               m.elaboration.value_or("")),
            GenerationBackend::kTemplate};
  }
  throw UnparseableError("no " + std::string(relation_name(relation)) +
                         " pattern with a recoverable elaboration in " +
                         context.context_id);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::string join_elaboration(std::string_view e) {
  if (e.empty()) return "";
  const auto ws = text::words(e);
  const bool stop_first = !ws.empty() && ws.front().start == 0 &&
                          patterns::is_chunk_stop(text::to_lower(ws.front().text));
  return (stop_first ? " " : ", ") + std::string(e);
}

struct Cue {
  std::string_view phrase;
  RelationType relation;
};

// Longer cues first so "is a component of" wins over "is a".
const std::vector<Cue> &cues() {
  static const std::vector<Cue> kCues = {
      {"is a component of", RelationType::kPartOf},
      {"is a part of", RelationType::kPartOf},
      {"is part of", RelationType::kPartOf},
      {"is similar to", RelationType::kCompare},
      {"is like", RelationType::kCompare},
      {"has been utilized for", RelationType::kUsedFor},
      {"have been utilized for", RelationType::kUsedFor},
      {"has been applied to", RelationType::kUsedFor},
      {"has been used for", RelationType::kUsedFor},
      {"have been used for", RelationType::kUsedFor},
      {"can be used for", RelationType::kUsedFor},
      {"is utilized for", RelationType::kUsedFor},
      {"is applied to", RelationType::kUsedFor},
      {"is used for", RelationType::kUsedFor},
      {"are used for", RelationType::kUsedFor},
      {"is an", RelationType::kIsA},
      {"is a", RelationType::kIsA},
  };
  return kCues;
}

std::optional<std::size_t> cue_at(std::string_view lower, std::size_t pos,
                                  std::string_view phrase) {
  if (lower.substr(pos, phrase.size()) != phrase) return std::nullopt;
  const std::size_t e = pos + phrase.size();
  if (e < lower.size() && text::is_word_char(lower[e])) return std::nullopt;
  return e;
}

std::size_t skip_ws(std::string_view s, std::size_t i) {
  while (i < s.size() && text::is_space(s[i])) ++i;
  return i;
}

// "[a, b, and c]" starting at `pos` -> items and the offset after "]".
std::optional<std::pair<std::vector<std::string>, std::size_t>> bracket_list(
    std::string_view lower, std::size_t pos) {
  if (pos >= lower.size() || lower[pos] != '[') return std::nullopt;
  const auto close = lower.find(']', pos);
  if (close == std::string_view::npos) return std::nullopt;
  std::vector<std::string> items;
  for (auto &part : text::split(lower.substr(pos + 1, close - pos - 1), ',')) {
    std::string item = text::collapse_whitespace(part);
    for (std::string_view conj : {"and ", "or "}) {
      if (item.rfind(conj, 0) == 0) item = item.substr(conj.size());
    }
    if (!item.empty()) items.push_back(item);
  }
  if (items.empty()) return std::nullopt;
  return std::make_pair(items, close + 1);
}

std::string clean_elaboration(std::string_view original, std::size_t from,
                              RelationType relation) {
  std::string e(text::trim(original.substr(std::min(from, original.size()))));
  while (!e.empty() && (e.front() == ',' || text::is_space(e.front()))) e.erase(e.begin());
  if (relation == RelationType::kCompare) {
    const std::string lower = text::to_lower(e);
    if (lower.rfind("in that ", 0) == 0) e = std::string(text::trim(e.substr(8)));
  }
  while (!e.empty() && (e.back() == '.' || text::is_space(e.back()))) e.pop_back();
  return text::collapse_whitespace(e);
}

// Parses everything after the target. `original` and `lower` are the same
// text; `pos` is just past the target.
std::vector<ParsedDescription> parse_tail(const std::string &original,
                                          const std::string &lower, std::size_t pos,
                                          const std::vector<std::string> &targets) {
  const std::size_t p = skip_ws(lower, pos);
  std::optional<RelationType> relation;
  std::size_t ref_pos = 0;
  for (const auto &cue : cues()) {
    if (auto e = cue_at(lower, p, cue.phrase)) {
      relation = cue.relation;
      ref_pos = skip_ws(lower, *e);
      break;
    }
  }
  std::vector<std::string> references;
  std::size_t ref_end = 0;
  std::optional<std::string> forced_elaboration;
  if (!relation) {
    // "<target> and <reference> are both ..."
    if (auto e = cue_at(lower, p, "and")) {
      if (auto chunk = patterns::chunk_after(lower, *e)) {
        const std::size_t q = skip_ws(lower, chunk->end);
        if (auto both = cue_at(lower, q, "are both")) {
          relation = RelationType::kCompare;
          references.push_back(chunk->text);
          ref_end = chunk->end;
          forced_elaboration =
              "they are both " + clean_elaboration(original, *both, RelationType::kCompare);
        }
      }
    }
    if (!relation) {
      throw UnparseableError("no description template matches: " + original);
    }
  } else if (auto list = bracket_list(lower, ref_pos)) {
    references = list->first;
    ref_end = list->second;
  } else {
    auto chunk = patterns::chunk_after(lower, ref_pos);
    if (!chunk) throw UnparseableError("no reference after the relation cue: " + original);
    references.push_back(chunk->text);
    ref_end = chunk->end;
  }
  const std::string elaboration =
      forced_elaboration ? *forced_elaboration
                         : clean_elaboration(original, ref_end, *relation);
  if (elaboration.empty() && *relation != RelationType::kUsedFor) {
    throw UnparseableError("description has no elaboration: " + original);
  }
  std::vector<ParsedDescription> out;
  for (const auto &t : targets) {
    for (const auto &r : references) {
      if (text::normalize_concept(t) == text::normalize_concept(r)) continue;
      out.push_back({t, *relation, r, elaboration, original});
    }
  }
  if (out.empty()) {
    throw UnparseableError("reference equals the target: " + original);
  }
  return out;
}

}  // namespace

std::string render_description(std::string_view target, RelationType relation,
                               std::string_view reference, std::string_view elaboration) {
  std::string out(target);
  switch (relation) {
    case RelationType::kIsA: {
      const char c = reference.empty() ? 'x' : static_cast<char>(std::tolower(
                                                   static_cast<unsigned char>(reference[0])));
      const bool vowel = c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
      out += vowel ? " is an " : " is a ";
      out += reference;
      out += join_elaboration(elaboration);
      break;
    }
    case RelationType::kCompare:
      out += " is like ";
      out += reference;
      if (!elaboration.empty()) out += " in that " + std::string(elaboration);
      break;
    case RelationType::kPartOf:
      out += " is part of ";
      out += reference;
      out += join_elaboration(elaboration);
      break;
    case RelationType::kUsedFor:
      out += " has been used for ";
      out += reference;
      out += join_elaboration(elaboration);
      break;
  }
  out += ".";
  return out;
}

ParsedDescription parse_description(std::string_view text_in, std::string_view target) {
  const std::string original = text::collapse_whitespace(text_in);
  const std::string t = text::collapse_whitespace(text::to_lower(target));
  if (original.empty() || t.empty()) {
    throw UnparseableError("empty description or target");
  }
  const std::string lower = text::to_lower(original);
  if (lower.compare(0, t.size(), t) != 0) {
    throw UnparseableError("description does not start with '" + t + "': " + original);
  }
  std::size_t end = t.size();
  if (end < lower.size() && text::is_word_char(lower[end])) {
    // Plural surface of the target ("autoencoders are ...").
    if (lower[end] == 's' && (end + 1 == lower.size() || !text::is_word_char(lower[end + 1]))) {
      ++end;
    } else {
      throw UnparseableError("description does not start with '" + t + "': " + original);
    }
  }
  return parse_tail(original, lower, end, {t}).front();
}

std::vector<ParsedDescription> parse_description_all(std::string_view text_in) {
  const std::string original = text::collapse_whitespace(text_in);
  const std::string lower = text::to_lower(original);
  if (auto list = bracket_list(lower, 0)) {
    return parse_tail(original, lower, list->second, list->first);
  }
  std::optional<std::size_t> best;
  for (const auto &cue : cues()) {
    for (auto p = lower.find(cue.phrase); p != std::string::npos;
         p = lower.find(cue.phrase, p + 1)) {
      if (p == 0 || !text::at_word_boundary(lower, p, p + cue.phrase.size())) continue;
      if (!best || p < *best) best = p;
      break;
    }
  }
  if (!best) throw UnparseableError("no description template matches: " + original);
  const std::string target(text::trim(std::string_view(lower).substr(0, *best)));
  return parse_tail(original, lower, *best, {target});
}

// ---------------------------------------------------------------------------
// Filtering

std::string_view reject_reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::kUnresolvedReference: return "unresolved_reference";
    case RejectReason::kAuthorNameReference: return "author_name_reference";
    case RejectReason::kDuplicateTarget: return "duplicate_target";
    case RejectReason::kUnparseable: return "unparseable";
    case RejectReason::kReferenceMissing: return "reference_missing";
  }
  return "unparseable";
}

bool FilterVerdict::has(RejectReason r) const {
  return std::find(reasons.begin(), reasons.end(), r) != reasons.end();
}

const std::vector<std::string> &unresolved_reference_phrases() {
  static const std::vector<std::string> kPhrases = {
      "our work", "this paper", "this work", "we propose", "our method", "our approach"};
  return kPhrases;
}

bool is_author_name(std::string_view reference) {
  static const std::regex kEtAl(R"((^|\s)et\.?\s+al\.?\s*$)", std::regex::icase);
  static const std::regex kSurnameYear(
      R"(^[A-Z][A-Za-z'\-]+(\s+(and|&)\s+[A-Z][A-Za-z'\-]+)?\s*,?\s*\(\s*\d{4}[a-z]?\s*\)\s*$)");
  const std::string r(text::trim(reference));
  return std::regex_search(r, kEtAl) || std::regex_match(r, kSurnameYear);
}

FilterVerdict filter_description(const ParsedDescription &parsed,
                                 std::string_view context_text,
                                 const FilterOptions &options) {
  FilterVerdict v;
  auto reject = [&](RejectReason r) {
    if (!v.has(r)) v.reasons.push_back(r);
  };
  for (const auto &phrase : unresolved_reference_phrases()) {
    if (text::contains_phrase(parsed.text, phrase)) {
      reject(RejectReason::kUnresolvedReference);
      break;
    }
  }
  if (is_author_name(parsed.reference)) reject(RejectReason::kAuthorNameReference);
  // Occurrences nested in the reference ("autoencoder" inside "variational
  // autoencoder") are not repeats.
  const std::string target_key = text::normalize_concept(parsed.target);
  const auto in_text = static_cast<long>(text::count_occurrences(parsed.text, target_key));
  const auto in_ref = static_cast<long>(text::count_occurrences(parsed.reference, target_key));
  if (in_text - in_ref > 1) {
    reject(RejectReason::kDuplicateTarget);
  }
  const bool self_reference = text::normalize_concept(parsed.target) ==
                              text::normalize_concept(parsed.reference);
  const bool missing_elaboration =
      text::trim(parsed.elaboration).empty() && parsed.relation != RelationType::kUsedFor;
  if (parsed.reference.empty() || self_reference || missing_elaboration) {
    reject(RejectReason::kUnparseable);
  }
  if (!parsed.reference.empty() && !text::contains_phrase(context_text, parsed.reference)) {
    const bool relaxed =
        options.relax_reference && text::contains_phrase(parsed.target, parsed.reference);
    if (!relaxed) reject(RejectReason::kReferenceMissing);
  }
  v.accepted = v.reasons.empty();
  return v;
}

FilterVerdict filter_description(const ParsedDescription &parsed,
                                 const CandidateContext &context,
                                 const FilterOptions &options) {
  return filter_description(parsed, context.text, options);
}

}  // namespace accord
