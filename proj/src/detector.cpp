// Copyright 2026 The SuperSem Toolkit Authors.
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

#include "supersem/detector.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "supersem/text.hpp"

namespace supersem {

std::string_view to_string(SyntacticKind k) {
  switch (k) {
    case SyntacticKind::kAdjectival: return "adjectival";
    case SyntacticKind::kAdverbial: return "adverbial";
    case SyntacticKind::kLexical: return "lexical";
  }
  return "adjectival";
}

std::optional<SyntacticKind> parse_syntactic_kind(std::string_view s) {
  if (s == "adjectival") return SyntacticKind::kAdjectival;
  if (s == "adverbial") return SyntacticKind::kAdverbial;
  if (s == "lexical") return SyntacticKind::kLexical;
  return std::nullopt;
}

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_word_byte(char c) {
  return text::is_alpha(c) || text::is_digit(c) || static_cast<unsigned char>(c) >= 0x80;
}

// A word token, split at hyphens into parts. Apostrophes stay inside words.
struct Word {
  TextSpan span;  // relative to the tokenized text
  std::string lower;
};

std::vector<Word> tokenize(std::string_view s) {
  std::vector<Word> out;
  size_t i = 0;
  while (i < s.size()) {
    if (!is_word_byte(s[i])) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < s.size() &&
           (is_word_byte(s[j]) ||
            (s[j] == '\'' && j + 1 < s.size() && is_word_byte(s[j + 1]) && j > i))) {
      ++j;
    }
    out.push_back({{i, j}, text::to_lower(s.substr(i, j - i))});
    i = j;
  }
  return out;
}

// Whitespace or a single hyphen between two words keeps them adjacent.
bool adjacent(std::string_view s, const Word& a, const Word& b) {
  for (size_t i = a.span.end; i < b.span.start; ++i) {
    if (!text::is_space(s[i]) && s[i] != '-') return false;
  }
  return true;
}

constexpr std::array<std::string_view, 14> kAdjectiveSuffixes = {
    "ed", "ing", "ful", "ous", "ive", "able", "ible", "al", "ic", "ent", "ant", "less", "ish", "ary"};

constexpr std::array<std::string_view, 12> kPlainAdverbs = {
    "often", "well", "much", "frequently", "recently", "commonly", "likely",
    "importantly", "notably", "probably", "again", "soon"};

}  // namespace

bool Detector::is_est_superlative(std::string_view w) const {
  if (w.size() < 5 || !ends_with(w, "est")) return false;
  if (lex_.non_superlative_est.contains(w)) return false;
  const std::string stem(w.substr(0, w.size() - 3));
  std::vector<std::string> variants = {stem, stem + "e", std::string(w.substr(0, w.size() - 2))};
  const size_t n = stem.size();
  if (n >= 3 && stem[n - 1] == stem[n - 2]) variants.push_back(stem.substr(0, n - 1));
  if (n >= 2 && stem[n - 1] == 'i') variants.push_back(stem.substr(0, n - 1) + "y");
  return std::any_of(variants.begin(), variants.end(), [this](const std::string& v) {
    return v.size() >= 2 && lex_.adjectives.contains(v);
  });
}

bool Detector::is_adjective_like(std::string_view w) const {
  if (lex_.adjectives.contains(w)) return true;
  if (w.size() < 4) return false;
  return std::any_of(kAdjectiveSuffixes.begin(), kAdjectiveSuffixes.end(),
                     [w](std::string_view suf) { return ends_with(w, suf); });
}

bool Detector::is_adverb_like(std::string_view w) const {
  if (std::find(kPlainAdverbs.begin(), kPlainAdverbs.end(), w) != kPlainAdverbs.end()) return true;
  return w.size() > 4 && ends_with(w, "ly");
}

std::optional<SyntacticKind> Detector::word_kind(std::string_view w) const {
  if (lex_.irregular.contains(w)) return SyntacticKind::kAdjectival;
  if (is_est_superlative(w)) return SyntacticKind::kAdjectival;
  if (lex_.lexical.contains(w)) return SyntacticKind::kLexical;
  return std::nullopt;
}

std::vector<TextSpan> Detector::segment(std::string_view doc) const {
  std::vector<TextSpan> out;
  auto emit = [&out, doc](size_t b, size_t e) {
    while (b < e && text::is_space(doc[b])) ++b;
    while (e > b && text::is_space(doc[e - 1])) --e;
    if (b < e) out.push_back({b, e});
  };
  auto is_closer = [](char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; };

  size_t start = 0;
  size_t i = 0;
  while (i < doc.size()) {
    const char c = doc[i];
    if (c == '\n') {
      size_t j = i + 1;
      while (j < doc.size() && (doc[j] == ' ' || doc[j] == '\t' || doc[j] == '\r')) ++j;
      if (j < doc.size() && doc[j] == '\n') {
        emit(start, i);
        start = j;
        i = j;
        continue;
      }
    }
    if (c == '.' || c == '?' || c == '!') {
      size_t j = i + 1;
      while (j < doc.size() && (doc[j] == '.' || doc[j] == '?' || doc[j] == '!')) ++j;
      while (j < doc.size() && is_closer(doc[j])) ++j;
      const bool boundary = j == doc.size() || text::is_space(doc[j]);
      if (boundary && c == '.' && j == i + 1) {
        size_t w = i;
        while (w > start && !text::is_space(doc[w - 1])) --w;
        const std::string token = text::to_lower(doc.substr(w, i + 1 - w));
        // Strip leading quotes/brackets from the token before the lookup.
        size_t k = 0;
        while (k < token.size() && (token[k] == '"' || token[k] == '(' || token[k] == '\'')) ++k;
        if (lex_.abbreviations.contains(std::string_view(token).substr(k))) {
          i = j;
          continue;
        }
      }
      if (boundary) {
        emit(start, j);
        start = j;
      }
      i = j;
      continue;
    }
    ++i;
  }
  emit(start, doc.size());
  return out;
}

std::vector<Candidate> Detector::detect_candidates(std::string_view sentence, size_t base) const {
  std::vector<Candidate> out;
  const std::vector<Word> words = tokenize(sentence);
  for (size_t i = 0; i < words.size(); ++i) {
    const Word& w = words[i];
    std::optional<SyntacticKind> kind;
    if (w.lower == "most" || w.lower == "least") {
      const bool has_next = i + 1 < words.size() && adjacent(sentence, w, words[i + 1]);
      const std::string_view next = has_next ? std::string_view(words[i + 1].lower) : "";
      if (next.empty()) {
        kind = SyntacticKind::kAdverbial;
      } else if (is_adjective_like(next)) {
        kind = SyntacticKind::kAdjectival;
      } else if (is_adverb_like(next)) {
        kind = SyntacticKind::kAdverbial;
      } else {
        kind = SyntacticKind::kAdjectival;
      }
    } else {
      kind = word_kind(w.lower);
    }
    if (!kind) continue;
    Candidate c;
    c.span = {base + w.span.start, base + w.span.end};
    c.surface = std::string(sentence.substr(w.span.start, w.span.size()));
    c.kind = *kind;
    out.push_back(std::move(c));
  }
  return out;
}

void Detector::filter_non_superlative(std::vector<Candidate>& cands, std::string_view sentence,
                                      size_t base) const {
  const std::vector<Word> words = tokenize(sentence);
  std::vector<std::vector<std::string>> idioms;
  for (const auto& idiom : lex_.idioms.words()) {
    std::vector<std::string> toks;
    for (const Word& w : tokenize(idiom)) toks.push_back(w.lower);
    idioms.push_back(std::move(toks));
  }

  for (Candidate& c : cands) {
    if (c.span.start < base) continue;
    const size_t rel = c.span.start - base;
    auto it = std::find_if(words.begin(), words.end(),
                           [rel](const Word& w) { return w.span.start == rel; });
    if (it == words.end()) continue;
    const size_t i = static_cast<size_t>(it - words.begin());
    const std::string& w = words[i].lower;

    if ((w == "least" || w == "most") && i > 0 && words[i - 1].lower == "at" &&
        adjacent(sentence, words[i - 1], words[i])) {
      c.filtered = true;
      c.reason = kReasonProportional;
      continue;
    }
    if (w == "most" && i + 2 < words.size() && words[i + 1].lower == "of" &&
        lex_.determiners.contains(words[i + 2].lower)) {
      c.filtered = true;
      c.reason = kReasonPartitive;
      continue;
    }
    for (const auto& idiom : idioms) {
      for (size_t k = 0; k < idiom.size(); ++k) {
        if (idiom[k] != w || k > i || i - k + idiom.size() > words.size()) continue;
        bool match = true;
        for (size_t m = 0; m < idiom.size() && match; ++m) {
          match = words[i - k + m].lower == idiom[m];
        }
        if (match) {
          c.filtered = true;
          c.reason = kReasonIdiom;
        }
      }
      if (c.filtered) break;
    }
  }
}

std::vector<Candidate> Detector::detect_document(const Document& doc) const {
  std::vector<Candidate> out;
  const auto sentences = segment(doc.text);
  for (size_t s = 0; s < sentences.size(); ++s) {
    const std::string_view sent =
        std::string_view(doc.text).substr(sentences[s].start, sentences[s].size());
    auto cands = detect_candidates(sent, sentences[s].start);
    filter_non_superlative(cands, sent, sentences[s].start);
    for (auto& c : cands) {
      c.doc_id = doc.id;
      c.sentence_index = s;
      out.push_back(std::move(c));
    }
  }
  return out;
}

ContextWindow context_window(std::string_view doc, const std::vector<TextSpan>& sentences,
                             size_t sentence_index, size_t before, size_t after) {
  if (sentence_index >= sentences.size()) {
    throw std::out_of_range("sentence index " + std::to_string(sentence_index) +
                            " out of range (document has " + std::to_string(sentences.size()) +
                            " sentences)");
  }
  ContextWindow w;
  w.first_sentence = sentence_index - std::min(before, sentence_index);
  w.last_sentence = std::min(sentence_index + after, sentences.size() - 1);
  w.span = {sentences[w.first_sentence].start, sentences[w.last_sentence].end};
  w.text = std::string(doc.substr(w.span.start, w.span.size()));
  return w;
}

}  // namespace supersem
