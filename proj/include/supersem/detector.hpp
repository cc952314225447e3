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

// Rule-based superlative candidate detection.
//
// Candidates are over-generated on purpose: every token that looks like a
// superlative is reported, and known non-superlative uses ("at least",
// "most of the ...") are only flagged, never dropped, so an annotator can
// override the decision.

#ifndef SUPERSEM_DETECTOR_HPP_
#define SUPERSEM_DETECTOR_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "supersem/lexicon.hpp"

namespace supersem {

enum class SyntacticKind { kAdjectival, kAdverbial, kLexical };

std::string_view to_string(SyntacticKind k);
std::optional<SyntacticKind> parse_syntactic_kind(std::string_view s);

// Byte offsets into the document, end exclusive.
struct TextSpan {
  size_t start = 0;
  size_t end = 0;

  size_t size() const { return end - start; }
  bool operator==(const TextSpan&) const = default;
};

struct Candidate {
  std::string doc_id;
  size_t sentence_index = 0;
  TextSpan span;
  std::string surface;
  SyntacticKind kind = SyntacticKind::kAdjectival;
  bool filtered = false;
  std::string reason;  // empty unless filtered

  bool operator==(const Candidate&) const = default;
};

struct Document {
  std::string id;
  std::string text;
  std::string domain;  // optional, empty when unknown
};

// Filter reasons.
inline constexpr std::string_view kReasonProportional = "proportional-quantifier";
inline constexpr std::string_view kReasonPartitive = "partitive-quantifier";
inline constexpr std::string_view kReasonIdiom = "idiom";

struct ContextWindow {
  TextSpan span;
  size_t first_sentence = 0;
  size_t last_sentence = 0;
  std::string text;  // document substring covering span
};

class Detector {
 public:
  Detector() : Detector(DetectorLexicon::defaults()) {}
  explicit Detector(DetectorLexicon lexicon) : lex_(std::move(lexicon)) {}

  // Sentence boundaries: '.', '?' or '!' (plus closing quotes/brackets)
  // followed by whitespace, and blank lines. A '.' closing a listed
  // abbreviation does not end the sentence.
  std::vector<TextSpan> segment(std::string_view doc) const;

  // `sentence` is the sentence text; `base` its offset in the document, so
  // the returned spans are document offsets.
  std::vector<Candidate> detect_candidates(std::string_view sentence, size_t base = 0) const;

  // Marks proportional quantifiers, partitives and idioms. Never removes a
  // candidate. Candidates must come from `sentence` (located at `base`).
  void filter_non_superlative(std::vector<Candidate>& cands, std::string_view sentence,
                              size_t base = 0) const;

  // segment + detect + filter over a whole document.
  std::vector<Candidate> detect_document(const Document& doc) const;

  // Whether a single lowercase word is a superlative form by morphology or
  // the irregular/lexical lists.
  std::optional<SyntacticKind> word_kind(std::string_view lower_word) const;

  const DetectorLexicon& lexicon() const { return lex_; }

 private:
  bool is_est_superlative(std::string_view w) const;
  bool is_adjective_like(std::string_view w) const;
  bool is_adverb_like(std::string_view w) const;

  DetectorLexicon lex_;
};

// The candidate's sentence plus up to `before` preceding and `after`
// following sentences, clamped to the document. Throws std::out_of_range for
// a bad sentence index.
ContextWindow context_window(std::string_view doc, const std::vector<TextSpan>& sentences,
                             size_t sentence_index, size_t before, size_t after);

}  // namespace supersem

#endif  // SUPERSEM_DETECTOR_HPP_
