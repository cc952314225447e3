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

// SuperSem-format corpora: JSONL I/O, statistics, splits and the two
// discourse-restriction string-matching analyses.
//
// One JSON object per line (see docs/corpus_schema.md):
//
//   {"id": ..., "domain": "Wikipedia", "doc_id": ..., "doc_text": ...,
//    "sentence_span": [s, e], "trigger_span": [s, e], "is_superlative": true,
//    "frame": {"target": ..., "cs": ..., "anchor": {"index": 2, "role": "ASSET"},
//              "property": ..., "orientation": "positive", "rank": 1,
//              "implicit": false, "amount": null},
//    "semantic_type": "RelativeSC_Eventive"}

#ifndef SUPERSEM_CORPUS_HPP_
#define SUPERSEM_CORPUS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "supersem/detector.hpp"
#include "supersem/frame.hpp"

namespace supersem {

inline constexpr int kCorpusSchemaVersion = 1;

enum class Domain { kWikipedia, kReviews, kDialogue, kLiterature, kWikinews };

inline constexpr std::array<Domain, 5> kAllDomains = {
    Domain::kWikipedia, Domain::kReviews, Domain::kDialogue, Domain::kLiterature,
    Domain::kWikinews};

std::string_view to_string(Domain d);
std::optional<Domain> parse_domain(std::string_view s);

struct AnnotatedInstance {
  std::string id;
  Domain domain = Domain::kWikipedia;
  std::string doc_id;
  std::string doc_text;
  TextSpan sentence_span;
  TextSpan trigger_span;
  bool is_superlative = false;
  std::optional<SuperlativeFrame> frame;  // present iff is_superlative
  std::optional<SemanticType> stored_type;

  std::string_view sentence() const {
    return std::string_view(doc_text).substr(sentence_span.start, sentence_span.size());
  }
  std::string_view trigger() const {
    return std::string_view(doc_text).substr(trigger_span.start, trigger_span.size());
  }
  bool is_eventive() const { return frame && frame->cs.is_eventive(); }

  bool operator==(const AnnotatedInstance&) const = default;
};

using Corpus = std::vector<AnnotatedInstance>;

struct LoadIssue {
  size_t line = 0;  // 1-based
  Severity severity = Severity::kError;
  std::string field;
  std::string message;
};

struct LoadReport {
  std::vector<LoadIssue> issues;
  size_t lines_read = 0;

  bool ok() const { return issues.empty(); }
  size_t error_count() const;
};

struct LoadOptions {
  bool strict = false;  // strict frame validation
  const RoleInventory* roles = nullptr;
};

struct LoadResult {
  Corpus corpus;
  LoadReport report;
};

// Lines with errors are reported and skipped; lines with only warnings are
// kept and their warnings reported.
LoadResult load_corpus(std::istream& in, const LoadOptions& opts = {});
LoadResult load_corpus(const std::filesystem::path& path, const LoadOptions& opts = {});

// Throws std::invalid_argument with a message naming the offending field.
AnnotatedInstance instance_from_json(const nlohmann::json& j);
nlohmann::ordered_json instance_to_json(const AnnotatedInstance& inst);
SuperlativeFrame frame_from_json(const nlohmann::json& j);
nlohmann::ordered_json frame_to_json(const SuperlativeFrame& frame);

void export_corpus(const Corpus& corpus, std::ostream& out);

// Detector input and output records. Documents are JSONL {id, text,
// domain?}; candidates are JSONL {doc_id, sentence_index, start, end,
// surface, kind, filtered, reason}.
std::vector<Document> parse_documents(std::istream& in);
nlohmann::ordered_json document_to_json(const Document& doc);
nlohmann::ordered_json candidate_to_json(const Candidate& c);
Candidate candidate_from_json(const nlohmann::json& j);
std::vector<Candidate> parse_candidates(std::istream& in);

// ---------------------------------------------------------------------------
// Statistics

struct DomainCounts {
  size_t superlatives = 0;
  size_t non_superlatives = 0;
  size_t eventive = 0;
  size_t implicit = 0;

  bool operator==(const DomainCounts&) const = default;
};

struct CorpusStats {
  std::map<Domain, DomainCounts> per_domain;  // always holds all five domains
  DomainCounts total;
  std::map<Domain, std::map<SemanticType, size_t>> semantic_types;
  std::map<std::string, size_t> roles;       // target + CS argument roles
  std::map<std::string, size_t> properties;  // one per superlative
  std::map<std::string, size_t> predicates;  // CS predicate lemmas (eventive)
  size_t role_occurrences = 0;

  // Percentages of superlatives, rounded to one decimal.
  double implicit_percent() const;
  double eventive_percent() const;
};

CorpusStats compute_stats(const Corpus& corpus,
                          const LightVerbLexicon& light_verbs = default_light_verbs());

// Named layouts: "counts", "types", "roles", "properties".
std::string render_stats_table(const CorpusStats& stats, std::string_view table, size_t top_n = 10);
nlohmann::ordered_json stats_to_json(const CorpusStats& stats);

// ---------------------------------------------------------------------------
// Splits

struct SplitFractions {
  double train = 0.8;
  double dev = 0.1;
  double test = 0.1;
};

struct CorpusSplit {
  Corpus train;
  Corpus dev;
  Corpus test;
};

// Per domain: instances are ordered by id, shuffled with `seed`, then
// floor(n*dev) go to dev, floor(n*test) to test and the rest to train.
// Throws std::invalid_argument if the fractions do not sum to 1.
CorpusSplit split_corpus(const Corpus& corpus, uint64_t seed, SplitFractions fractions = {},
                         bool superlatives_only = false);

// Deterministic Fisher-Yates permutation of [0, n) from mt19937_64(seed).
std::vector<size_t> seeded_permutation(size_t n, uint64_t seed);

// ---------------------------------------------------------------------------
// Discourse restriction analyses

struct Rate {
  size_t numerator = 0;
  size_t denominator = 0;
  double value() const {
    return denominator == 0 ? 0.0 : static_cast<double>(numerator) / static_cast<double>(denominator);
  }
};

// Fraction of eventive instances with at least one CS argument whose text
// (match form) occurs in the document but not in the superlative sentence.
// nullopt when the corpus has no eventive instances.
std::optional<Rate> implicit_arg_rate(const Corpus& corpus);

struct NpRelation {
  std::string doc_id;  // "*" matches any document
  std::string np_a;
  std::string preposition;
  std::string np_b;
};

class RelationFormatError : public std::runtime_error {
 public:
  RelationFormatError(size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Tab-separated rows: doc_id, np_a, preposition, np_b. '#' comments and
// blank lines are skipped.
std::vector<NpRelation> parse_relations(std::istream& in);
std::vector<NpRelation> load_relations(const std::filesystem::path& path);

// Fraction of implicit instances restricted by an NP relation anchored at
// the superlative NP. nullopt when there are no implicit instances.
std::optional<Rate> np_relation_overlap(const Corpus& corpus, const std::vector<NpRelation>& relations);

}  // namespace supersem

#endif  // SUPERSEM_CORPUS_HPP_
