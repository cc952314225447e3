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

// Agreement and prediction metrics: exact match, token IOU, ROUGE-1,
// role-argument IOU accuracy, Cohen's kappa, and the IAA / slot-score
// report layouts.
//
// Tokenization for every metric: ASCII punctuation is replaced by spaces,
// text is lowercased, and the result is split on whitespace.

#ifndef SUPERSEM_METRICS_HPP_
#define SUPERSEM_METRICS_HPP_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "supersem/corpus.hpp"
#include "supersem/frame.hpp"

namespace supersem::eval {

enum class Normalization {
  kDefault,   // case-fold, collapse whitespace, strip edge punctuation
  kCaseFold,  // case-fold and collapse whitespace only
  kVerbatim,
};

std::optional<Normalization> parse_normalization(std::string_view s);
std::string normalize(std::string_view s, Normalization policy);

// 1 iff the normalized strings are equal.
int exact_match(std::string_view gold, std::string_view pred,
                Normalization policy = Normalization::kDefault);

// For frame-notation slots: when both sides parse, compares structures with
// order-insensitive arguments (values normalized by `policy`); otherwise
// falls back to exact_match().
int exact_match_frame(std::string_view gold, std::string_view pred,
                      Normalization policy = Normalization::kDefault);

// |G ∩ P| / |G ∪ P| over unigram token sets; 1 when both are empty.
double token_iou(std::string_view gold, std::string_view pred);

enum class RougeMode { kF1, kRecall };

// Unigram overlap with clipped counts; 1 when both are empty.
double rouge1(std::string_view gold, std::string_view pred, RougeMode mode = RougeMode::kF1);

// Fraction of gold arguments matched by a same-role predicted argument with
// token IOU >= threshold. Repeated roles are paired one-to-one so that the
// number of matched gold arguments is maximal.
double role_arg_iou_accuracy(const SetExpr& gold, const SetExpr& pred, double threshold = 0.5);

// Throws std::invalid_argument on length mismatch or empty input.
double cohens_kappa(std::span<const std::string> a, std::span<const std::string> b);

// ---------------------------------------------------------------------------
// Inter-annotator agreement

struct IaaRow {
  std::string name;
  std::optional<double> accuracy;  // absent when the row has no support
  std::optional<double> kappa;     // categorical rows only
  size_t support = 0;
};

struct IaaReport {
  std::vector<IaaRow> rows;
  size_t instances = 0;
};

// Row names, in report order.
inline constexpr const char* kIaaRowNames[] = {
    "event vs. none", "exact target",    "exact CS",      "exact anchor",
    "exact property", "exact orientation", "exact implicit", "event predicate",
    "CS (no event)",  "role arg. iou>=0.5"};

// Both annotation sets must cover the same instance ids (throws
// std::invalid_argument otherwise). Only instances annotated as superlative
// by both sides contribute.
IaaReport iaa_report(const Corpus& a, const Corpus& b,
                     Normalization policy = Normalization::kDefault);
std::string render_iaa_report(const IaaReport& report);
nlohmann::ordered_json iaa_report_to_json(const IaaReport& report);

// ---------------------------------------------------------------------------
// Prediction scoring

enum class Slot { kTarget, kCs, kAnchor, kProperty, kOrientation, kImplicit, kFull };

std::string_view to_string(Slot s);
std::optional<Slot> parse_slot(std::string_view s);

struct PredictionRecord {
  std::string instance_id;
  Slot slot = Slot::kCs;
  std::string prediction;
};

// JSONL {instance_id, slot, prediction}. Throws std::invalid_argument with
// the line number on malformed lines or unknown slots.
std::vector<PredictionRecord> parse_predictions(std::istream& in);

// Gold text of one slot, in the same format models are asked to produce.
std::string gold_slot_text(const SuperlativeFrame& frame, Slot slot);

struct ScoreRow {
  std::string name;  // "target", "target full", "target event", ...
  Slot slot = Slot::kTarget;
  bool from_full = false;
  bool eventive_only = false;
  double em = 0;
  double iou = 0;
  double rouge = 0;
  size_t support = 0;
  size_t missing = 0;
};

struct ScoreReport {
  std::vector<ScoreRow> rows;
};

// Scores every slot that has at least one prediction. Missing predictions
// score 0 and are counted. Throws std::invalid_argument for predictions
// referencing unknown or non-superlative instances, or duplicates.
ScoreReport score_predictions(const Corpus& gold, const std::vector<PredictionRecord>& preds,
                              Normalization policy = Normalization::kDefault);
std::string render_score_report(const ScoreReport& report);
nlohmann::ordered_json score_report_to_json(const ScoreReport& report);

}  // namespace supersem::eval

#endif  // SUPERSEM_METRICS_HPP_
