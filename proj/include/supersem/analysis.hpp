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

// Ambiguity analyses over externally produced model outputs: typing of
// predicted comparison sets, entropy of interpretation types in a beam,
// mean conditional log-probability preferences and the challenge-set report.

#ifndef SUPERSEM_ANALYSIS_HPP_
#define SUPERSEM_ANALYSIS_HPP_

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "supersem/frame.hpp"
#include "supersem/metrics.hpp"

namespace supersem::analysis {

// Total: unparseable strings are PropertySC unless they contain a
// "ROLE=" pattern, in which case RelativeSC_Nominal.
SemanticType classify_cs_string(std::string_view cs,
                                const LightVerbLexicon& light_verbs = default_light_verbs());

struct BeamPrediction {
  std::string instance_id;
  std::vector<std::string> hypotheses;  // rank order
};

enum class LogBase { kNatural, kBits };

// Shannon entropy of the semantic-type distribution among the first `top_n`
// hypotheses (0 = all). 0 log 0 := 0. Throws std::invalid_argument for an
// empty beam.
double beam_entropy(const BeamPrediction& beam, LogBase base = LogBase::kNatural, size_t top_n = 0,
                    const LightVerbLexicon& light_verbs = default_light_verbs());

// Same, from already-typed hypotheses.
double type_entropy(std::span<const SemanticType> types, LogBase base = LogBase::kNatural);

struct LogProbRecord {
  std::string instance_id;
  std::string condition;  // "no-context", "context-1", ...
  std::string completion;
  std::vector<double> token_logprobs;
  bool gold = false;
};

// Arithmetic mean of the token log-probabilities. Throws
// std::invalid_argument for an empty list.
double avg_conditional_logprob(std::span<const double> token_logprobs);
inline double avg_conditional_logprob(const LogProbRecord& r) {
  return avg_conditional_logprob(r.token_logprobs);
}

struct InstancePreference {
  std::string instance_id;
  std::string condition;
  std::string winner;  // completion with the highest mean; empty on a tie
  bool gold_preferred = false;
  bool tie = false;
  double top2_gap = 0;  // |mean(best) - mean(second)|
};

struct ConditionSummary {
  std::string condition;
  size_t instances = 0;
  size_t gold_preferred = 0;
  size_t ties = 0;
  double preference_rate = 0;
  double mean_top2_gap = 0;
};

struct PreferenceReport {
  std::vector<ConditionSummary> conditions;  // sorted by condition name
  std::vector<InstancePreference> instances;  // sorted by (instance, condition)
};

// Each (instance, condition) group needs >= 2 completions and exactly one
// gold; otherwise std::invalid_argument. Ties for the top mean count as
// failures and are flagged. `transform` (monotone increasing) is applied to
// every mean before comparing; identity when empty.
PreferenceReport preference_report(std::span<const LogProbRecord> records,
                                   const std::function<double(double)>& transform = {});
std::string render_preference_report(const PreferenceReport& rep);
nlohmann::ordered_json preference_report_to_json(const PreferenceReport& rep);

enum class Reading { kAbsolute, kRelative };
std::string_view to_string(Reading r);
std::optional<Reading> parse_reading(std::string_view s);
// absolute := PropertySC; every other type is relative.
Reading reading_of(SemanticType t);

struct ChallengeVariant {
  std::string context;
  Reading reading = Reading::kAbsolute;
  std::string cs;  // gold comparison set, frame notation
};

struct ChallengeItem {
  std::string id;
  std::string sentence;
  std::vector<ChallengeVariant> variants;
};

// Beam id of one context variant: "<item_id>:<variant_index>".
std::string variant_key(const ChallengeItem& item, size_t variant);

struct ReadingScores {
  size_t n = 0;
  double top_1 = 0;
  double top_k = 0;
  double type_match = 0;  // "comp/abs match"
};

struct ChallengeReport {
  ReadingScores absolute;
  ReadingScores relative;
  size_t k = 5;
};

// Throws std::invalid_argument if a variant has no beam or a beam matches
// no variant.
ChallengeReport challenge_report(std::span<const ChallengeItem> items,
                                 std::span<const BeamPrediction> beams, size_t k = 5,
                                 eval::Normalization policy = eval::Normalization::kDefault,
                                 const LightVerbLexicon& light_verbs = default_light_verbs());
std::string render_challenge_report(const ChallengeReport& rep);
nlohmann::ordered_json challenge_report_to_json(const ChallengeReport& rep);

// JSONL readers; throw std::invalid_argument naming the line on bad input.
std::vector<BeamPrediction> parse_beams(std::istream& in);
std::vector<LogProbRecord> parse_logprobs(std::istream& in);
std::vector<ChallengeItem> parse_challenge_set(std::istream& in);

}  // namespace supersem::analysis

#endif  // SUPERSEM_ANALYSIS_HPP_
