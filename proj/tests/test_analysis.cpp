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

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "supersem/analysis.hpp"
#include "support.hpp"

using namespace supersem;
using namespace supersem::analysis;

namespace {

const char* const kEvent = "PUT(e, AGENT=Tom & John & Mary, PATIENT=plants, DESTINATION=table)";
const char* const kSubject = "BE_ANGRY(e, AGENT=whole party, PATIENT=Mary)";
const char* const kProperty = "plants";
const char* const kNominal = "plant LOCATION=nursery";

LogProbRecord rec(const std::string& inst, const std::string& cond, const std::string& completion,
                  std::vector<double> lp, bool gold) {
  return {inst, cond, completion, std::move(lp), gold};
}

std::vector<LogProbRecord> party() {
  std::ifstream in(testing::data_dir() / "fixtures" / "logprobs_party.jsonl");
  return parse_logprobs(in);
}

const ConditionSummary& condition(const PreferenceReport& r, const std::string& name) {
  for (const auto& c : r.conditions) {
    if (c.condition == name) return c;
  }
  FAIL("no condition " << name);
  return r.conditions.front();
}

}  // namespace

TEST_CASE("comparison set strings map to semantic types") {
  CHECK(classify_cs_string(kEvent) == SemanticType::kRelativeSCEventive);
  CHECK(classify_cs_string(kProperty) == SemanticType::kPropertySC);
  CHECK(classify_cs_string(kSubject) == SemanticType::kSubjectBasedSC);
  CHECK(classify_cs_string(kNominal) == SemanticType::kRelativeSCNominal);
  CHECK(classify_cs_string("HAVE(e, AGENT=she, THEME=time)") == SemanticType::kSubjectBasedSC);
  // Unparseable output still gets a type.
  CHECK(classify_cs_string("PUT(e, AGENT=") == SemanticType::kRelativeSCNominal);
  CHECK(classify_cs_string("((( nonsense") == SemanticType::kPropertySC);
  CHECK(reading_of(SemanticType::kPropertySC) == Reading::kAbsolute);
  CHECK(reading_of(SemanticType::kSubjectBasedSC) == Reading::kRelative);
}

TEST_CASE("entropy of type distributions") {
  const std::vector<SemanticType> one(5, SemanticType::kPropertySC);
  CHECK(type_entropy(one) == 0.0);
  const std::vector<SemanticType> four{SemanticType::kPropertySC, SemanticType::kRelativeSCNominal,
                                       SemanticType::kRelativeSCEventive, SemanticType::kSubjectBasedSC};
  CHECK(type_entropy(four) == doctest::Approx(std::log(4.0)));
  CHECK(type_entropy(four, LogBase::kBits) == doctest::Approx(2.0));

  const BeamPrediction beam{"x", {kEvent, kProperty, kEvent, kProperty, kSubject}};
  const double h = beam_entropy(beam);
  CHECK(h == doctest::Approx(oracle::entropy({2, 2, 1})).epsilon(1e-12));
  CHECK(h == doctest::Approx(1.0549).epsilon(1e-4));
  CHECK(h >= 0.0);
  CHECK(h <= std::log(4.0) + 1e-12);

  BeamPrediction shuffled{"x", {kSubject, kProperty, kEvent, kProperty, kEvent}};
  CHECK(beam_entropy(shuffled) == doctest::Approx(h));
  CHECK(beam_entropy(beam, LogBase::kNatural, 1) == 0.0);
  CHECK(beam_entropy(beam, LogBase::kNatural, 2) == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(beam_entropy(BeamPrediction{"x", {}}), std::invalid_argument);
}

TEST_CASE("entropy stays within bounds on generated beams") {
  const char* const pool[] = {kEvent, kSubject, kProperty, kNominal};
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    BeamPrediction b{"b", {}};
    const size_t n = 1 + rng() % 10;
    for (size_t j = 0; j < n; ++j) b.hypotheses.push_back(pool[rng() % 4]);
    const double h = beam_entropy(b);
    CHECK(h >= 0.0);
    CHECK(h <= std::log(4.0) + 1e-12);
  }
}

TEST_CASE("average conditional log-probability") {
  const std::vector<double> lp{-1.0, -3.0};
  CHECK(avg_conditional_logprob(lp) == -2.0);
  const std::vector<double> shifted{-1.5, -3.5};
  CHECK(avg_conditional_logprob(shifted) == doctest::Approx(avg_conditional_logprob(lp) - 0.5));
  CHECK_THROWS_AS(avg_conditional_logprob(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("preference picks the highest mean") {
  const std::vector<LogProbRecord> r{
      rec("i", "c", "gold", {-0.5, -0.5}, true),
      rec("i", "c", "other", {-0.1, -2.0}, false),
      rec("i", "c", "third", {-3.0}, false),
  };
  const auto rep = preference_report(r);
  REQUIRE(rep.instances.size() == 1);
  CHECK(rep.instances[0].winner == "gold");
  CHECK(rep.instances[0].gold_preferred);
  CHECK(rep.instances[0].top2_gap == doctest::Approx(0.55));
  CHECK(rep.conditions[0].preference_rate == 1.0);
}

TEST_CASE("ties are failures") {
  const std::vector<LogProbRecord> r{
      rec("i", "c", "gold", {-1.0, -2.0}, true),
      rec("i", "c", "other", {-1.5}, false),
  };
  const auto rep = preference_report(r);
  CHECK(rep.instances[0].tie);
  CHECK(rep.instances[0].winner.empty());
  CHECK_FALSE(rep.instances[0].gold_preferred);
  CHECK(rep.conditions[0].ties == 1);
  CHECK(rep.conditions[0].preference_rate == 0.0);
}

TEST_CASE("preferences survive monotone transforms") {
  const auto records = party();
  const auto base = preference_report(records);
  const auto shifted = preference_report(records, [](double x) { return 3.0 * x + 7.0; });
  const auto expd = preference_report(records, [](double x) { return std::exp(x); });
  REQUIRE(base.instances.size() == shifted.instances.size());
  for (size_t i = 0; i < base.instances.size(); ++i) {
    CHECK(base.instances[i].winner == shifted.instances[i].winner);
    CHECK(base.instances[i].winner == expd.instances[i].winner);
  }
}

TEST_CASE("malformed preference groups are rejected") {
  const std::vector<LogProbRecord> single{rec("i", "c", "gold", {-1.0}, true)};
  CHECK_THROWS_AS(preference_report(single), std::invalid_argument);
  const std::vector<LogProbRecord> two_gold{rec("i", "c", "a", {-1.0}, true),
                                            rec("i", "c", "b", {-2.0}, true)};
  CHECK_THROWS_AS(preference_report(two_gold), std::invalid_argument);
  std::istringstream positive(
      "{\"instance_id\": \"i\", \"condition\": \"c\", \"completion\": \"x\", "
      "\"token_logprobs\": [0.5], \"gold\": true}\n");
  CHECK_THROWS_AS(parse_logprobs(positive), std::invalid_argument);
}

TEST_CASE("context shifts the preferred completion") {
  const auto rep = preference_report(party());
  const auto& none = condition(rep, "no-context");
  const auto& ctx = condition(rep, "context");
  CHECK(none.instances == 2);
  CHECK(ctx.instances == 2);
  CHECK(ctx.preference_rate == 1.0);
  CHECK(none.preference_rate == 0.5);
  CHECK(ctx.mean_top2_gap > none.mean_top2_gap);

  // Same scores without context, so the same winner for both instances.
  std::map<std::string, std::string> winners;
  for (const auto& p : rep.instances) {
    if (p.condition == "no-context") winners[p.instance_id] = p.winner;
  }
  REQUIRE(winners.size() == 2);
  CHECK(winners.begin()->second == winners.rbegin()->second);
  const auto js = preference_report_to_json(rep);
  CHECK(js["conditions"].size() == 2);
}

TEST_CASE("challenge report") {
  const ChallengeItem item{"ch", "John put the tallest plant on the table.",
                           {{"ctx a", Reading::kAbsolute, "plant"},
                            {"ctx r", Reading::kRelative, kEvent}}};
  const std::vector<ChallengeItem> items{item};
  // Gold sits at rank 3 for the relative variant; the absolute variant gets
  // an eventive guess first.
  const std::vector<BeamPrediction> beams{
      {variant_key(item, 0), {kEvent, "plant", "pot"}},
      {variant_key(item, 1), {kProperty, "plant", kEvent, "table"}},
  };
  CHECK(variant_key(item, 1) == "ch:1");
  auto rep = challenge_report(items, beams, 5);
  CHECK(rep.absolute.n == 1);
  CHECK(rep.relative.n == 1);
  CHECK(rep.absolute.top_1 == 0.0);
  CHECK(rep.absolute.top_k == 1.0);
  CHECK(rep.absolute.type_match == 0.0);
  CHECK(rep.relative.top_1 == 0.0);
  CHECK(rep.relative.top_k == 1.0);
  CHECK(rep.relative.type_match == 0.0);

  rep = challenge_report(items, beams, 2);
  CHECK(rep.relative.top_k == 0.0);
  CHECK(rep.absolute.top_k == 1.0);

  const std::vector<BeamPrediction> missing{beams[0]};
  CHECK_THROWS_AS(challenge_report(items, missing), std::invalid_argument);
  auto extra = beams;
  extra.push_back({"zz:0", {"x"}});
  CHECK_THROWS_AS(challenge_report(items, extra), std::invalid_argument);
}

TEST_CASE("challenge set fixture") {
  std::ifstream in(testing::data_dir() / "fixtures" / "challenge_set.jsonl");
  const auto items = parse_challenge_set(in);
  REQUIRE(items.size() == 20);
  std::vector<BeamPrediction> oracle_beams;
  for (const auto& it : items) {
    REQUIRE(it.variants.size() == 2);
    for (size_t v = 0; v < it.variants.size(); ++v) {
      const auto& var = it.variants[v];
      CHECK(reading_of(classify_cs_string(var.cs)) == var.reading);
      oracle_beams.push_back({variant_key(it, v), {var.cs}});
    }
  }
  const auto rep = challenge_report(items, oracle_beams);
  CHECK(rep.absolute.top_1 == 1.0);
  CHECK(rep.relative.top_1 == 1.0);
  CHECK(rep.absolute.type_match == 1.0);
  CHECK(rep.relative.top_k >= rep.relative.top_1);
}
