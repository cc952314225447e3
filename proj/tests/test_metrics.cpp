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

#include <sstream>

#include "oracles.hpp"
#include "supersem/metrics.hpp"
#include "support.hpp"

using namespace supersem;
using namespace supersem::eval;

namespace {

Corpus sample() {
  return load_corpus(testing::data_dir() / "sample" / "sample_corpus.jsonl").corpus;
}

const IaaRow& row(const IaaReport& r, const std::string& name) {
  for (const auto& x : r.rows) {
    if (x.name == name) return x;
  }
  FAIL("no row " << name);
  return r.rows.front();
}

}  // namespace

TEST_CASE("exact match normalization") {
  CHECK(exact_match("popularity", "Popularity ") == 1);
  CHECK(exact_match("popularity", "popularity.") == 1);
  CHECK(exact_match("popularity", "Popularity ", Normalization::kVerbatim) == 0);
  CHECK(exact_match("a  b", "A b", Normalization::kCaseFold) == 1);
  CHECK(exact_match("size", "sizes") == 0);
  CHECK(parse_normalization("casefold") == Normalization::kCaseFold);
  CHECK_FALSE(parse_normalization("stem").has_value());
}

TEST_CASE("structural exact match ignores argument order") {
  CHECK(exact_match_frame("CATCH(e, AGENT=Tom, THEME=fish)", "catch(x, THEME=Fish, AGENT=tom)") == 1);
  CHECK(exact_match_frame("CATCH(e, AGENT=Tom, THEME=fish)", "CATCH(e, AGENT=Tom)") == 0);
  CHECK(exact_match_frame("fish LOCATION=lake", "fish  LOCATION=Lake") == 1);
  CHECK(exact_match_frame("fish LOCATION=lake", "CATCH(e, LOCATION=lake)") == 0);
  CHECK(exact_match_frame("not ( parseable", "Not ( parseable") == 1);
}

TEST_CASE("token IOU and ROUGE-1") {
  CHECK(token_iou("the largest fish", "largest fish") == doctest::Approx(2.0 / 3.0));
  CHECK(token_iou("", "") == 1.0);
  CHECK(token_iou("fish", "") == 0.0);
  CHECK(rouge1("the largest fish in the lake", "largest fish") == doctest::Approx(0.5));
  CHECK(rouge1("the largest fish in the lake", "largest fish", RougeMode::kRecall) ==
        doctest::Approx(2.0 / 6.0));
  CHECK(rouge1("", "") == 1.0);
  CHECK(rouge1("the the", "the") == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("role argument accuracy") {
  const SetExpr g = parse_frame_notation("USE(e, AGENT=psychologists, THEME=surveys)");
  CHECK(role_arg_iou_accuracy(g, parse_frame_notation("USE(e, AGENT=the psychologists, THEME=surveys)")) ==
        1.0);
  CHECK(role_arg_iou_accuracy(g, parse_frame_notation("USE(e, THEME=psychologists)")) == 0.0);
  CHECK(role_arg_iou_accuracy(g, parse_frame_notation("USE(e, AGENT=psychologists)")) == 0.5);
  // Greedy pairing would take "a b" for the first gold argument and lose the
  // second; the best pairing matches both.
  const SetExpr rep = parse_frame_notation("GO(e, THEME=a b, THEME=a b c d)");
  const SetExpr p = parse_frame_notation("GO(e, THEME=a b c, THEME=a b)");
  CHECK(role_arg_iou_accuracy(rep, p) == 1.0);
  CHECK(oracle::role_arg_accuracy(rep, p) == 1.0);
}

TEST_CASE("kappa edge cases") {
  const std::vector<std::string> ab{"a", "b", "a", "b"};
  const std::vector<std::string> ba{"b", "a", "b", "a"};
  CHECK(cohens_kappa(ab, ba) == doctest::Approx(-1.0));
  CHECK(cohens_kappa(ab, ab) == doctest::Approx(1.0));
  const std::vector<std::string> all_a{"a", "a", "a", "a"};
  CHECK(cohens_kappa(all_a, all_a) == 1.0);
  const std::vector<std::string> x{"a", "a", "b", "b"};
  const std::vector<std::string> y{"a", "b", "a", "b"};
  CHECK(cohens_kappa(x, y) == doctest::Approx(0.0));
  const std::vector<std::string> shorter{"a"};
  CHECK_THROWS_AS(cohens_kappa(x, shorter), std::invalid_argument);
  CHECK_THROWS_AS(cohens_kappa({}, {}), std::invalid_argument);
}

TEST_CASE("metrics agree with the reference implementations") {
  const auto cases = testing::metric_fixture();
  REQUIRE(cases.size() == 50);
  std::vector<std::string> la, lb;
  for (const auto& c : cases) {
    CAPTURE(c.gold);
    CAPTURE(c.pred);
    CHECK(exact_match(c.gold, c.pred) == oracle::exact_match(c.gold, c.pred));
    CHECK(std::abs(token_iou(c.gold, c.pred) - oracle::token_iou(c.gold, c.pred)) <= 1e-12);
    CHECK(std::abs(rouge1(c.gold, c.pred) - oracle::rouge1_f1(c.gold, c.pred)) <= 1e-12);
    CHECK(std::abs(role_arg_iou_accuracy(c.gold_cs, c.pred_cs) -
                   oracle::role_arg_accuracy(c.gold_cs, c.pred_cs)) <= 1e-12);
    la.push_back(c.label_a);
    lb.push_back(c.label_b);
  }
  CHECK(std::abs(cohens_kappa(la, lb) - oracle::kappa(la, lb)) <= 1e-12);
  for (size_t seed = 1; seed <= 20; ++seed) {
    for (const auto& c : testing::metric_fixture(10, seed)) {
      CHECK(std::abs(role_arg_iou_accuracy(c.gold_cs, c.pred_cs) -
                     oracle::role_arg_accuracy(c.gold_cs, c.pred_cs)) <= 1e-12);
    }
  }
}

TEST_CASE("metric bounds and symmetry") {
  for (const auto& c : testing::metric_fixture(200, 77)) {
    const double iou = token_iou(c.gold, c.pred);
    const double r = rouge1(c.gold, c.pred);
    CHECK(iou >= 0.0);
    CHECK(iou <= 1.0);
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
    CHECK(iou == doctest::Approx(token_iou(c.pred, c.gold)));
    CHECK(r == doctest::Approx(rouge1(c.pred, c.gold)));
    CHECK(token_iou(c.gold, c.gold) == 1.0);
  }
}

TEST_CASE("IAA rows") {
  const Corpus a = sample();
  const auto self = iaa_report(a, a);
  REQUIRE(self.rows.size() == std::size(kIaaRowNames));
  for (size_t i = 0; i < self.rows.size(); ++i) {
    CHECK(self.rows[i].name == kIaaRowNames[i]);
    if (self.rows[i].accuracy) CHECK(*self.rows[i].accuracy == 1.0);
  }
  CHECK(row(self, "event vs. none").kappa.has_value());
  CHECK_FALSE(row(self, "exact target").kappa.has_value());

  Corpus ten;
  for (const auto& inst : a) {
    if (inst.frame && ten.size() < 10) ten.push_back(inst);
  }
  REQUIRE(ten.size() == 10);
  Corpus flipped = ten;
  auto& f = *flipped[3].frame;
  f.orientation = f.orientation == Orientation::kPositive ? Orientation::kNegative : Orientation::kPositive;
  const auto rep = iaa_report(ten, flipped);
  CHECK(rep.instances == 10);
  CHECK(*row(rep, "exact orientation").accuracy == doctest::Approx(0.9));
  CHECK(*row(rep, "exact CS").accuracy == 1.0);

  CHECK_THROWS_AS(iaa_report(ten, Corpus(ten.begin(), ten.begin() + 9)), std::invalid_argument);
  const auto js = iaa_report_to_json(rep);
  CHECK(js["instances"] == 10);
  CHECK(render_iaa_report(rep).find("exact orientation") != std::string::npos);
}

TEST_CASE("prediction scoring") {
  Corpus gold;
  for (const auto& inst : sample()) {
    if (inst.frame && gold.size() < 2) gold.push_back(inst);
  }
  REQUIRE(gold.size() == 2);
  std::vector<PredictionRecord> same;
  for (const auto& g : gold) same.push_back({g.id, Slot::kCs, gold_slot_text(*g.frame, Slot::kCs)});
  auto rep = score_predictions(gold, same);
  REQUIRE_FALSE(rep.rows.empty());
  CHECK(rep.rows[0].name == "cs");
  CHECK(rep.rows[0].em == 1.0);
  CHECK(rep.rows[0].iou == 1.0);
  CHECK(rep.rows[0].rouge == 1.0);

  auto half = same;
  half[1].prediction = "unrelated words entirely";
  CHECK(score_predictions(gold, half).rows[0].em == doctest::Approx(0.5));

  auto reversed = std::vector<PredictionRecord>(half.rbegin(), half.rend());
  CHECK(score_predictions(gold, reversed).rows[0].em == doctest::Approx(0.5));
  CHECK(score_predictions(gold, reversed).rows[0].iou == score_predictions(gold, half).rows[0].iou);

  const std::vector<PredictionRecord> one{same[0]};
  rep = score_predictions(gold, one);
  CHECK(rep.rows[0].missing == 1);
  CHECK(rep.rows[0].em == doctest::Approx(0.5));

  std::vector<PredictionRecord> dup{same[0], same[0]};
  CHECK_THROWS_AS(score_predictions(gold, dup), std::invalid_argument);
  const std::vector<PredictionRecord> unknown{{"nope", Slot::kCs, "x"}};
  CHECK_THROWS_AS(score_predictions(gold, unknown), std::invalid_argument);
}

TEST_CASE("full-frame predictions are scored per slot") {
  Corpus gold;
  for (const auto& inst : sample()) {
    if (inst.frame && gold.size() < 3) gold.push_back(inst);
  }
  std::vector<PredictionRecord> full;
  for (const auto& g : gold) full.push_back({g.id, Slot::kFull, format_full_frame(*g.frame)});
  const auto rep = score_predictions(gold, full);
  REQUIRE_FALSE(rep.rows.empty());
  for (const auto& r : rep.rows) {
    CAPTURE(r.name);
    CHECK(r.from_full);
    CHECK(r.em == 1.0);
  }
}

TEST_CASE("prediction files") {
  std::istringstream ok("{\"instance_id\": \"a\", \"slot\": \"cs\", \"prediction\": \"fish\"}\n");
  const auto p = parse_predictions(ok);
  REQUIRE(p.size() == 1);
  CHECK(p[0].slot == Slot::kCs);
  std::istringstream bad("\n{\"instance_id\": \"a\", \"slot\": \"colour\", \"prediction\": \"x\"}\n");
  try {
    parse_predictions(bad);
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}
