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

#include "supersem/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <set>
#include <sstream>

#include "supersem/text.hpp"

namespace supersem::analysis {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

bool has_role_assignment(std::string_view s) {
  for (size_t i = 0; i < s.size(); ++i) {
    if (!text::is_upper(s[i]) || (i > 0 && (text::is_upper(s[i - 1]) || s[i - 1] == '_'))) {
      continue;
    }
    size_t j = i;
    while (j < s.size() && (text::is_upper(s[j]) || text::is_digit(s[j]) || s[j] == '_')) ++j;
    if (j < s.size() && s[j] == '=') return true;
  }
  return false;
}

}  // namespace

SemanticType classify_cs_string(std::string_view cs, const LightVerbLexicon& light_verbs) {
  if (auto e = try_parse_frame_notation(cs)) return classify_semantic_type(*e, light_verbs);
  return has_role_assignment(cs) ? SemanticType::kRelativeSCNominal : SemanticType::kPropertySC;
}

double type_entropy(std::span<const SemanticType> types, LogBase base) {
  if (types.empty()) throw std::invalid_argument("entropy of an empty beam");
  std::map<SemanticType, size_t> counts;
  for (SemanticType t : types) ++counts[t];
  const double n = static_cast<double>(types.size());
  double h = 0;
  for (const auto& [t, c] : counts) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  if (base == LogBase::kBits) h /= std::log(2.0);
  return h == 0.0 ? 0.0 : h;  // avoid -0
}

double beam_entropy(const BeamPrediction& beam, LogBase base, size_t top_n,
                    const LightVerbLexicon& light_verbs) {
  if (beam.hypotheses.empty()) {
    throw std::invalid_argument("beam '" + beam.instance_id + "' has no hypotheses");
  }
  const size_t n = top_n == 0 ? beam.hypotheses.size() : std::min(top_n, beam.hypotheses.size());
  std::vector<SemanticType> types;
  types.reserve(n);
  for (size_t i = 0; i < n; ++i) types.push_back(classify_cs_string(beam.hypotheses[i], light_verbs));
  return type_entropy(types, base);
}

double avg_conditional_logprob(std::span<const double> lp) {
  if (lp.empty()) throw std::invalid_argument("token log-probability list is empty");
  double sum = 0;
  for (double v : lp) sum += v;
  return sum / static_cast<double>(lp.size());
}

PreferenceReport preference_report(std::span<const LogProbRecord> records,
                                   const std::function<double(double)>& transform) {
  std::map<std::pair<std::string, std::string>, std::vector<const LogProbRecord*>> groups;
  for (const auto& r : records) groups[{r.instance_id, r.condition}].push_back(&r);

  PreferenceReport rep;
  std::map<std::string, ConditionSummary> summary;
  for (const auto& [key, recs] : groups) {
    const auto& [instance, condition] = key;
    const std::string where = "instance '" + instance + "' condition '" + condition + "'";
    if (recs.size() < 2) throw std::invalid_argument(where + ": needs at least two completions");
    const auto golds = std::count_if(recs.begin(), recs.end(), [](const auto* r) { return r->gold; });
    if (golds != 1) {
      throw std::invalid_argument(where + ": expected exactly one gold completion, found " +
                                  std::to_string(golds));
    }
    struct Scored {
      const LogProbRecord* rec;
      double raw;
      double key;
    };
    std::vector<Scored> scored;
    for (const auto* r : recs) {
      const double m = avg_conditional_logprob(*r);
      scored.push_back({r, m, transform ? transform(m) : m});
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const Scored& a, const Scored& b) { return a.key > b.key; });

    InstancePreference p;
    p.instance_id = instance;
    p.condition = condition;
    p.tie = scored[0].key == scored[1].key;
    p.winner = p.tie ? "" : scored[0].rec->completion;
    p.gold_preferred = !p.tie && scored[0].rec->gold;
    p.top2_gap = std::fabs(scored[0].raw - scored[1].raw);
    rep.instances.push_back(p);

    ConditionSummary& s = summary[condition];
    s.condition = condition;
    ++s.instances;
    s.gold_preferred += p.gold_preferred ? 1 : 0;
    s.ties += p.tie ? 1 : 0;
    s.mean_top2_gap += p.top2_gap;
  }
  for (auto& [c, s] : summary) {
    const double n = static_cast<double>(s.instances);
    s.preference_rate = static_cast<double>(s.gold_preferred) / n;
    s.mean_top2_gap /= n;
    rep.conditions.push_back(s);
  }
  return rep;
}

std::string render_preference_report(const PreferenceReport& rep) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "condition" << std::right << std::setw(10) << "n"
     << std::setw(12) << "preferred" << std::setw(8) << "ties" << std::setw(14) << "mean gap" << '\n';
  for (const auto& c : rep.conditions) {
    os << std::left << std::setw(16) << c.condition << std::right << std::setw(10) << c.instances
       << std::fixed << std::setprecision(3) << std::setw(12) << c.preference_rate << std::setw(8)
       << c.ties << std::setw(14) << c.mean_top2_gap << '\n';
  }
  for (const auto& p : rep.instances) {
    if (p.tie) os << "tie: " << p.instance_id << " [" << p.condition << "]\n";
  }
  return os.str();
}

ojson preference_report_to_json(const PreferenceReport& rep) {
  ojson conds = ojson::array();
  for (const auto& c : rep.conditions) {
    conds.push_back(ojson{{"condition", c.condition},
                          {"instances", c.instances},
                          {"gold_preferred", c.gold_preferred},
                          {"ties", c.ties},
                          {"preference_rate", c.preference_rate},
                          {"mean_top2_gap", c.mean_top2_gap}});
  }
  ojson inst = ojson::array();
  for (const auto& p : rep.instances) {
    inst.push_back(ojson{{"instance_id", p.instance_id},
                         {"condition", p.condition},
                         {"winner", p.winner},
                         {"gold_preferred", p.gold_preferred},
                         {"tie", p.tie},
                         {"top2_gap", p.top2_gap}});
  }
  return ojson{{"conditions", conds}, {"instances", inst}};
}

// ---------------------------------------------------------------------------
// Challenge set

std::string_view to_string(Reading r) { return r == Reading::kAbsolute ? "absolute" : "relative"; }

std::optional<Reading> parse_reading(std::string_view s) {
  if (s == "absolute") return Reading::kAbsolute;
  if (s == "relative") return Reading::kRelative;
  return std::nullopt;
}

Reading reading_of(SemanticType t) {
  return t == SemanticType::kPropertySC ? Reading::kAbsolute : Reading::kRelative;
}

std::string variant_key(const ChallengeItem& item, size_t variant) {
  return item.id + ":" + std::to_string(variant);
}

ChallengeReport challenge_report(std::span<const ChallengeItem> items,
                                 std::span<const BeamPrediction> beams, size_t k,
                                 eval::Normalization policy, const LightVerbLexicon& light_verbs) {
  std::map<std::string, const BeamPrediction*> by_id;
  for (const auto& b : beams) {
    if (!by_id.emplace(b.instance_id, &b).second) {
      throw std::invalid_argument("duplicate beam for '" + b.instance_id + "'");
    }
  }
  ChallengeReport rep;
  rep.k = k;
  std::set<std::string> used;
  struct Sums {
    size_t n = 0, top1 = 0, topk = 0, type = 0;
  } abs_sum, rel_sum;

  for (const auto& item : items) {
    for (size_t v = 0; v < item.variants.size(); ++v) {
      const std::string key = variant_key(item, v);
      auto it = by_id.find(key);
      if (it == by_id.end()) throw std::invalid_argument("no beam for challenge variant '" + key + "'");
      used.insert(key);
      const auto& hyps = it->second->hypotheses;
      if (hyps.empty()) throw std::invalid_argument("empty beam for '" + key + "'");
      const ChallengeVariant& var = item.variants[v];
      Sums& s = var.reading == Reading::kAbsolute ? abs_sum : rel_sum;
      ++s.n;
      if (eval::exact_match_frame(var.cs, hyps[0], policy)) ++s.top1;
      const size_t limit = std::min(k, hyps.size());
      for (size_t h = 0; h < limit; ++h) {
        if (eval::exact_match_frame(var.cs, hyps[h], policy)) {
          ++s.topk;
          break;
        }
      }
      if (reading_of(classify_cs_string(hyps[0], light_verbs)) == var.reading) ++s.type;
    }
  }
  for (const auto& [id, _] : by_id) {
    if (!used.count(id)) throw std::invalid_argument("beam '" + id + "' matches no challenge variant");
  }
  auto fill = [](const Sums& s, ReadingScores& r) {
    r.n = s.n;
    if (s.n == 0) return;
    const double n = static_cast<double>(s.n);
    r.top_1 = static_cast<double>(s.top1) / n;
    r.top_k = static_cast<double>(s.topk) / n;
    r.type_match = static_cast<double>(s.type) / n;
  };
  fill(abs_sum, rep.absolute);
  fill(rel_sum, rep.relative);
  return rep;
}

std::string render_challenge_report(const ChallengeReport& rep) {
  std::ostringstream os;
  const std::string topk = "top_" + std::to_string(rep.k);
  os << std::left << std::setw(10) << "context" << std::right << std::setw(6) << "n" << std::setw(8)
     << "top_1" << std::setw(8) << topk << std::setw(16) << "comp/abs match" << '\n';
  auto line = [&os](const char* name, const ReadingScores& r) {
    os << std::left << std::setw(10) << name << std::right << std::setw(6) << r.n << std::fixed
       << std::setprecision(3) << std::setw(8) << r.top_1 << std::setw(8) << r.top_k << std::setw(16)
       << r.type_match << '\n';
  };
  line("absolute", rep.absolute);
  line("relative", rep.relative);
  return os.str();
}

ojson challenge_report_to_json(const ChallengeReport& rep) {
  auto one = [&rep](const ReadingScores& r) {
    return ojson{{"n", r.n},
                 {"top_1", r.top_1},
                 {"top_" + std::to_string(rep.k), r.top_k},
                 {"comp_abs_match", r.type_match}};
  };
  return ojson{{"k", rep.k}, {"absolute", one(rep.absolute)}, {"relative", one(rep.relative)}};
}

// ---------------------------------------------------------------------------
// Readers

namespace {

template <typename Fn>
void for_each_json_line(std::istream& in, const char* what, Fn&& fn) {
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    try {
      fn(json::parse(line));
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string(what) + " line " + std::to_string(lineno) + ": " +
                                  e.what());
    }
  }
}

std::string get_string(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw std::invalid_argument(std::string("'") + key + "' must be a string");
  }
  return j[key].get<std::string>();
}

}  // namespace

std::vector<BeamPrediction> parse_beams(std::istream& in) {
  std::vector<BeamPrediction> out;
  for_each_json_line(in, "beam file", [&out](const json& j) {
    BeamPrediction b;
    b.instance_id = get_string(j, "instance_id");
    if (!j.contains("hypotheses") || !j["hypotheses"].is_array() || j["hypotheses"].empty()) {
      throw std::invalid_argument("'hypotheses' must be a non-empty array of strings");
    }
    for (const auto& h : j["hypotheses"]) {
      if (!h.is_string()) throw std::invalid_argument("'hypotheses' must contain strings");
      b.hypotheses.push_back(h.get<std::string>());
    }
    out.push_back(std::move(b));
  });
  return out;
}

std::vector<LogProbRecord> parse_logprobs(std::istream& in) {
  std::vector<LogProbRecord> out;
  for_each_json_line(in, "log-prob file", [&out](const json& j) {
    LogProbRecord r;
    r.instance_id = get_string(j, "instance_id");
    r.condition = get_string(j, "condition");
    r.completion = get_string(j, "completion");
    if (!j.contains("token_logprobs") || !j["token_logprobs"].is_array() ||
        j["token_logprobs"].empty()) {
      throw std::invalid_argument("'token_logprobs' must be a non-empty array of numbers");
    }
    for (const auto& v : j["token_logprobs"]) {
      if (!v.is_number()) throw std::invalid_argument("'token_logprobs' must contain numbers");
      const double x = v.get<double>();
      if (x > 0) throw std::invalid_argument("log-probabilities must be <= 0");
      r.token_logprobs.push_back(x);
    }
    if (!j.contains("gold") || !j["gold"].is_boolean()) {
      throw std::invalid_argument("'gold' must be a boolean");
    }
    r.gold = j["gold"].get<bool>();
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<ChallengeItem> parse_challenge_set(std::istream& in) {
  std::vector<ChallengeItem> out;
  for_each_json_line(in, "challenge set", [&out](const json& j) {
    ChallengeItem item;
    item.id = get_string(j, "id");
    item.sentence = get_string(j, "sentence");
    if (!j.contains("contexts") || !j["contexts"].is_array() || j["contexts"].empty()) {
      throw std::invalid_argument("'contexts' must be a non-empty array");
    }
    for (const auto& c : j["contexts"]) {
      ChallengeVariant v;
      v.context = get_string(c, "context");
      const auto r = parse_reading(get_string(c, "reading"));
      if (!r) throw std::invalid_argument("'reading' must be \"absolute\" or \"relative\"");
      v.reading = *r;
      v.cs = get_string(c, "cs");
      item.variants.push_back(std::move(v));
    }
    out.push_back(std::move(item));
  });
  return out;
}

}  // namespace supersem::analysis
