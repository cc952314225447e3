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

#include "supersem/metrics.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "supersem/text.hpp"

namespace supersem::eval {

using ojson = nlohmann::ordered_json;

std::optional<Normalization> parse_normalization(std::string_view s) {
  if (s == "default") return Normalization::kDefault;
  if (s == "casefold") return Normalization::kCaseFold;
  if (s == "verbatim") return Normalization::kVerbatim;
  return std::nullopt;
}

std::string normalize(std::string_view s, Normalization policy) {
  switch (policy) {
    case Normalization::kDefault:
      return text::to_lower(text::collapse_whitespace(text::strip_edge_punct(s)));
    case Normalization::kCaseFold:
      return text::to_lower(text::collapse_whitespace(s));
    case Normalization::kVerbatim:
      return std::string(s);
  }
  return std::string(s);
}

int exact_match(std::string_view gold, std::string_view pred, Normalization policy) {
  return normalize(gold, policy) == normalize(pred, policy) ? 1 : 0;
}

int exact_match_frame(std::string_view gold, std::string_view pred, Normalization policy) {
  const auto g = try_parse_frame_notation(gold);
  const auto p = try_parse_frame_notation(pred);
  if (g && p) {
    return equivalent(*g, *p, [policy](std::string_view s) { return normalize(s, policy); }) ? 1 : 0;
  }
  return exact_match(gold, pred, policy);
}

double token_iou(std::string_view gold, std::string_view pred) {
  const auto gt = text::tokens(gold);
  const auto pt = text::tokens(pred);
  const std::set<std::string> g(gt.begin(), gt.end());
  const std::set<std::string> p(pt.begin(), pt.end());
  if (g.empty() && p.empty()) return 1.0;
  size_t inter = 0;
  for (const auto& t : g) inter += p.count(t);
  const size_t uni = g.size() + p.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double rouge1(std::string_view gold, std::string_view pred, RougeMode mode) {
  const auto gt = text::tokens(gold);
  const auto pt = text::tokens(pred);
  if (gt.empty() && pt.empty()) return 1.0;
  if (gt.empty() || pt.empty()) return 0.0;
  std::map<std::string, size_t> gc;
  std::map<std::string, size_t> pc;
  for (const auto& t : gt) ++gc[t];
  for (const auto& t : pt) ++pc[t];
  size_t overlap = 0;
  for (const auto& [t, n] : gc) {
    if (auto it = pc.find(t); it != pc.end()) overlap += std::min(n, it->second);
  }
  const double recall = static_cast<double>(overlap) / static_cast<double>(gt.size());
  if (mode == RougeMode::kRecall) return recall;
  if (overlap == 0) return 0.0;
  const double precision = static_cast<double>(overlap) / static_cast<double>(pt.size());
  return 2.0 * precision * recall / (precision + recall);
}

double role_arg_iou_accuracy(const SetExpr& gold, const SetExpr& pred, double threshold) {
  const auto& ga = gold.arguments();
  const auto& pa = pred.arguments();
  if (ga.empty()) return pa.empty() ? 1.0 : 0.0;

  std::map<std::string, std::vector<const Argument*>> by_role_gold;
  std::map<std::string, std::vector<const Argument*>> by_role_pred;
  for (const auto& a : ga) by_role_gold[text::to_upper(a.role)].push_back(&a);
  for (const auto& a : pa) by_role_pred[text::to_upper(a.role)].push_back(&a);

  size_t correct = 0;
  for (const auto& [role, golds] : by_role_gold) {
    auto it = by_role_pred.find(role);
    if (it == by_role_pred.end()) continue;
    const auto& preds = it->second;
    std::vector<std::vector<size_t>> edges(golds.size());
    for (size_t i = 0; i < golds.size(); ++i) {
      for (size_t j = 0; j < preds.size(); ++j) {
        if (token_iou(golds[i]->value, preds[j]->value) >= threshold) edges[i].push_back(j);
      }
    }
    // Maximum bipartite matching by augmenting paths.
    std::vector<int> owner(preds.size(), -1);
    std::function<bool(size_t, std::vector<bool>&)> augment = [&](size_t i, std::vector<bool>& seen) {
      for (size_t j : edges[i]) {
        if (seen[j]) continue;
        seen[j] = true;
        if (owner[j] < 0 || augment(static_cast<size_t>(owner[j]), seen)) {
          owner[j] = static_cast<int>(i);
          return true;
        }
      }
      return false;
    };
    for (size_t i = 0; i < golds.size(); ++i) {
      std::vector<bool> seen(preds.size(), false);
      if (augment(i, seen)) ++correct;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(ga.size());
}

double cohens_kappa(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cohens_kappa: label lists differ in length (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw std::invalid_argument("cohens_kappa: empty label lists");
  const double n = static_cast<double>(a.size());
  std::map<std::string, double> ma;
  std::map<std::string, double> mb;
  double agree = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    ma[a[i]] += 1;
    mb[b[i]] += 1;
    if (a[i] == b[i]) agree += 1;
  }
  const double po = agree / n;
  double pe = 0;
  for (const auto& [label, ca] : ma) {
    if (auto it = mb.find(label); it != mb.end()) pe += (ca / n) * (it->second / n);
  }
  if (pe >= 1.0) return 1.0;  // both raters constant on the same label
  return (po - pe) / (1.0 - pe);
}

// ---------------------------------------------------------------------------
// IAA

namespace {

std::map<std::string, const AnnotatedInstance*> index_by_id(const Corpus& c, const char* which) {
  std::map<std::string, const AnnotatedInstance*> out;
  for (const auto& inst : c) {
    if (!out.emplace(inst.id, &inst).second) {
      throw std::invalid_argument(std::string("duplicate instance id '") + inst.id + "' in " + which);
    }
  }
  return out;
}

struct Tally {
  size_t hits = 0;
  size_t n = 0;
  std::vector<std::string> la;
  std::vector<std::string> lb;

  void add(bool hit) {
    ++n;
    hits += hit ? 1 : 0;
  }
  void add_labels(std::string x, std::string y) {
    add(x == y);
    la.push_back(std::move(x));
    lb.push_back(std::move(y));
  }
  IaaRow row(const char* name, bool categorical) const {
    IaaRow r;
    r.name = name;
    r.support = n;
    if (n > 0) {
      r.accuracy = static_cast<double>(hits) / static_cast<double>(n);
      if (categorical) r.kappa = cohens_kappa(la, lb);
    }
    return r;
  }
};

}  // namespace

IaaReport iaa_report(const Corpus& a, const Corpus& b, Normalization policy) {
  const auto ia = index_by_id(a, "annotations A");
  const auto ib = index_by_id(b, "annotations B");
  for (const auto& [id, _] : ia) {
    if (!ib.count(id)) throw std::invalid_argument("instance '" + id + "' missing from annotations B");
  }
  for (const auto& [id, _] : ib) {
    if (!ia.count(id)) throw std::invalid_argument("instance '" + id + "' missing from annotations A");
  }

  Tally event, target, cs, anchor, property, orientation, implicit, predicate, cs_nominal;
  double role_sum = 0;
  size_t role_n = 0;
  IaaReport rep;
  for (const auto& [id, x] : ia) {
    const AnnotatedInstance* y = ib.at(id);
    if (!x->frame || !y->frame) continue;
    ++rep.instances;
    const SuperlativeFrame& fa = *x->frame;
    const SuperlativeFrame& fb = *y->frame;
    event.add_labels(fa.cs.is_eventive() ? "event" : "none", fb.cs.is_eventive() ? "event" : "none");
    target.add(exact_match_frame(serialize_frame(fa.target), serialize_frame(fb.target), policy));
    cs.add(exact_match_frame(serialize_frame(fa.cs), serialize_frame(fb.cs), policy));
    anchor.add(exact_match(format_anchor(fa.anchor, fa.cs), format_anchor(fb.anchor, fb.cs), policy));
    property.add(exact_match(fa.property, fb.property, policy));
    orientation.add_labels(std::string(to_string(fa.orientation)),
                           std::string(to_string(fb.orientation)));
    implicit.add_labels(fa.implicit ? "true" : "false", fb.implicit ? "true" : "false");
    if (fa.cs.is_eventive() && fb.cs.is_eventive()) {
      predicate.add(fa.cs.event().predicate == fb.cs.event().predicate);
    }
    if (!fa.cs.is_eventive() && !fb.cs.is_eventive()) {
      cs_nominal.add(exact_match_frame(serialize_frame(fa.cs), serialize_frame(fb.cs), policy));
    }
    if (fa.cs.is_eventive()) {
      role_sum += role_arg_iou_accuracy(fa.cs, fb.cs);
      ++role_n;
    }
  }

  rep.rows.push_back(event.row(kIaaRowNames[0], true));
  rep.rows.push_back(target.row(kIaaRowNames[1], false));
  rep.rows.push_back(cs.row(kIaaRowNames[2], false));
  rep.rows.push_back(anchor.row(kIaaRowNames[3], false));
  rep.rows.push_back(property.row(kIaaRowNames[4], false));
  rep.rows.push_back(orientation.row(kIaaRowNames[5], true));
  rep.rows.push_back(implicit.row(kIaaRowNames[6], true));
  rep.rows.push_back(predicate.row(kIaaRowNames[7], false));
  rep.rows.push_back(cs_nominal.row(kIaaRowNames[8], false));
  IaaRow role;
  role.name = kIaaRowNames[9];
  role.support = role_n;
  if (role_n > 0) role.accuracy = role_sum / static_cast<double>(role_n);
  rep.rows.push_back(role);
  return rep;
}

std::string render_iaa_report(const IaaReport& rep) {
  std::ostringstream os;
  os << std::left << std::setw(22) << "" << std::right << std::setw(8) << "acc." << std::setw(9)
     << "kappa" << std::setw(8) << "n" << '\n';
  for (const auto& r : rep.rows) {
    os << std::left << std::setw(22) << r.name << std::right << std::fixed << std::setprecision(2);
    if (r.accuracy) {
      os << std::setw(8) << *r.accuracy;
    } else {
      os << std::setw(8) << "-";
    }
    if (r.kappa) {
      os << std::setw(9) << *r.kappa;
    } else {
      os << std::setw(9) << "";
    }
    os << std::setw(8) << r.support << '\n';
  }
  return os.str();
}

ojson iaa_report_to_json(const IaaReport& rep) {
  ojson rows = ojson::array();
  for (const auto& r : rep.rows) {
    ojson j;
    j["name"] = r.name;
    j["accuracy"] = r.accuracy ? ojson(*r.accuracy) : ojson(nullptr);
    j["kappa"] = r.kappa ? ojson(*r.kappa) : ojson(nullptr);
    j["support"] = r.support;
    rows.push_back(std::move(j));
  }
  return ojson{{"instances", rep.instances}, {"rows", rows}};
}

// ---------------------------------------------------------------------------
// Prediction scoring

std::string_view to_string(Slot s) {
  switch (s) {
    case Slot::kTarget: return "target";
    case Slot::kCs: return "cs";
    case Slot::kAnchor: return "anchor";
    case Slot::kProperty: return "property";
    case Slot::kOrientation: return "orientation";
    case Slot::kImplicit: return "implicit";
    case Slot::kFull: return "full";
  }
  return "cs";
}

std::optional<Slot> parse_slot(std::string_view s) {
  for (Slot x : {Slot::kTarget, Slot::kCs, Slot::kAnchor, Slot::kProperty, Slot::kOrientation,
                 Slot::kImplicit, Slot::kFull}) {
    if (to_string(x) == s) return x;
  }
  return std::nullopt;
}

std::vector<PredictionRecord> parse_predictions(std::istream& in) {
  std::vector<PredictionRecord> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    auto fail = [lineno](const std::string& msg) {
      throw std::invalid_argument("predictions line " + std::to_string(lineno) + ": " + msg);
    };
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      fail(e.what());
    }
    if (!j.is_object() || !j.contains("instance_id") || !j["instance_id"].is_string() ||
        !j.contains("slot") || !j["slot"].is_string() || !j.contains("prediction") ||
        !j["prediction"].is_string()) {
      fail("expected {instance_id: string, slot: string, prediction: string}");
    }
    const auto slot = parse_slot(j["slot"].get<std::string>());
    if (!slot) fail("unknown slot '" + j["slot"].get<std::string>() + "'");
    out.push_back({j["instance_id"].get<std::string>(), *slot, j["prediction"].get<std::string>()});
  }
  return out;
}

std::string gold_slot_text(const SuperlativeFrame& f, Slot slot) {
  switch (slot) {
    case Slot::kTarget: return serialize_frame(f.target);
    case Slot::kCs: return serialize_frame(f.cs);
    case Slot::kAnchor: return format_anchor(f.anchor, f.cs);
    case Slot::kProperty: return f.property;
    case Slot::kOrientation: return std::string(to_string(f.orientation));
    case Slot::kImplicit: return f.implicit ? "true" : "false";
    case Slot::kFull: return format_full_frame(f);
  }
  return {};
}

namespace {

constexpr Slot kScoredSlots[] = {Slot::kTarget,   Slot::kCs,          Slot::kAnchor,
                                 Slot::kProperty, Slot::kOrientation, Slot::kImplicit};

struct Accumulator {
  double em = 0, iou = 0, rouge = 0;
  size_t support = 0, missing = 0;
};

}  // namespace

ScoreReport score_predictions(const Corpus& gold, const std::vector<PredictionRecord>& preds,
                              Normalization policy) {
  std::map<std::string, const AnnotatedInstance*> by_id;
  for (const auto& inst : gold) {
    if (inst.frame) by_id[inst.id] = &inst;
  }
  // (instance, slot) -> prediction
  std::map<std::pair<std::string, Slot>, std::string> table;
  std::set<Slot> present;
  for (const auto& p : preds) {
    if (!by_id.count(p.instance_id)) {
      throw std::invalid_argument("prediction for unknown or non-superlative instance '" +
                                  p.instance_id + "'");
    }
    if (!table.emplace(std::make_pair(p.instance_id, p.slot), p.prediction).second) {
      throw std::invalid_argument("duplicate prediction for instance '" + p.instance_id +
                                  "' slot " + std::string(to_string(p.slot)));
    }
    present.insert(p.slot);
  }

  auto score_one = [policy](Slot slot, const std::string& g, const std::string& p, Accumulator& acc) {
    const bool frame_slot = slot == Slot::kTarget || slot == Slot::kCs;
    acc.em += frame_slot ? exact_match_frame(g, p, policy) : exact_match(g, p, policy);
    acc.iou += token_iou(g, p);
    acc.rouge += rouge1(g, p);
  };

  ScoreReport rep;
  auto finish = [&rep](std::string name, Slot slot, bool full, bool ev, const Accumulator& acc) {
    ScoreRow r;
    r.name = std::move(name);
    r.slot = slot;
    r.from_full = full;
    r.eventive_only = ev;
    r.support = acc.support;
    r.missing = acc.missing;
    if (acc.support > 0) {
      const double n = static_cast<double>(acc.support);
      r.em = acc.em / n;
      r.iou = acc.iou / n;
      r.rouge = acc.rouge / n;
    }
    rep.rows.push_back(r);
  };

  for (Slot slot : kScoredSlots) {
    const std::string slot_name(to_string(slot));
    const bool eventive_rows = slot == Slot::kTarget || slot == Slot::kCs;
    if (present.count(slot)) {
      Accumulator all, ev;
      for (const auto& [id, inst] : by_id) {
        const std::string g = gold_slot_text(*inst->frame, slot);
        auto it = table.find({id, slot});
        const bool is_ev = inst->is_eventive();
        ++all.support;
        if (is_ev) ++ev.support;
        if (it == table.end()) {
          ++all.missing;
          if (is_ev) ++ev.missing;
          continue;
        }
        score_one(slot, g, it->second, all);
        if (is_ev) score_one(slot, g, it->second, ev);
      }
      finish(slot_name, slot, false, false, all);
      if (eventive_rows) finish(slot_name + " event", slot, false, true, ev);
    }
    if (present.count(Slot::kFull)) {
      Accumulator acc;
      for (const auto& [id, inst] : by_id) {
        ++acc.support;
        auto it = table.find({id, Slot::kFull});
        if (it == table.end()) {
          ++acc.missing;
          continue;
        }
        const auto parts = split_full_frame(it->second);
        auto p = parts.find(slot_name);
        if (p == parts.end()) {
          ++acc.missing;
          continue;
        }
        score_one(slot, gold_slot_text(*inst->frame, slot), p->second, acc);
      }
      finish(slot_name + " full", slot, true, false, acc);
    }
  }
  // Table order: slot, slot full, slot event.
  std::stable_sort(rep.rows.begin(), rep.rows.end(), [](const ScoreRow& a, const ScoreRow& b) {
    auto key = [](const ScoreRow& r) { return r.from_full ? 1 : (r.eventive_only ? 2 : 0); };
    if (a.slot != b.slot) return static_cast<int>(a.slot) < static_cast<int>(b.slot);
    return key(a) < key(b);
  });
  return rep;
}

std::string render_score_report(const ScoreReport& rep) {
  std::ostringstream os;
  os << std::left << std::setw(20) << "" << std::right << std::setw(7) << "EM" << std::setw(7)
     << "IOU" << std::setw(7) << "R" << std::setw(8) << "n" << std::setw(9) << "missing" << '\n';
  for (const auto& r : rep.rows) {
    os << std::left << std::setw(20) << r.name << std::right << std::fixed << std::setprecision(1)
       << std::setw(7) << 100.0 * r.em << std::setw(7) << 100.0 * r.iou << std::setw(7)
       << 100.0 * r.rouge << std::setw(8) << r.support << std::setw(9) << r.missing << '\n';
  }
  return os.str();
}

ojson score_report_to_json(const ScoreReport& rep) {
  ojson rows = ojson::array();
  for (const auto& r : rep.rows) {
    rows.push_back(ojson{{"name", r.name},
                         {"slot", std::string(to_string(r.slot))},
                         {"full", r.from_full},
                         {"eventive_only", r.eventive_only},
                         {"em", r.em},
                         {"iou", r.iou},
                         {"rouge1", r.rouge},
                         {"support", r.support},
                         {"missing", r.missing}});
  }
  return ojson{{"rows", rows}};
}

}  // namespace supersem::eval
