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

#include "supersem/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "supersem/text.hpp"

namespace supersem {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string_view to_string(Domain d) {
  switch (d) {
    case Domain::kWikipedia: return "Wikipedia";
    case Domain::kReviews: return "Reviews";
    case Domain::kDialogue: return "Dialogue";
    case Domain::kLiterature: return "Literature";
    case Domain::kWikinews: return "Wikinews";
  }
  return "Wikipedia";
}

std::optional<Domain> parse_domain(std::string_view s) {
  for (Domain d : kAllDomains) {
    if (text::to_lower(to_string(d)) == text::to_lower(s)) return d;
  }
  return std::nullopt;
}

size_t LoadReport::error_count() const {
  return static_cast<size_t>(std::count_if(issues.begin(), issues.end(), [](const LoadIssue& i) {
    return i.severity == Severity::kError;
  }));
}

// ---------------------------------------------------------------------------
// JSON mapping

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& msg) {
  throw std::invalid_argument(field + ": " + msg);
}

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) bad(key, "missing");
  return *it;
}

std::string need_string(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_string()) bad(key, "must be a string");
  return v.get<std::string>();
}

TextSpan need_span(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_unsigned() || !v[1].is_number_unsigned()) {
    bad(key, "must be [start, end] with non-negative integers");
  }
  TextSpan s{v[0].get<size_t>(), v[1].get<size_t>()};
  if (s.start > s.end) bad(key, "start > end");
  return s;
}

SetExpr parse_slot(const json& j, const char* key) {
  const std::string s = need_string(j, key);
  try {
    return parse_frame_notation(s);
  } catch (const FrameSyntaxError& e) {
    bad(key, std::string("frame notation: ") + e.what());
  }
}

}  // namespace

SuperlativeFrame frame_from_json(const json& j) {
  if (!j.is_object()) bad("frame", "must be an object");
  SuperlativeFrame f;
  f.target = parse_slot(j, "target");
  f.cs = parse_slot(j, "cs");

  const json& a = need(j, "anchor");
  if (!a.is_object()) bad("anchor", "must be an object {index, role}");
  const json& idx = need(a, "index");
  if (!idx.is_number_integer()) bad("anchor.index", "must be an integer");
  f.anchor.index = idx.get<int>();
  if (auto r = a.find("role"); r != a.end() && !r->is_null()) {
    if (!r->is_string()) bad("anchor.role", "must be a string");
    f.anchor.role = text::to_upper(r->get<std::string>());
  }

  f.property = need_string(j, "property");
  const auto o = parse_orientation(need_string(j, "orientation"));
  if (!o) bad("orientation", "must be \"positive\" or \"negative\"");
  f.orientation = *o;

  if (auto r = j.find("rank"); r != j.end() && !r->is_null()) {
    if (!r->is_number_integer()) bad("rank", "must be an integer");
    f.rank = r->get<int>();
  }
  if (auto r = j.find("implicit"); r != j.end() && !r->is_null()) {
    if (!r->is_boolean()) bad("implicit", "must be a boolean");
    f.implicit = r->get<bool>();
  }
  if (auto r = j.find("amount"); r != j.end() && !r->is_null()) {
    if (!r->is_string()) bad("amount", "must be a string");
    f.amount = r->get<std::string>();
  }
  return f;
}

ojson frame_to_json(const SuperlativeFrame& f) {
  ojson j;
  j["target"] = serialize_frame(f.target);
  j["cs"] = serialize_frame(f.cs);
  j["anchor"] = ojson{{"index", f.anchor.index}, {"role", f.anchor.role}};
  j["property"] = f.property;
  j["orientation"] = std::string(to_string(f.orientation));
  j["rank"] = f.rank;
  j["implicit"] = f.implicit;
  j["amount"] = f.amount ? ojson(*f.amount) : ojson(nullptr);
  return j;
}

AnnotatedInstance instance_from_json(const json& j) {
  if (!j.is_object()) bad("line", "must be a JSON object");
  AnnotatedInstance inst;
  inst.id = need_string(j, "id");
  if (inst.id.empty()) bad("id", "must be non-empty");
  const auto d = parse_domain(need_string(j, "domain"));
  if (!d) bad("domain", "must be one of Wikipedia, Reviews, Dialogue, Literature, Wikinews");
  inst.domain = *d;
  if (auto r = j.find("doc_id"); r != j.end() && !r->is_null()) {
    if (!r->is_string()) bad("doc_id", "must be a string");
    inst.doc_id = r->get<std::string>();
  }
  inst.doc_text = need_string(j, "doc_text");
  inst.sentence_span = need_span(j, "sentence_span");
  inst.trigger_span = need_span(j, "trigger_span");
  if (inst.sentence_span.end > inst.doc_text.size()) bad("sentence_span", "outside doc_text");
  if (inst.trigger_span.start < inst.sentence_span.start ||
      inst.trigger_span.end > inst.sentence_span.end) {
    bad("trigger_span", "outside sentence_span");
  }
  const json& sup = need(j, "is_superlative");
  if (!sup.is_boolean()) bad("is_superlative", "must be a boolean");
  inst.is_superlative = sup.get<bool>();

  auto fr = j.find("frame");
  const bool has_frame = fr != j.end() && !fr->is_null();
  if (inst.is_superlative && !has_frame) bad("frame", "required when is_superlative is true");
  if (!inst.is_superlative && has_frame) bad("frame", "must be absent when is_superlative is false");
  if (has_frame) {
    inst.frame = frame_from_json(*fr);
    inst.frame->superlative_span = std::string(inst.trigger());
  }
  if (auto r = j.find("semantic_type"); r != j.end() && !r->is_null()) {
    const auto t = r->is_string() ? parse_semantic_type(r->get<std::string>()) : std::nullopt;
    if (!t) bad("semantic_type", "unknown semantic type");
    inst.stored_type = *t;
  }
  if (auto r = j.find("schema_version"); r != j.end() && !r->is_null()) {
    if (!r->is_number_integer() || r->get<int>() > kCorpusSchemaVersion) {
      bad("schema_version", "unsupported version");
    }
  }
  return inst;
}

ojson instance_to_json(const AnnotatedInstance& inst) {
  ojson j;
  j["id"] = inst.id;
  j["domain"] = std::string(to_string(inst.domain));
  if (!inst.doc_id.empty()) j["doc_id"] = inst.doc_id;
  j["doc_text"] = inst.doc_text;
  j["sentence_span"] = {inst.sentence_span.start, inst.sentence_span.end};
  j["trigger_span"] = {inst.trigger_span.start, inst.trigger_span.end};
  j["is_superlative"] = inst.is_superlative;
  if (inst.frame) j["frame"] = frame_to_json(*inst.frame);
  if (inst.stored_type) j["semantic_type"] = std::string(to_string(*inst.stored_type));
  return j;
}

LoadResult load_corpus(std::istream& in, const LoadOptions& opts) {
  LoadResult res;
  const RoleInventory& roles = opts.roles ? *opts.roles : default_role_inventory();
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    ++res.report.lines_read;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      res.report.issues.push_back({lineno, Severity::kError, "json", e.what()});
      continue;
    }
    AnnotatedInstance inst;
    try {
      inst = instance_from_json(j);
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      const auto colon = msg.find(": ");
      res.report.issues.push_back({lineno, Severity::kError, msg.substr(0, colon),
                                   colon == std::string::npos ? msg : msg.substr(colon + 2)});
      continue;
    }
    bool keep = true;
    if (inst.frame) {
      for (const auto& v : validate_frame(*inst.frame, opts.strict, roles)) {
        res.report.issues.push_back({lineno, v.severity, v.field, v.message});
        keep = keep && v.severity != Severity::kError;
      }
    }
    if (keep) res.corpus.push_back(std::move(inst));
  }
  return res;
}

LoadResult load_corpus(const std::filesystem::path& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus: " + path.string());
  return load_corpus(in, opts);
}

void export_corpus(const Corpus& corpus, std::ostream& out) {
  for (const auto& inst : corpus) out << instance_to_json(inst).dump() << '\n';
}

template <typename Fn>
static void read_json_lines(std::istream& in, const char* what, Fn&& fn) {
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

std::vector<Document> parse_documents(std::istream& in) {
  std::vector<Document> docs;
  read_json_lines(in, "document file", [&docs](const json& j) {
    if (!j.is_object()) bad("line", "must be a JSON object");
    Document d;
    d.id = need_string(j, "id");
    if (d.id.empty()) bad("id", "must be non-empty");
    d.text = need_string(j, "text");
    if (auto r = j.find("domain"); r != j.end() && !r->is_null()) {
      if (!r->is_string()) bad("domain", "must be a string");
      d.domain = r->get<std::string>();
    }
    docs.push_back(std::move(d));
  });
  return docs;
}

ojson document_to_json(const Document& doc) {
  ojson j{{"id", doc.id}, {"text", doc.text}};
  if (!doc.domain.empty()) j["domain"] = doc.domain;
  return j;
}

ojson candidate_to_json(const Candidate& c) {
  return ojson{{"doc_id", c.doc_id},
               {"sentence_index", c.sentence_index},
               {"start", c.span.start},
               {"end", c.span.end},
               {"surface", c.surface},
               {"kind", std::string(to_string(c.kind))},
               {"filtered", c.filtered},
               {"reason", c.reason}};
}

Candidate candidate_from_json(const json& j) {
  if (!j.is_object()) bad("line", "must be a JSON object");
  Candidate c;
  c.doc_id = need_string(j, "doc_id");
  auto need_index = [&j](const char* key) {
    const json& v = need(j, key);
    if (!v.is_number_unsigned()) bad(key, "must be a non-negative integer");
    return v.get<size_t>();
  };
  c.sentence_index = need_index("sentence_index");
  c.span = {need_index("start"), need_index("end")};
  if (c.span.start > c.span.end) bad("start", "start > end");
  c.surface = need_string(j, "surface");
  const auto k = parse_syntactic_kind(need_string(j, "kind"));
  if (!k) bad("kind", "must be adjectival, adverbial or lexical");
  c.kind = *k;
  const json& f = need(j, "filtered");
  if (!f.is_boolean()) bad("filtered", "must be a boolean");
  c.filtered = f.get<bool>();
  if (auto r = j.find("reason"); r != j.end() && !r->is_null()) {
    if (!r->is_string()) bad("reason", "must be a string");
    c.reason = r->get<std::string>();
  }
  return c;
}

std::vector<Candidate> parse_candidates(std::istream& in) {
  std::vector<Candidate> out;
  read_json_lines(in, "candidate file",
                  [&out](const json& j) { out.push_back(candidate_from_json(j)); });
  return out;
}

// ---------------------------------------------------------------------------
// Statistics

namespace {
double percent_1dp(size_t num, size_t den) {
  if (den == 0) return 0.0;
  return std::round(1000.0 * static_cast<double>(num) / static_cast<double>(den)) / 10.0;
}
}  // namespace

double CorpusStats::implicit_percent() const { return percent_1dp(total.implicit, total.superlatives); }
double CorpusStats::eventive_percent() const { return percent_1dp(total.eventive, total.superlatives); }

CorpusStats compute_stats(const Corpus& corpus, const LightVerbLexicon& light_verbs) {
  CorpusStats st;
  for (Domain d : kAllDomains) {
    st.per_domain[d] = {};
    for (SemanticType t : kAllSemanticTypes) st.semantic_types[d][t] = 0;
  }
  for (const auto& inst : corpus) {
    DomainCounts& row = st.per_domain[inst.domain];
    if (!inst.is_superlative || !inst.frame) {
      ++row.non_superlatives;
      continue;
    }
    const SuperlativeFrame& f = *inst.frame;
    ++row.superlatives;
    if (f.cs.is_eventive()) {
      ++row.eventive;
      ++st.predicates[f.cs.event().predicate];
    }
    if (f.implicit) ++row.implicit;
    ++st.semantic_types[inst.domain][classify_semantic_type(f.cs, light_verbs)];
    ++st.properties[text::to_lower(text::trim(f.property))];
    for (const SetExpr* e : {&f.target, &f.cs}) {
      for (const auto& a : e->arguments()) {
        ++st.roles[a.role];
        ++st.role_occurrences;
      }
    }
  }
  for (const auto& [d, row] : st.per_domain) {
    st.total.superlatives += row.superlatives;
    st.total.non_superlatives += row.non_superlatives;
    st.total.eventive += row.eventive;
    st.total.implicit += row.implicit;
  }
  return st;
}

namespace {

std::vector<std::pair<std::string, size_t>> top_entries(const std::map<std::string, size_t>& m,
                                                        size_t n) {
  std::vector<std::pair<std::string, size_t>> v(m.begin(), m.end());
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  if (v.size() > n) v.resize(n);
  return v;
}

void row(std::ostringstream& os, const std::vector<std::string>& cells,
         const std::vector<size_t>& widths) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i == 0) {
      os << std::left << std::setw(static_cast<int>(widths[i])) << cells[i];
    } else {
      os << "  " << std::right << std::setw(static_cast<int>(widths[i])) << cells[i];
    }
  }
  os << '\n';
}

}  // namespace

std::string render_stats_table(const CorpusStats& st, std::string_view table, size_t top_n) {
  std::ostringstream os;
  if (table == "counts") {
    // "¬" is two bytes in UTF-8, so its header cell is padded by hand.
    const std::vector<size_t> w = {12, 6, 6, 7, 8};
    os << std::left << std::setw(12) << "Domain" << "  " << std::right << std::setw(6) << "Sup."
       << "   ¬Sup." << "  " << std::setw(7) << "Events" << "  " << std::setw(8) << "Implicit"
       << '\n';
    for (const auto& [d, r] : st.per_domain) {
      row(os, {std::string(to_string(d)), std::to_string(r.superlatives),
               std::to_string(r.non_superlatives), std::to_string(r.eventive),
               std::to_string(r.implicit)},
          w);
    }
    row(os, {"total", std::to_string(st.total.superlatives),
             std::to_string(st.total.non_superlatives), std::to_string(st.total.eventive),
             std::to_string(st.total.implicit)},
        w);
    std::ostringstream pct;
    pct << std::fixed << std::setprecision(1) << "implicit: " << st.implicit_percent()
        << "%  eventive: " << st.eventive_percent() << "%  distinct predicates: "
        << st.predicates.size();
    os << pct.str() << '\n';
  } else if (table == "types") {
    const std::vector<size_t> w = {12, 10, 19, 18, 14};
    row(os, {"Domain", "PropertySC", "RelativeSC_Eventive", "RelativeSC_Nominal", "SubjectBasedSC"}, w);
    for (const auto& [d, counts] : st.semantic_types) {
      std::vector<std::string> cells = {std::string(to_string(d))};
      for (SemanticType t : kAllSemanticTypes) cells.push_back(std::to_string(counts.at(t)));
      row(os, cells, w);
    }
  } else if (table == "roles" || table == "properties") {
    const auto& m = table == "roles" ? st.roles : st.properties;
    const std::vector<size_t> w = {20, 8};
    row(os, {table == "roles" ? "Role" : "Property", "Count"}, w);
    for (const auto& [k, v] : top_entries(m, top_n)) row(os, {k, std::to_string(v)}, w);
  } else {
    throw std::invalid_argument("unknown table '" + std::string(table) +
                                "' (expected counts, types, roles or properties)");
  }
  return os.str();
}

ojson stats_to_json(const CorpusStats& st) {
  auto counts = [](const DomainCounts& c) {
    return ojson{{"superlatives", c.superlatives},
                 {"non_superlatives", c.non_superlatives},
                 {"eventive", c.eventive},
                 {"implicit", c.implicit}};
  };
  ojson j;
  ojson domains = ojson::object();
  for (const auto& [d, r] : st.per_domain) domains[std::string(to_string(d))] = counts(r);
  j["domains"] = domains;
  j["total"] = counts(st.total);
  j["implicit_percent"] = st.implicit_percent();
  j["eventive_percent"] = st.eventive_percent();
  ojson types = ojson::object();
  for (const auto& [d, m] : st.semantic_types) {
    ojson row = ojson::object();
    for (const auto& [t, n] : m) row[std::string(to_string(t))] = n;
    types[std::string(to_string(d))] = row;
  }
  j["semantic_types"] = types;
  j["roles"] = st.roles;
  j["properties"] = st.properties;
  j["predicates"] = st.predicates;
  j["distinct_predicates"] = st.predicates.size();
  return j;
}

// ---------------------------------------------------------------------------
// Splits

std::vector<size_t> seeded_permutation(size_t n, uint64_t seed) {
  std::vector<size_t> p(n);
  for (size_t i = 0; i < n; ++i) p[i] = i;
  std::mt19937_64 rng(seed);
  for (size_t i = n; i > 1; --i) {
    const size_t j = static_cast<size_t>(rng() % i);
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

CorpusSplit split_corpus(const Corpus& corpus, uint64_t seed, SplitFractions fr,
                         bool superlatives_only) {
  if (fr.train < 0 || fr.dev < 0 || fr.test < 0 ||
      std::fabs(fr.train + fr.dev + fr.test - 1.0) > 1e-9) {
    throw std::invalid_argument("split fractions must be non-negative and sum to 1");
  }
  CorpusSplit out;
  for (Domain d : kAllDomains) {
    std::vector<const AnnotatedInstance*> pool;
    for (const auto& inst : corpus) {
      if (inst.domain != d) continue;
      if (superlatives_only && !inst.is_superlative) continue;
      pool.push_back(&inst);
    }
    std::stable_sort(pool.begin(), pool.end(),
                     [](const auto* a, const auto* b) { return a->id < b->id; });
    const size_t n = pool.size();
    const auto n_dev = static_cast<size_t>(std::floor(static_cast<double>(n) * fr.dev + 1e-9));
    const auto n_test = static_cast<size_t>(std::floor(static_cast<double>(n) * fr.test + 1e-9));
    // Mix the domain into the seed so domains get independent shuffles.
    const auto perm = seeded_permutation(n, seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<uint64_t>(d) + 1)));
    for (size_t k = 0; k < n; ++k) {
      const AnnotatedInstance& inst = *pool[perm[k]];
      if (k < n_dev) {
        out.dev.push_back(inst);
      } else if (k < n_dev + n_test) {
        out.test.push_back(inst);
      } else {
        out.train.push_back(inst);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Discourse restriction analyses

std::optional<Rate> implicit_arg_rate(const Corpus& corpus) {
  Rate r;
  for (const auto& inst : corpus) {
    if (!inst.is_eventive()) continue;
    ++r.denominator;
    const std::string context = text::match_form(inst.doc_text);
    const std::string sentence = text::match_form(inst.sentence());
    for (const auto& a : inst.frame->cs.arguments()) {
      const std::string v = text::match_form(a.value);
      if (v.empty()) continue;
      if (text::contains(context, v) && !text::contains(sentence, v)) {
        ++r.numerator;
        break;
      }
    }
  }
  if (r.denominator == 0) return std::nullopt;
  return r;
}

std::vector<NpRelation> parse_relations(std::istream& in) {
  std::vector<NpRelation> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto cols = text::split(line, '\t');
    if (cols.size() != 4) {
      throw RelationFormatError(lineno, "expected 4 tab-separated columns (doc_id, np_a, "
                                        "preposition, np_b), got " +
                                            std::to_string(cols.size()));
    }
    NpRelation r{std::string(text::trim(cols[0])), std::string(text::trim(cols[1])),
                 std::string(text::trim(cols[2])), std::string(text::trim(cols[3]))};
    if (r.doc_id.empty() || r.np_a.empty() || r.preposition.empty() || r.np_b.empty()) {
      throw RelationFormatError(lineno, "empty column");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<NpRelation> load_relations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open relation file: " + path.string());
  return parse_relations(in);
}

std::optional<Rate> np_relation_overlap(const Corpus& corpus,
                                        const std::vector<NpRelation>& relations) {
  Rate r;
  for (const auto& inst : corpus) {
    if (!inst.frame || !inst.frame->implicit) continue;
    ++r.denominator;
    const std::string trigger = text::match_form(inst.trigger());
    const std::string sentence = text::match_form(inst.sentence());
    std::vector<std::string> restrictions;
    for (const auto& a : inst.frame->cs.arguments()) {
      std::string v = text::match_form(a.value);
      if (!v.empty()) restrictions.push_back(std::move(v));
    }
    bool matched = false;
    for (const auto& rel : relations) {
      if (rel.doc_id != "*" && rel.doc_id != inst.doc_id) continue;
      const std::string a = text::match_form(rel.np_a);
      if (trigger.empty() || !text::contains(a, trigger) || !text::contains(sentence, a)) continue;
      const std::string b = text::match_form(rel.np_b);
      for (const auto& v : restrictions) {
        if (text::contains(b, v) || text::contains(v, b)) {
          matched = true;
          break;
        }
      }
      if (matched) break;
    }
    if (matched) ++r.numerator;
  }
  if (r.denominator == 0) return std::nullopt;
  return r;
}

}  // namespace supersem
