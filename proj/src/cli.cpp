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

#include "supersem/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#include "supersem/analysis.hpp"
#include "supersem/config.hpp"
#include "supersem/corpus.hpp"
#include "supersem/detector.hpp"
#include "supersem/metrics.hpp"
#include "supersem/service.hpp"
#include "supersem/text.hpp"

namespace supersem::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

// Bad input content: exit code 1.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad invocation: exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  return out;
}

void write_json(const std::string& path, const ojson& j) {
  if (path.empty()) return;
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

void print_issues(const LoadReport& rep, std::ostream& err) {
  for (const auto& i : rep.issues) {
    err << "line " << i.line << ": " << to_string(i.severity) << ": " << i.field << ": " << i.message
        << '\n';
  }
}

Corpus load_valid_corpus(const std::string& path, const Config& cfg, std::ostream& err) {
  const RoleInventory roles = cfg.roles();
  LoadOptions opts;
  opts.roles = &roles;
  auto in = open_in(path);
  LoadResult res = load_corpus(in, opts);
  print_issues(res.report, err);
  if (res.report.error_count() > 0) {
    throw InvalidInput(path + ": " + std::to_string(res.report.error_count()) + " invalid line(s)");
  }
  return std::move(res.corpus);
}

template <typename T, typename Fn>
std::vector<T> parse_file(const std::string& path, Fn&& parse) {
  auto in = open_in(path);
  try {
    return parse(in);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

SplitFractions parse_fractions(const std::string& s) {
  const auto parts = text::split(s, ',');
  if (parts.size() != 3) throw UsageError("--fractions expects train,dev,test");
  SplitFractions f;
  try {
    f = {std::stod(std::string(parts[0])), std::stod(std::string(parts[1])),
         std::stod(std::string(parts[2]))};
  } catch (const std::exception&) {
    throw UsageError("--fractions expects three numbers");
  }
  return f;
}

// ---------------------------------------------------------------------------
// Subcommands

struct Options {
  std::string config;
  std::string in, out, json, out_dir;
  std::string gold, pred, a, b;
  std::string beams, items;
  std::string lexicon_dir, relations, table = "counts";
  std::string normalization, base, fractions;
  std::string docs, candidates, corpus, journal, assignments, annotator, host = "127.0.0.1";
  uint64_t seed = 0;
  bool seed_set = false;
  size_t top_n = 0, k = 5, compact_every = 0, top = 10;
  int port = 8080;
  bool strict = false, superlatives_only = false;
};

int cmd_detect(const Options& o, std::ostream& out) {
  const Detector det = o.lexicon_dir.empty() ? Detector()
                                             : Detector(DetectorLexicon::load(o.lexicon_dir));
  const auto docs = parse_file<Document>(o.in, [](std::istream& in) { return parse_documents(in); });
  auto sink = open_out(o.out);
  size_t total = 0, flagged = 0;
  for (const auto& d : docs) {
    for (const auto& c : det.detect_document(d)) {
      sink << candidate_to_json(c).dump() << '\n';
      ++total;
      flagged += c.filtered ? 1 : 0;
    }
  }
  out << docs.size() << " documents, " << total << " candidates, " << flagged << " flagged\n";
  write_json(o.json, ojson{{"documents", docs.size()}, {"candidates", total}, {"flagged", flagged}});
  return kExitOk;
}

int cmd_validate(const Options& o, const Config& cfg, std::ostream& out, std::ostream& err) {
  const RoleInventory roles = cfg.roles();
  LoadOptions opts;
  opts.strict = o.strict;
  opts.roles = &roles;
  auto in = open_in(o.in);
  const LoadResult res = load_corpus(in, opts);
  print_issues(res.report, err);
  const size_t errors = res.report.error_count();
  out << res.report.lines_read << " lines, " << res.corpus.size() << " valid, " << errors
      << " error(s), " << res.report.issues.size() - errors << " warning(s)\n";
  ojson issues = ojson::array();
  for (const auto& i : res.report.issues) {
    issues.push_back(ojson{{"line", i.line},
                           {"severity", std::string(to_string(i.severity))},
                           {"field", i.field},
                           {"message", i.message}});
  }
  write_json(o.json, ojson{{"lines", res.report.lines_read}, {"valid", res.corpus.size()}, {"issues", issues}});
  return errors == 0 ? kExitOk : kExitInvalid;
}

int cmd_stats(const Options& o, const Config& cfg, std::ostream& out, std::ostream& err) {
  const Corpus corpus = load_valid_corpus(o.in, cfg, err);
  const CorpusStats st = compute_stats(corpus, cfg.light_verb_lexicon());
  const std::vector<std::string> tables =
      o.table == "all" ? std::vector<std::string>{"counts", "types", "roles", "properties"}
                       : std::vector<std::string>{o.table};
  for (size_t i = 0; i < tables.size(); ++i) {
    if (i) out << '\n';
    try {
      out << render_stats_table(st, tables[i], o.top);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  ojson j = stats_to_json(st);
  if (auto r = implicit_arg_rate(corpus)) {
    out << "\nimplicit-argument rate: " << r->numerator << "/" << r->denominator << " = "
        << fmt(100 * r->value(), 1) << "%\n";
    j["implicit_argument_rate"] = ojson{{"numerator", r->numerator}, {"denominator", r->denominator}};
  }
  if (!o.relations.empty()) {
    std::vector<NpRelation> rels;
    try {
      rels = load_relations(o.relations);
    } catch (const RelationFormatError& e) {
      throw InvalidInput(o.relations + ": " + e.what());
    }
    if (auto r = np_relation_overlap(corpus, rels)) {
      out << "\nNP-relation overlap: " << r->numerator << "/" << r->denominator << " = "
          << fmt(100 * r->value(), 1) << "%\n";
      j["np_relation_overlap"] = ojson{{"numerator", r->numerator}, {"denominator", r->denominator}};
    }
  }
  write_json(o.json, j);
  return kExitOk;
}

int cmd_split(const Options& o, const Config& cfg, std::ostream& out, std::ostream& err) {
  const Corpus corpus = load_valid_corpus(o.in, cfg, err);
  const uint64_t seed = o.seed_set ? o.seed : cfg.split_seed;
  const SplitFractions fr = o.fractions.empty() ? cfg.split_fractions : parse_fractions(o.fractions);
  CorpusSplit split;
  try {
    split = split_corpus(corpus, seed, fr, o.superlatives_only);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::pair<const char*, const Corpus*> parts[] = {
      {"train", &split.train}, {"dev", &split.dev}, {"test", &split.test}};
  ojson j{{"seed", seed}};
  out << std::left << std::setw(12) << "domain" << std::right << std::setw(8) << "train" << std::setw(8)
      << "dev" << std::setw(8) << "test" << '\n';
  for (Domain d : kAllDomains) {
    out << std::left << std::setw(12) << to_string(d) << std::right;
    ojson row;
    for (const auto& [name, c] : parts) {
      const auto n = std::count_if(c->begin(), c->end(), [d](const auto& i) { return i.domain == d; });
      out << std::setw(8) << n;
      row[name] = n;
    }
    out << '\n';
    j["domains"][std::string(to_string(d))] = row;
  }
  for (const auto& [name, c] : parts) {
    auto sink = open_out(fs::path(o.out_dir) / (std::string(name) + ".jsonl"));
    export_corpus(*c, sink);
  }
  write_json(o.json, j);
  return kExitOk;
}

int cmd_score(const Options& o, const Config& cfg, std::ostream& out, std::ostream& err) {
  const Corpus gold = load_valid_corpus(o.gold, cfg, err);
  const auto preds = parse_file<eval::PredictionRecord>(
      o.pred, [](std::istream& in) { return eval::parse_predictions(in); });
  eval::ScoreReport rep;
  try {
    rep = eval::score_predictions(gold, preds, cfg.normalization);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  out << eval::render_score_report(rep);
  write_json(o.json, eval::score_report_to_json(rep));
  return kExitOk;
}

int cmd_iaa(const Options& o, const Config& cfg, std::ostream& out, std::ostream& err) {
  const Corpus a = load_valid_corpus(o.a, cfg, err);
  const Corpus b = load_valid_corpus(o.b, cfg, err);
  eval::IaaReport rep;
  try {
    rep = eval::iaa_report(a, b, cfg.normalization);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  out << eval::render_iaa_report(rep);
  write_json(o.json, eval::iaa_report_to_json(rep));
  return kExitOk;
}

int cmd_entropy(const Options& o, const Config& cfg, std::ostream& out) {
  const auto beams = parse_file<analysis::BeamPrediction>(
      o.beams, [](std::istream& in) { return analysis::parse_beams(in); });
  analysis::LogBase base = cfg.entropy_base;
  if (o.base == "bits") base = analysis::LogBase::kBits;
  if (o.base == "nats") base = analysis::LogBase::kNatural;
  const LightVerbLexicon lv = cfg.light_verb_lexicon();
  ojson list = ojson::array();
  double sum = 0;
  for (const auto& b : beams) {
    const double h = analysis::beam_entropy(b, base, o.top_n, lv);
    sum += h;
    out << b.instance_id << '\t' << fmt(h, 6) << '\n';
    list.push_back(ojson{{"instance_id", b.instance_id}, {"entropy", h}});
  }
  const double mean = beams.empty() ? 0.0 : sum / static_cast<double>(beams.size());
  out << "mean\t" << fmt(mean, 6) << '\n';
  write_json(o.json, ojson{{"base", base == analysis::LogBase::kBits ? "bits" : "nats"},
                           {"top_n", o.top_n},
                           {"beams", list},
                           {"mean", mean}});
  return kExitOk;
}

int cmd_prefs(const Options& o, std::ostream& out) {
  const auto recs = parse_file<analysis::LogProbRecord>(
      o.in, [](std::istream& in) { return analysis::parse_logprobs(in); });
  analysis::PreferenceReport rep;
  try {
    rep = analysis::preference_report(recs);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  out << analysis::render_preference_report(rep);
  write_json(o.json, analysis::preference_report_to_json(rep));
  return kExitOk;
}

int cmd_challenge(const Options& o, const Config& cfg, std::ostream& out) {
  const auto items = parse_file<analysis::ChallengeItem>(
      o.items, [](std::istream& in) { return analysis::parse_challenge_set(in); });
  const auto beams = parse_file<analysis::BeamPrediction>(
      o.beams, [](std::istream& in) { return analysis::parse_beams(in); });
  analysis::ChallengeReport rep;
  try {
    rep = analysis::challenge_report(items, beams, o.k, cfg.normalization, cfg.light_verb_lexicon());
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  out << analysis::render_challenge_report(rep);
  write_json(o.json, analysis::challenge_report_to_json(rep));
  return kExitOk;
}

std::unique_ptr<service::AnnotationStore> build_store(const Options& o, const Config& cfg,
                                                      const RoleInventory& roles, std::ostream& err) {
  service::StoreOptions so;
  so.window_before = cfg.window_before;
  so.window_after = cfg.window_after;
  so.strict = o.strict;
  so.roles = &roles;
  so.compact_every = o.compact_every;
  if (!o.journal.empty()) so.journal = o.journal;
  auto store = std::make_unique<service::AnnotationStore>(so);
  try {
    if (!o.corpus.empty()) store->add_corpus(load_valid_corpus(o.corpus, cfg, err));
    if (!o.docs.empty()) {
      const auto docs = parse_file<Document>(o.docs, [](std::istream& in) { return parse_documents(in); });
      std::vector<Candidate> cands;
      if (!o.candidates.empty()) {
        cands = parse_file<Candidate>(o.candidates, [](std::istream& in) { return parse_candidates(in); });
      } else {
        const Detector det;
        for (const auto& d : docs) {
          auto c = det.detect_document(d);
          cands.insert(cands.end(), c.begin(), c.end());
        }
      }
      store->add_detector_output(docs, cands);
    }
    store->open_journal();
    if (!o.assignments.empty()) {
      auto in = open_in(o.assignments);
      std::map<std::string, std::vector<std::string>> by_annotator;
      std::string line;
      size_t lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        const auto t = text::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto cols = text::split(t, '\t');
        if (cols.size() != 2) {
          throw InvalidInput(o.assignments + " line " + std::to_string(lineno) +
                             ": expected annotator<TAB>instance_id");
        }
        by_annotator[std::string(cols[0])].emplace_back(cols[1]);
      }
      for (const auto& [name, ids] : by_annotator) store->assign(name, ids);
    }
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const UsageError*>(&e) || dynamic_cast<const InvalidInput*>(&e)) throw;
    throw InvalidInput(e.what());
  }
  return store;
}

int cmd_serve(const Options& o, const Config& cfg, std::ostream& out, std::ostream& err) {
  if (o.corpus.empty() && o.docs.empty() && o.journal.empty()) {
    throw UsageError("serve needs --corpus, --docs or --journal");
  }
  const RoleInventory roles = cfg.roles();
  auto store = build_store(o, cfg, roles, err);
  out << "serving " << store->size() << " instances on http://" << o.host << ":" << o.port << std::endl;
  return service::serve(*store, o.host, o.port) == 0 ? kExitOk : kExitUsage;
}

int cmd_export(const Options& o, const Config& cfg, std::ostream& out, std::ostream& err) {
  if (o.corpus.empty() && o.docs.empty() && o.journal.empty()) {
    throw UsageError("export needs --corpus, --docs or --journal");
  }
  const RoleInventory roles = cfg.roles();
  auto store = build_store(o, cfg, roles, err);
  const Corpus c = store->export_corpus(o.annotator);
  if (o.out.empty() || o.out == "-") {
    export_corpus(c, out);
  } else {
    auto sink = open_out(o.out);
    export_corpus(c, sink);
    err << c.size() << " instances written to " << o.out << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Superlative frame toolkit", "supersem"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config, "key=value configuration file")->check(CLI::ExistingFile);

  auto add_json = [&o](CLI::App* sub) {
    sub->add_option("--json", o.json, "also write the result as JSON to this path");
  };

  auto* detect = app.add_subcommand("detect", "find superlative candidates in documents");
  detect->add_option("--in", o.in, "documents JSONL {id, text, domain?}")->required()->check(CLI::ExistingFile);
  detect->add_option("--out", o.out, "candidates JSONL")->required();
  detect->add_option("--lexicon-dir", o.lexicon_dir, "detector word lists")->check(CLI::ExistingDirectory);
  add_json(detect);

  auto* validate = app.add_subcommand("validate", "check a corpus file against the schema");
  validate->add_option("--in", o.in, "corpus JSONL")->required()->check(CLI::ExistingFile);
  validate->add_flag("--strict", o.strict, "treat anchor inconsistencies as errors");
  add_json(validate);

  auto* stats = app.add_subcommand("stats", "corpus statistics");
  stats->add_option("--in", o.in, "corpus JSONL")->required()->check(CLI::ExistingFile);
  stats->add_option("--table", o.table, "counts, types, roles, properties or all")
      ->check(CLI::IsMember({"counts", "types", "roles", "properties", "all"}));
  stats->add_option("--top", o.top, "rows for the role and property tables");
  stats->add_option("--relations", o.relations, "NP relation TSV")->check(CLI::ExistingFile);
  add_json(stats);

  auto* split = app.add_subcommand("split", "per-domain train/dev/test split");
  split->add_option("--in", o.in, "corpus JSONL")->required()->check(CLI::ExistingFile);
  split->add_option("--out-dir", o.out_dir, "directory for train/dev/test.jsonl")->required();
  split->add_option("--seed", o.seed, "random seed")->each([&o](const std::string&) { o.seed_set = true; });
  split->add_option("--fractions", o.fractions, "train,dev,test");
  split->add_flag("--superlatives-only", o.superlatives_only, "drop non-superlative instances");
  add_json(split);

  auto* score = app.add_subcommand("score", "score slot predictions against gold");
  score->add_option("--gold", o.gold, "gold corpus JSONL")->required()->check(CLI::ExistingFile);
  score->add_option("--pred", o.pred, "predictions JSONL")->required()->check(CLI::ExistingFile);
  score->add_option("--normalization", o.normalization, "default, casefold or verbatim")
      ->check(CLI::IsMember({"default", "casefold", "verbatim"}));
  add_json(score);

  auto* iaa = app.add_subcommand("iaa", "agreement between two annotation files");
  iaa->add_option("--a", o.a, "first annotator's corpus")->required()->check(CLI::ExistingFile);
  iaa->add_option("--b", o.b, "second annotator's corpus")->required()->check(CLI::ExistingFile);
  iaa->add_option("--normalization", o.normalization, "default, casefold or verbatim")
      ->check(CLI::IsMember({"default", "casefold", "verbatim"}));
  add_json(iaa);

  auto* entropy = app.add_subcommand("entropy", "semantic-type entropy of beams");
  entropy->add_option("--beams", o.beams, "beam JSONL")->required()->check(CLI::ExistingFile);
  entropy->add_option("--top-n", o.top_n, "hypotheses per beam (0 = all)");
  entropy->add_option("--base", o.base, "nats or bits")->check(CLI::IsMember({"nats", "bits"}));
  add_json(entropy);

  auto* prefs = app.add_subcommand("prefs", "log-probability preferences per condition");
  prefs->add_option("--in", o.in, "log-prob JSONL")->required()->check(CLI::ExistingFile);
  add_json(prefs);

  auto* challenge = app.add_subcommand("challenge", "challenge-set report");
  challenge->add_option("--items", o.items, "challenge set JSONL")->required()->check(CLI::ExistingFile);
  challenge->add_option("--beams", o.beams, "beam JSONL")->required()->check(CLI::ExistingFile);
  challenge->add_option("--k", o.k, "beam cut-off for top-k")->check(CLI::PositiveNumber);
  add_json(challenge);

  auto add_store = [&o](CLI::App* sub) {
    sub->add_option("--corpus", o.corpus, "corpus JSONL to load")->check(CLI::ExistingFile);
    sub->add_option("--docs", o.docs, "documents JSONL")->check(CLI::ExistingFile);
    sub->add_option("--candidates", o.candidates, "detector output for --docs")->check(CLI::ExistingFile);
    sub->add_option("--journal", o.journal, "append-only annotation journal");
    sub->add_option("--assignments", o.assignments, "TSV annotator<TAB>instance_id")
        ->check(CLI::ExistingFile);
    sub->add_flag("--strict", o.strict, "treat anchor inconsistencies as errors");
  };

  auto* serve = app.add_subcommand("serve", "run the annotation HTTP service");
  add_store(serve);
  serve->add_option("--host", o.host, "bind address");
  serve->add_option("--port", o.port, "port")->check(CLI::Range(1, 65535));
  serve->add_option("--compact-every", o.compact_every, "compact the journal every N writes");

  auto* exp = app.add_subcommand("export", "write annotations as corpus JSONL");
  add_store(exp);
  exp->add_option("--annotator", o.annotator, "one annotator (default: latest decision)");
  exp->add_option("--out", o.out, "output path (default: stdout)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Config cfg = o.config.empty() ? default_config() : load_config(o.config);
    if (!o.normalization.empty()) cfg.normalization = *eval::parse_normalization(o.normalization);

    if (detect->parsed()) return cmd_detect(o, out);
    if (validate->parsed()) return cmd_validate(o, cfg, out, err);
    if (stats->parsed()) return cmd_stats(o, cfg, out, err);
    if (split->parsed()) return cmd_split(o, cfg, out, err);
    if (score->parsed()) return cmd_score(o, cfg, out, err);
    if (iaa->parsed()) return cmd_iaa(o, cfg, out, err);
    if (entropy->parsed()) return cmd_entropy(o, cfg, out);
    if (prefs->parsed()) return cmd_prefs(o, out);
    if (challenge->parsed()) return cmd_challenge(o, cfg, out);
    if (serve->parsed()) return cmd_serve(o, cfg, out, err);
    if (exp->parsed()) return cmd_export(o, cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace supersem::cli
