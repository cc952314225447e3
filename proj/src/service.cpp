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

#include "supersem/service.hpp"

#include <httplib.h>

#include <algorithm>
#include <mutex>
#include <sstream>

#include "supersem/text.hpp"

namespace supersem::service {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kUnseen: return "unseen";
    case Status::kSkipped: return "skipped";
    case Status::kNonSuperlative: return "marked-non-superlative";
    case Status::kAnnotated: return "annotated";
  }
  return "unseen";
}

std::optional<Status> parse_status(std::string_view s) {
  for (Status st : {Status::kUnseen, Status::kSkipped, Status::kNonSuperlative, Status::kAnnotated}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

namespace {

bool is_decided(Status s) { return s == Status::kAnnotated || s == Status::kNonSuperlative; }

bool flag(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) return false;
  if (!it->is_boolean()) throw std::invalid_argument(std::string(key) + ": must be a boolean");
  return it->get<bool>();
}

ojson violation_json(const Violation& v) {
  return ojson{{"severity", std::string(to_string(v.severity))},
               {"field", v.field},
               {"message", v.message}};
}

ojson window_json(const ContextWindow& w) {
  return ojson{{"start", w.span.start},
               {"end", w.span.end},
               {"first_sentence", w.first_sentence},
               {"last_sentence", w.last_sentence},
               {"text", w.text}};
}

size_t sentence_containing(const std::vector<TextSpan>& sentences, size_t offset) {
  for (size_t i = 0; i < sentences.size(); ++i) {
    if (offset >= sentences[i].start && offset < sentences[i].end) return i;
  }
  return 0;
}

std::string instance_id_for(const Candidate& c) {
  return c.doc_id + ":" + std::to_string(c.span.start) + "-" + std::to_string(c.span.end);
}

}  // namespace

Submission parse_submission(const json& body) {
  if (!body.is_object()) throw std::invalid_argument("body: must be a JSON object");
  Submission s;
  auto rev = body.find("expected_revision");
  if (rev == body.end() || !rev->is_number_unsigned()) {
    throw std::invalid_argument("expected_revision: must be a non-negative integer");
  }
  s.expected_revision = rev->get<uint64_t>();
  s.override_warnings = flag(body, "override");
  s.non_superlative = flag(body, "non_superlative");
  s.skip = flag(body, "skip");
  if (auto f = body.find("frame"); f != body.end() && !f->is_null()) s.frame = frame_from_json(*f);
  const int modes = (s.non_superlative ? 1 : 0) + (s.skip ? 1 : 0) + (s.frame ? 1 : 0);
  if (modes != 1) {
    throw std::invalid_argument("body: exactly one of frame, non_superlative or skip is required");
  }
  return s;
}

AnnotationStore::AnnotationStore(StoreOptions opts) : opts_(std::move(opts)) {}

void AnnotationStore::add_item(StoreItem item) {
  const std::string id = item.instance.id;
  if (!items_.emplace(id, std::move(item)).second) {
    throw std::invalid_argument("duplicate instance id '" + id + "'");
  }
}

void AnnotationStore::add_detector_output(const std::vector<Document>& docs,
                                          const std::vector<Candidate>& cands,
                                          const Detector& detector) {
  std::unique_lock lock(mu_);
  std::map<std::string, Domain> domains;
  for (const auto& d : docs) {
    const auto dom = parse_domain(d.domain);
    if (!dom) throw std::invalid_argument("document '" + d.id + "': unknown domain '" + d.domain + "'");
    domains[d.id] = *dom;
    if (docs_.emplace(d.id, d).second) {
      doc_order_.push_back(d.id);
      sentences_[d.id] = detector.segment(d.text);
    }
  }
  for (const auto& c : cands) {
    auto doc = docs_.find(c.doc_id);
    if (doc == docs_.end()) throw std::invalid_argument("candidate of unknown document '" + c.doc_id + "'");
    const auto& sents = sentences_[c.doc_id];
    if (c.span.end > doc->second.text.size() || c.sentence_index >= sents.size()) {
      throw std::invalid_argument("candidate " + instance_id_for(c) + " lies outside its document");
    }
    StoreItem item;
    AnnotatedInstance& inst = item.instance;
    inst.id = instance_id_for(c);
    inst.domain = domains.count(c.doc_id) ? domains[c.doc_id] : *parse_domain(doc->second.domain);
    inst.doc_id = c.doc_id;
    inst.doc_text = doc->second.text;
    inst.sentence_span = sents[c.sentence_index];
    if (c.span.start < inst.sentence_span.start || c.span.end > inst.sentence_span.end) {
      inst.sentence_span = sents[sentence_containing(sents, c.span.start)];
    }
    inst.trigger_span = c.span;
    item.candidate = c;
    item.candidate_record = candidate_to_json(c);
    add_item(std::move(item));
  }
}

void AnnotationStore::add_corpus(const Corpus& corpus, const Detector& detector) {
  std::unique_lock lock(mu_);
  for (const auto& src : corpus) {
    const std::string doc_id = src.doc_id.empty() ? src.id : src.doc_id;
    if (docs_.emplace(doc_id, Document{doc_id, src.doc_text, std::string(to_string(src.domain))}).second) {
      doc_order_.push_back(doc_id);
      sentences_[doc_id] = detector.segment(src.doc_text);
    }
    StoreItem item;
    item.instance = src;
    item.instance.frame.reset();
    item.instance.is_superlative = false;
    Candidate& c = item.candidate;
    c.doc_id = doc_id;
    c.sentence_index = sentence_containing(sentences_[doc_id], src.sentence_span.start);
    c.span = src.trigger_span;
    c.surface = std::string(src.trigger());
    c.kind = detector.word_kind(text::to_lower(c.surface)).value_or(SyntacticKind::kAdjectival);
    item.candidate_record = candidate_to_json(c);
    add_item(std::move(item));

    Annotation a;
    a.status = src.is_superlative ? Status::kAnnotated : Status::kNonSuperlative;
    a.revision = 1;
    a.frame = src.frame;
    a.sequence = ++sequence_;
    AnnotationSession& s = sessions_[opts_.import_annotator];
    s.annotator_id = opts_.import_annotator;
    s.annotations[src.id] = a;
  }
}

void AnnotationStore::assign(const std::string& annotator, const std::vector<std::string>& ids) {
  std::unique_lock lock(mu_);
  AnnotationSession& s = sessions_[annotator];
  s.annotator_id = annotator;
  for (const auto& id : ids) {
    if (!items_.count(id)) throw std::invalid_argument("cannot assign unknown instance '" + id + "'");
    s.assigned.insert(id);
  }
}

AnnotatedInstance AnnotationStore::decided(const StoreItem& item, const Annotation& a) const {
  AnnotatedInstance inst = item.instance;
  inst.is_superlative = a.status == Status::kAnnotated;
  inst.frame = inst.is_superlative ? a.frame : std::nullopt;
  if (inst.frame) inst.frame->superlative_span = std::string(inst.trigger());
  const bool untouched_import = a.revision == 1 && a.sequence > 0 &&
                                sessions_.count(opts_.import_annotator) &&
                                sessions_.at(opts_.import_annotator).annotations.count(inst.id) &&
                                sessions_.at(opts_.import_annotator).annotations.at(inst.id).sequence ==
                                    a.sequence;
  if (!untouched_import) inst.stored_type.reset();
  return inst;
}

// ---------------------------------------------------------------------------
// Journal

void AnnotationStore::append_journal(const std::string& annotator, const StoreItem& item,
                                     const Annotation& a) {
  if (!journal_.is_open()) return;
  ojson rec{{"annotator", annotator},
            {"status", std::string(to_string(a.status))},
            {"revision", a.revision},
            {"sequence", a.sequence},
            {"instance", instance_to_json(decided(item, a))},
            {"candidate", item.candidate_record}};
  journal_ << rec.dump() << '\n';
  journal_.flush();
}

size_t AnnotationStore::open_journal() {
  std::unique_lock lock(mu_);
  if (!opts_.journal) return 0;
  size_t applied = 0;
  if (std::ifstream in(*opts_.journal); in) {
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (text::trim(line).empty()) continue;
      try {
        const json rec = json::parse(line);
        const std::string annotator = rec.at("annotator").get<std::string>();
        const auto status = parse_status(rec.at("status").get<std::string>());
        if (!status) throw std::invalid_argument("unknown status");
        AnnotatedInstance inst = instance_from_json(rec.at("instance"));
        auto it = items_.find(inst.id);
        if (it == items_.end()) {
          StoreItem item;
          item.instance = inst;
          item.instance.frame.reset();
          item.instance.is_superlative = false;
          item.candidate = candidate_from_json(rec.at("candidate"));
          item.candidate_record = rec.at("candidate");
          const std::string doc_id = item.candidate.doc_id;
          if (docs_.emplace(doc_id, Document{doc_id, inst.doc_text, std::string(to_string(inst.domain))})
                  .second) {
            doc_order_.push_back(doc_id);
            sentences_[doc_id] = Detector().segment(inst.doc_text);
          }
          add_item(std::move(item));
        }
        Annotation a;
        a.status = *status;
        a.revision = rec.at("revision").get<uint64_t>();
        a.sequence = rec.at("sequence").get<uint64_t>();
        a.frame = inst.frame;
        AnnotationSession& s = sessions_[annotator];
        s.annotator_id = annotator;
        Annotation& cur = s.annotations[inst.id];
        if (a.revision > cur.revision) cur = a;
        sequence_ = std::max(sequence_, a.sequence);
        ++applied;
      } catch (const std::exception& e) {
        throw std::runtime_error("journal line " + std::to_string(lineno) + ": " + e.what());
      }
    }
  }
  journal_.open(*opts_.journal, std::ios::app);
  if (!journal_) throw std::runtime_error("cannot open journal " + opts_.journal->string());
  return applied;
}

void AnnotationStore::compact_locked() {
  if (!opts_.journal || !journal_.is_open()) return;
  struct Entry {
    uint64_t sequence;
    const std::string* annotator;
    const StoreItem* item;
    const Annotation* a;
  };
  std::vector<Entry> entries;
  for (const auto& [name, s] : sessions_) {
    for (const auto& [id, a] : s.annotations) {
      if (a.status == Status::kUnseen) continue;
      entries.push_back({a.sequence, &name, &items_.at(id), &a});
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& x, const Entry& y) { return x.sequence < y.sequence; });
  journal_.close();
  const auto tmp = std::filesystem::path(opts_.journal->string() + ".tmp");
  journal_.open(tmp, std::ios::trunc);
  for (const auto& e : entries) append_journal(*e.annotator, *e.item, *e.a);
  journal_.close();
  std::filesystem::rename(tmp, *opts_.journal);
  journal_.open(*opts_.journal, std::ios::app);
  writes_since_compaction_ = 0;
}

void AnnotationStore::compact() {
  std::unique_lock lock(mu_);
  compact_locked();
}

// ---------------------------------------------------------------------------
// Writes

WriteResult AnnotationStore::submit(const std::string& annotator, const std::string& instance_id,
                                    const Submission& sub) {
  std::unique_lock lock(mu_);
  WriteResult res;
  if (annotator.empty()) {
    res.code = 400;
    res.message = "missing annotator id";
    return res;
  }
  auto it = items_.find(instance_id);
  if (it == items_.end()) {
    res.code = 404;
    res.message = "unknown instance '" + instance_id + "'";
    return res;
  }
  AnnotationSession& s = sessions_[annotator];
  s.annotator_id = annotator;
  if (!s.assigned.empty() && !s.assigned.count(instance_id)) {
    res.code = 403;
    res.message = "instance '" + instance_id + "' is not assigned to '" + annotator + "'";
    return res;
  }
  Annotation& cur = s.annotations[instance_id];
  res.revision = cur.revision;
  if (sub.expected_revision != cur.revision) {
    res.code = 409;
    res.message = "revision conflict: expected " + std::to_string(sub.expected_revision) +
                  ", current " + std::to_string(cur.revision);
    return res;
  }

  Annotation next;
  if (sub.frame) {
    SuperlativeFrame frame = *sub.frame;
    frame.superlative_span = std::string(it->second.instance.trigger());
    const RoleInventory& roles = opts_.roles ? *opts_.roles : default_role_inventory();
    res.violations = validate_frame(frame, opts_.strict, roles);
    if (has_errors(res.violations)) {
      res.code = 422;
      res.message = "frame has validation errors";
      return res;
    }
    if (!res.violations.empty() && !sub.override_warnings) {
      res.code = 422;
      res.message = "frame has warnings; resubmit with override to accept them";
      return res;
    }
    next.status = Status::kAnnotated;
    next.frame = std::move(frame);
  } else {
    next.status = sub.non_superlative ? Status::kNonSuperlative : Status::kSkipped;
  }
  next.revision = cur.revision + 1;
  next.sequence = ++sequence_;
  cur = std::move(next);
  res.revision = cur.revision;
  append_journal(annotator, it->second, cur);
  if (opts_.compact_every > 0 && ++writes_since_compaction_ >= opts_.compact_every) compact_locked();
  return res;
}

// ---------------------------------------------------------------------------
// Reads

size_t AnnotationStore::size() const {
  std::shared_lock lock(mu_);
  return items_.size();
}

std::vector<Document> AnnotationStore::documents() const {
  std::shared_lock lock(mu_);
  std::vector<Document> out;
  for (const auto& id : doc_order_) out.push_back(docs_.at(id));
  return out;
}

std::optional<ojson> AnnotationStore::candidates(const std::string& doc_id) const {
  std::shared_lock lock(mu_);
  auto doc = docs_.find(doc_id);
  if (doc == docs_.end()) return std::nullopt;
  std::vector<const StoreItem*> found;
  for (const auto& [id, item] : items_) {
    if (item.candidate.doc_id == doc_id) found.push_back(&item);
  }
  std::sort(found.begin(), found.end(), [](const StoreItem* a, const StoreItem* b) {
    return std::pair(a->candidate.span.start, a->candidate.span.end) <
           std::pair(b->candidate.span.start, b->candidate.span.end);
  });
  const auto& sents = sentences_.at(doc_id);
  ojson list = ojson::array();
  for (const StoreItem* item : found) {
    const size_t idx = sentence_containing(sents, item->candidate.span.start);
    list.push_back(ojson{
        {"instance_id", item->instance.id},
        {"record", item->candidate_record},
        {"context", window_json(context_window(doc->second.text, sents, idx, opts_.window_before,
                                               opts_.window_after))}});
  }
  return ojson{{"doc_id", doc_id}, {"candidates", list}};
}

std::optional<ojson> AnnotationStore::instance_payload(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = items_.find(id);
  if (it == items_.end()) return std::nullopt;
  const StoreItem& item = it->second;
  const auto& sents = sentences_.at(item.candidate.doc_id);
  const size_t idx = sentence_containing(sents, item.instance.trigger_span.start);
  ojson inst = instance_to_json(item.instance);
  inst.erase("is_superlative");
  ojson annotations = ojson::object();
  for (const auto& [name, s] : sessions_) {
    auto a = s.annotations.find(id);
    if (a == s.annotations.end()) continue;
    ojson rec{{"status", std::string(to_string(a->second.status))}, {"revision", a->second.revision}};
    if (a->second.frame) {
      SuperlativeFrame f = *a->second.frame;
      rec["frame"] = frame_to_json(f);
    }
    annotations[name] = rec;
  }
  return ojson{{"instance", inst},
               {"candidate", item.candidate_record},
               {"context", window_json(context_window(item.instance.doc_text, sents, idx,
                                                      opts_.window_before, opts_.window_after))},
               {"annotations", annotations}};
}

std::optional<Annotation> AnnotationStore::annotation(const std::string& annotator,
                                                      const std::string& id) const {
  std::shared_lock lock(mu_);
  auto s = sessions_.find(annotator);
  if (s == sessions_.end()) return std::nullopt;
  auto a = s->second.annotations.find(id);
  if (a == s->second.annotations.end()) return std::nullopt;
  return a->second;
}

std::vector<std::string> AnnotationStore::annotators() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [name, _] : sessions_) out.push_back(name);
  return out;
}

ojson AnnotationStore::progress(const std::string& annotator) const {
  std::shared_lock lock(mu_);
  auto one = [this](const std::string& name, const AnnotationSession* s) {
    std::map<Status, size_t> counts;
    size_t assigned = 0;
    auto visit = [&](const std::string& id) {
      ++assigned;
      Status st = Status::kUnseen;
      if (s) {
        if (auto a = s->annotations.find(id); a != s->annotations.end()) st = a->second.status;
      }
      ++counts[st];
    };
    if (s && !s->assigned.empty()) {
      for (const auto& id : s->assigned) visit(id);
    } else {
      for (const auto& [id, _] : items_) visit(id);
    }
    return ojson{{"annotator_id", name},
                 {"assigned", assigned},
                 {"unseen", counts[Status::kUnseen]},
                 {"skipped", counts[Status::kSkipped]},
                 {"marked_non_superlative", counts[Status::kNonSuperlative]},
                 {"annotated", counts[Status::kAnnotated]}};
  };
  ojson list = ojson::array();
  if (!annotator.empty()) {
    auto s = sessions_.find(annotator);
    list.push_back(one(annotator, s == sessions_.end() ? nullptr : &s->second));
  } else {
    for (const auto& [name, s] : sessions_) list.push_back(one(name, &s));
  }
  return ojson{{"instances", items_.size()}, {"annotators", list}};
}

std::vector<std::string> AnnotationStore::overlap(const std::string& a, const std::string& b) const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  auto sa = sessions_.find(a);
  auto sb = sessions_.find(b);
  if (sa == sessions_.end() || sb == sessions_.end()) return out;
  for (const auto& [id, ann] : sa->second.annotations) {
    if (!is_decided(ann.status)) continue;
    auto other = sb->second.annotations.find(id);
    if (other != sb->second.annotations.end() && is_decided(other->second.status)) out.push_back(id);
  }
  return out;
}

Corpus AnnotationStore::annotator_corpus(const std::string& annotator,
                                         const std::vector<std::string>& ids) const {
  Corpus out;
  const AnnotationSession& s = sessions_.at(annotator);
  for (const auto& id : ids) out.push_back(decided(items_.at(id), s.annotations.at(id)));
  return out;
}

eval::IaaReport AnnotationStore::iaa(const std::string& a, const std::string& b, size_t sample,
                                     std::optional<uint64_t> seed) const {
  std::vector<std::string> ids = overlap(a, b);
  if (ids.empty()) {
    throw std::invalid_argument("annotators '" + a + "' and '" + b + "' share no decided instance");
  }
  if (sample > 0 && sample < ids.size()) {
    const auto perm = seeded_permutation(ids.size(), seed.value_or(opts_.sample_seed));
    std::vector<std::string> picked;
    for (size_t i = 0; i < sample; ++i) picked.push_back(ids[perm[i]]);
    std::sort(picked.begin(), picked.end());
    ids = std::move(picked);
  }
  std::shared_lock lock(mu_);
  return eval::iaa_report(annotator_corpus(a, ids), annotator_corpus(b, ids));
}

ojson AnnotationStore::disagreements(const std::string& a, const std::string& b) const {
  const std::vector<std::string> ids = overlap(a, b);
  std::shared_lock lock(mu_);
  ojson list = ojson::array();
  if (!ids.empty()) {
    const Corpus ca = annotator_corpus(a, ids);
    const Corpus cb = annotator_corpus(b, ids);
    for (size_t i = 0; i < ids.size(); ++i) {
      const auto& x = ca[i];
      const auto& y = cb[i];
      std::vector<std::string> fields;
      if (x.is_superlative != y.is_superlative) {
        fields.push_back("is_superlative");
      } else if (x.frame && y.frame) {
        const SuperlativeFrame& f = *x.frame;
        const SuperlativeFrame& g = *y.frame;
        if (!eval::exact_match_frame(serialize_frame(f.target), serialize_frame(g.target))) {
          fields.push_back("target");
        }
        if (!eval::exact_match_frame(serialize_frame(f.cs), serialize_frame(g.cs))) fields.push_back("cs");
        if (!(f.anchor == g.anchor)) fields.push_back("anchor");
        if (!eval::exact_match(f.property, g.property)) fields.push_back("property");
        if (f.orientation != g.orientation) fields.push_back("orientation");
        if (f.rank != g.rank) fields.push_back("rank");
        if (f.implicit != g.implicit) fields.push_back("implicit");
        if (f.amount != g.amount) fields.push_back("amount");
      }
      if (fields.empty()) continue;
      list.push_back(ojson{{"instance_id", ids[i]},
                           {"fields", fields},
                           {"a", x.frame ? frame_to_json(*x.frame) : ojson(nullptr)},
                           {"b", y.frame ? frame_to_json(*y.frame) : ojson(nullptr)}});
    }
  }
  return ojson{{"annotator_a", a}, {"annotator_b", b}, {"overlap", ids.size()}, {"instances", list}};
}

Corpus AnnotationStore::export_corpus(const std::string& annotator) const {
  std::shared_lock lock(mu_);
  Corpus out;
  if (!annotator.empty()) {
    auto s = sessions_.find(annotator);
    if (s == sessions_.end()) return out;
    for (const auto& [id, a] : s->second.annotations) {
      if (is_decided(a.status)) out.push_back(decided(items_.at(id), a));
    }
    return out;
  }
  for (const auto& [id, item] : items_) {
    const Annotation* best = nullptr;
    for (const auto& [name, s] : sessions_) {
      auto a = s.annotations.find(id);
      if (a == s.annotations.end() || !is_decided(a->second.status)) continue;
      if (!best || a->second.sequence > best->sequence) best = &a->second;
    }
    if (best) out.push_back(decided(item, *best));
  }
  return out;
}

// ---------------------------------------------------------------------------
// HTTP

namespace {

void send_json(httplib::Response& res, int status, const ojson& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, ojson{{"error", message}});
}

std::optional<uint64_t> query_number(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  const std::string v = req.get_param_value(key);
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return text::is_digit(c); })) {
    throw std::invalid_argument(std::string(key) + " must be a non-negative integer");
  }
  return std::stoull(v);
}

}  // namespace

void register_routes(httplib::Server& svr, AnnotationStore& store) {
  svr.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Headers", "Content-Type, X-Annotator-Id"}});
  svr.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string msg = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      msg = e.what();
    } catch (...) {
    }
    send_error(res, 500, msg);
  });
  svr.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  svr.Get("/documents", [&store](const httplib::Request&, httplib::Response& res) {
    ojson docs = ojson::array();
    for (const auto& d : store.documents()) docs.push_back(document_to_json(d));
    send_json(res, 200, ojson{{"documents", docs}});
  });

  svr.Get("/candidates", [&store](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_param("doc")) return send_error(res, 400, "missing query parameter 'doc'");
    const std::string doc = req.get_param_value("doc");
    auto body = store.candidates(doc);
    if (!body) return send_error(res, 404, "unknown document '" + doc + "'");
    send_json(res, 200, *body);
  });

  svr.Get(R"(/instance/([^/]+))", [&store](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    auto body = store.instance_payload(id);
    if (!body) return send_error(res, 404, "unknown instance '" + id + "'");
    send_json(res, 200, *body);
  });

  svr.Post(R"(/instance/([^/]+)/frame)", [&store](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    const std::string annotator = req.get_header_value("X-Annotator-Id");
    if (annotator.empty()) return send_error(res, 400, "missing X-Annotator-Id header");
    Submission sub;
    try {
      sub = parse_submission(json::parse(req.body));
    } catch (const std::exception& e) {
      return send_error(res, 400, e.what());
    }
    const WriteResult w = store.submit(annotator, id, sub);
    ojson violations = ojson::array();
    for (const auto& v : w.violations) violations.push_back(violation_json(v));
    if (w.code != 200) {
      return send_json(res, w.code,
                       ojson{{"error", w.message}, {"revision", w.revision}, {"violations", violations}});
    }
    const auto a = store.annotation(annotator, id);
    send_json(res, 200,
              ojson{{"instance_id", id},
                    {"annotator", annotator},
                    {"revision", w.revision},
                    {"status", std::string(to_string(a ? a->status : Status::kUnseen))},
                    {"warnings", violations}});
  });

  svr.Get("/iaa", [&store](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_param("annotator_a") || !req.has_param("annotator_b")) {
      return send_error(res, 400, "annotator_a and annotator_b are required");
    }
    const std::string a = req.get_param_value("annotator_a");
    const std::string b = req.get_param_value("annotator_b");
    try {
      const size_t sample = query_number(req, "sample").value_or(0);
      const auto seed = query_number(req, "seed");
      const size_t overlap = store.overlap(a, b).size();
      const auto report = store.iaa(a, b, sample, seed);
      send_json(res, 200,
                ojson{{"annotator_a", a},
                      {"annotator_b", b},
                      {"overlap", overlap},
                      {"sampled", report.instances},
                      {"report", eval::iaa_report_to_json(report)},
                      {"table", eval::render_iaa_report(report)}});
    } catch (const std::invalid_argument& e) {
      send_error(res, 400, e.what());
    }
  });

  svr.Get("/export", [&store](const httplib::Request& req, httplib::Response& res) {
    const std::string annotator = req.has_param("annotator") ? req.get_param_value("annotator") : "";
    std::ostringstream os;
    supersem::export_corpus(store.export_corpus(annotator), os);
    res.status = 200;
    res.set_content(os.str(), "application/x-ndjson");
  });

  svr.Get("/progress", [&store](const httplib::Request& req, httplib::Response& res) {
    const std::string annotator = req.has_param("annotator") ? req.get_param_value("annotator") : "";
    send_json(res, 200, store.progress(annotator));
  });

  svr.Get("/disagreements", [&store](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_param("annotator_a") || !req.has_param("annotator_b")) {
      return send_error(res, 400, "annotator_a and annotator_b are required");
    }
    send_json(res, 200,
              store.disagreements(req.get_param_value("annotator_a"), req.get_param_value("annotator_b")));
  });
}

int serve(AnnotationStore& store, const std::string& host, int port) {
  httplib::Server svr;
  register_routes(svr, store);
  return svr.listen(host, port) ? 0 : 1;
}

}  // namespace supersem::service
