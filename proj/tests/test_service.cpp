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

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "service_harness.hpp"
#include "supersem/corpus.hpp"
#include "support.hpp"

using namespace supersem;
using namespace supersem::service;
using json = nlohmann::json;

namespace {

std::vector<Document> e2e_documents() {
  std::ifstream in(testing::data_dir() / "fixtures" / "e2e_documents.jsonl");
  return parse_documents(in);
}

void fill(AnnotationStore& store) {
  const auto docs = e2e_documents();
  std::vector<Candidate> cands;
  const Detector d;
  for (const auto& doc : docs) {
    for (auto& c : d.detect_document(doc)) cands.push_back(std::move(c));
  }
  store.add_detector_output(docs, cands);
}

Corpus sample_corpus() {
  return load_corpus(testing::data_dir() / "sample" / "sample_corpus.jsonl").corpus;
}

// Instance id of the first candidate in `doc` with this surface.
std::string find_id(const AnnotationStore& store, const std::string& doc, const std::string& surface) {
  const auto c = store.candidates(doc);
  REQUIRE(c.has_value());
  for (const auto& x : (*c)["candidates"]) {
    if (x["record"]["surface"] == surface) return x["instance_id"].get<std::string>();
  }
  FAIL("no candidate " << surface << " in " << doc);
  return {};
}

json widest_frame() {
  return json::parse(R"({"target": "Amazon", "cs": "river LOCATION=South America",
    "anchor": {"index": 0, "role": ""}, "property": "width", "orientation": "positive"})");
}

json body_with(json frame, uint64_t rev) { return json{{"expected_revision", rev}, {"frame", frame}}; }

httplib::Result post(httplib::Client& c, const std::string& id, const json& body,
                     const std::string& annotator = "ann") {
  httplib::Headers h;
  if (!annotator.empty()) h.emplace("X-Annotator-Id", annotator);
  return c.Post(("/instance/" + id + "/frame").c_str(), h, body.dump(), "application/json");
}

Submission frame_sub(const json& frame, uint64_t rev, bool override_warnings = false) {
  Submission s;
  s.expected_revision = rev;
  s.frame = frame_from_json(frame);
  s.override_warnings = override_warnings;
  return s;
}

size_t count_lines(const std::string& s) {
  size_t n = 0;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) n += line.empty() ? 0 : 1;
  return n;
}

}  // namespace

TEST_CASE("documents and candidates are served as loaded") {
  AnnotationStore store;
  fill(store);
  testing::TestServer srv(store);
  auto c = srv.client();

  auto r = c.Get("/documents");
  REQUIRE(r);
  CHECK(r->status == 200);
  CHECK(json::parse(r->body)["documents"].size() == e2e_documents().size());

  const auto doc = e2e_documents()[1];
  r = c.Get(("/candidates?doc=" + doc.id).c_str());
  REQUIRE(r);
  REQUIRE(r->status == 200);
  const auto body = json::parse(r->body);
  const auto expected = Detector().detect_document(doc);
  REQUIRE(body["candidates"].size() == expected.size());
  for (size_t i = 0; i < expected.size(); ++i) {
    CHECK(body["candidates"][i]["record"] == json::parse(candidate_to_json(expected[i]).dump()));
  }
  CHECK(c.Get("/candidates?doc=nope")->status == 404);
  CHECK(c.Get("/candidates")->status == 400);
}

TEST_CASE("instance payload and context window") {
  AnnotationStore store;
  fill(store);
  testing::TestServer srv(store);
  auto c = srv.client();
  CHECK(c.Get("/instance/no-such-id")->status == 404);

  const std::string id = find_id(store, "e2e-02", "brightest");
  auto r = c.Get(("/instance/" + id).c_str());
  REQUIRE(r);
  REQUIRE(r->status == 200);
  const auto j = json::parse(r->body);
  CHECK(j["instance"]["id"] == id);
  CHECK(j["candidate"]["surface"] == "brightest");
  // First sentence of a two-sentence document: one sentence after it.
  CHECK(j["context"]["first_sentence"] == 0);
  CHECK(j["context"]["last_sentence"] == 1);
  CHECK(j["context"]["text"] == e2e_documents()[1].text);
  CHECK(j["annotations"].empty());

  StoreOptions tight;
  tight.window_before = 0;
  tight.window_after = 0;
  AnnotationStore narrow(tight);
  fill(narrow);
  const auto p = narrow.instance_payload(id);
  REQUIRE(p.has_value());
  CHECK((*p)["context"]["text"] == "Sirius is the brightest star in the night sky.");
}

TEST_CASE("submissions are validated") {
  AnnotationStore store;
  fill(store);
  testing::TestServer srv(store);
  auto c = srv.client();
  const std::string id = find_id(store, "e2e-01", "widest");

  json bad = widest_frame();
  bad["rank"] = 0;
  auto r = post(c, id, body_with(bad, 0));
  REQUIRE(r);
  CHECK(r->status == 422);
  auto j = json::parse(r->body);
  REQUIRE(j["violations"].size() >= 1);
  CHECK(j["violations"][0]["field"] == "rank");
  CHECK(j["violations"][0]["severity"] == "error");

  CHECK(post(c, id, body_with(widest_frame(), 0), "")->status == 400);
  CHECK(post(c, id, json{{"frame", widest_frame()}})->status == 400);
  CHECK(post(c, id, json{{"expected_revision", 0}})->status == 400);
  CHECK(post(c, id, json{{"expected_revision", 0}, {"skip", true}, {"non_superlative", true}})->status ==
        400);
  CHECK(c.Post(("/instance/" + id + "/frame").c_str(), httplib::Headers{{"X-Annotator-Id", "ann"}},
               "{broken", "application/json")
            ->status == 400);
  CHECK(post(c, "nope", body_with(widest_frame(), 0))->status == 404);

  r = post(c, id, body_with(widest_frame(), 0));
  REQUIRE(r->status == 200);
  j = json::parse(r->body);
  CHECK(j["revision"] == 1);
  CHECK(j["status"] == "annotated");
  CHECK(j["warnings"].empty());

  r = post(c, id, body_with(widest_frame(), 0));
  CHECK(r->status == 409);
  CHECK(json::parse(r->body)["revision"] == 1);
  CHECK(post(c, id, body_with(widest_frame(), 1))->status == 200);
}

TEST_CASE("warnings need an explicit override") {
  AnnotationStore store;
  fill(store);
  const std::string id = find_id(store, "e2e-01", "widest");
  json f = widest_frame();
  f["anchor"] = {{"index", 1}, {"role", "TIME"}};
  auto w = store.submit("ann", id, frame_sub(f, 0));
  CHECK(w.code == 422);
  REQUIRE_FALSE(w.violations.empty());
  CHECK(w.violations[0].severity == Severity::kWarning);
  w = store.submit("ann", id, frame_sub(f, 0, true));
  CHECK(w.code == 200);
  CHECK(w.violations.size() == 1);

  StoreOptions strict_opts;
  strict_opts.strict = true;
  AnnotationStore strict(strict_opts);
  fill(strict);
  CHECK(strict.submit("ann", id, frame_sub(f, 0, true)).code == 422);
}

TEST_CASE("proportional quantifier marked non-superlative") {
  AnnotationStore store;
  fill(store);
  testing::TestServer srv(store);
  auto c = srv.client();
  const std::string id = find_id(store, "e2e-02", "least");
  auto inst = json::parse(c.Get(("/instance/" + id).c_str())->body);
  CHECK(inst["candidate"]["filtered"] == true);
  CHECK(inst["candidate"]["reason"] == kReasonProportional);
  auto r = post(c, id, json{{"expected_revision", 0}, {"non_superlative", true}});
  REQUIRE(r->status == 200);
  CHECK(json::parse(r->body)["status"] == "marked-non-superlative");

  const auto exported = store.export_corpus("ann");
  REQUIRE(exported.size() == 1);
  CHECK_FALSE(exported[0].is_superlative);
  CHECK_FALSE(exported[0].frame.has_value());
}

TEST_CASE("skips are recorded but not exported") {
  AnnotationStore store;
  fill(store);
  const std::string id = find_id(store, "e2e-01", "widest");
  Submission s;
  s.skip = true;
  CHECK(store.submit("ann", id, s).code == 200);
  CHECK(store.annotation("ann", id)->status == Status::kSkipped);
  CHECK(store.export_corpus("ann").empty());
  const auto p = store.progress("ann");
  CHECK(p["annotators"][0]["skipped"] == 1);
  CHECK(p["annotators"][0]["unseen"] == store.size() - 1);
}

TEST_CASE("assignments restrict writes") {
  AnnotationStore store;
  fill(store);
  const std::string mine = find_id(store, "e2e-01", "widest");
  const std::string other = find_id(store, "e2e-02", "brightest");
  store.assign("ann", {mine});
  CHECK(store.submit("ann", other, frame_sub(widest_frame(), 0)).code == 403);
  CHECK(store.submit("ann", mine, frame_sub(widest_frame(), 0)).code == 200);
  CHECK(store.progress("ann")["annotators"][0]["assigned"] == 1);
  CHECK_THROWS_AS(store.assign("ann", {"missing"}), std::invalid_argument);
}

TEST_CASE("agreement endpoints") {
  AnnotationStore store;
  store.add_corpus(sample_corpus());
  for (const auto& inst : sample_corpus()) {
    Submission s;
    if (inst.frame) {
      s.frame = inst.frame;
      s.override_warnings = true;
    } else {
      s.non_superlative = true;
    }
    REQUIRE(store.submit("b", inst.id, s).code == 200);
  }
  testing::TestServer srv(store);
  auto c = srv.client();

  auto r = c.Get("/iaa?annotator_a=import&annotator_b=b");
  REQUIRE(r->status == 200);
  auto j = json::parse(r->body);
  CHECK(j["overlap"] == sample_corpus().size());
  for (const auto& row : j["report"]["rows"]) {
    if (!row["accuracy"].is_null()) CHECK(row["accuracy"] == 1.0);
  }

  const auto first = c.Get("/iaa?annotator_a=import&annotator_b=b&sample=30&seed=4")->body;
  const auto second = c.Get("/iaa?annotator_a=import&annotator_b=b&sample=30&seed=4")->body;
  CHECK(first == second);
  CHECK(json::parse(first)["sampled"].get<size_t>() <= 30);
  CHECK(c.Get("/iaa?annotator_a=import&annotator_b=b&sample=3x")->status == 400);

  CHECK(c.Get("/iaa?annotator_a=import&annotator_b=nobody")->status == 400);
  CHECK(c.Get("/iaa?annotator_a=import")->status == 400);
  CHECK_THROWS_AS(store.iaa("import", "nobody"), std::invalid_argument);

  r = c.Get("/disagreements?annotator_a=import&annotator_b=b");
  CHECK(json::parse(r->body)["instances"].empty());
}

TEST_CASE("disagreements name the differing slots") {
  AnnotationStore store;
  store.add_corpus(sample_corpus());
  const auto inst = sample_corpus().front();
  SuperlativeFrame f = *inst.frame;
  f.property = "something else";
  f.orientation = Orientation::kNegative;
  Submission s;
  s.frame = f;
  s.override_warnings = true;
  REQUIRE(store.submit("b", inst.id, s).code == 200);
  const auto d = store.disagreements("import", "b");
  CHECK(d["overlap"] == 1);
  REQUIRE(d["instances"].size() == 1);
  CHECK(d["instances"][0]["fields"] == json::array({"property", "orientation"}));
  const auto rep = store.iaa("import", "b");
  CHECK(rep.instances == 1);
}

TEST_CASE("export") {
  AnnotationStore store;
  fill(store);
  testing::TestServer srv(store);
  auto c = srv.client();
  auto r = c.Get("/export");
  REQUIRE(r->status == 200);
  CHECK(r->body.empty());
  CHECK(r->get_header_value("Content-Type") == "application/x-ndjson");

  const std::string a = find_id(store, "e2e-01", "widest");
  const std::string b = find_id(store, "e2e-02", "least");
  REQUIRE(post(c, a, body_with(widest_frame(), 0))->status == 200);
  REQUIRE(post(c, b, json{{"expected_revision", 0}, {"non_superlative", true}})->status == 200);
  r = c.Get("/export?annotator=ann");
  CHECK(count_lines(r->body) == 2);
  CHECK(c.Get("/export")->body == r->body);
  CHECK(c.Get("/export?annotator=else")->body.empty());

  std::istringstream in(r->body);
  const auto loaded = load_corpus(in);
  CHECK(loaded.report.error_count() == 0);
  REQUIRE(loaded.corpus.size() == 2);
  CHECK(loaded.corpus == store.export_corpus("ann"));
  const auto& got = *loaded.corpus[0].frame;
  CHECK(got.superlative_span == "widest");
  CHECK(serialize_frame(got.cs) == "river LOCATION=South America");
  std::ostringstream again;
  export_corpus(loaded.corpus, again);
  CHECK(again.str() == r->body);
}

TEST_CASE("imported corpus exports unchanged") {
  AnnotationStore store;
  const Corpus corpus = sample_corpus();
  store.add_corpus(corpus);
  Corpus sorted = corpus;
  std::sort(sorted.begin(), sorted.end(),
            [](const AnnotatedInstance& x, const AnnotatedInstance& y) { return x.id < y.id; });
  CHECK(store.export_corpus() == sorted);
  CHECK(store.export_corpus("import") == sorted);
  CHECK_THROWS_AS(store.add_corpus(corpus), std::invalid_argument);
}

TEST_CASE("concurrent writers on one revision") {
  AnnotationStore store;
  fill(store);
  testing::TestServer srv(store);
  const std::string id = find_id(store, "e2e-01", "widest");
  constexpr int kThreads = 8;
  std::atomic<int> ok{0}, conflict{0}, other{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < kThreads; ++t) {
    threads.emplace_back([&] {
      auto c = srv.client();
      auto r = post(c, id, body_with(widest_frame(), 0));
      if (r && r->status == 200) {
        ++ok;
      } else if (r && r->status == 409) {
        ++conflict;
      } else {
        ++other;
      }
    });
  }
  for (auto& t : threads) t.join();
  CHECK(ok == 1);
  CHECK(conflict == kThreads - 1);
  CHECK(other == 0);
  CHECK(store.annotation("ann", id)->revision == 1);
}

TEST_CASE("journal replay and compaction") {
  testing::TempDir dir;
  const auto journal = dir.path() / "journal.jsonl";
  StoreOptions opts;
  opts.journal = journal;
  std::string a, b, exported;
  {
    AnnotationStore store(opts);
    fill(store);
    CHECK(store.open_journal() == 0);
    a = find_id(store, "e2e-01", "widest");
    b = find_id(store, "e2e-02", "least");
    REQUIRE(store.submit("ann", a, frame_sub(widest_frame(), 0)).code == 200);
    json f = widest_frame();
    f["property"] = "breadth";
    REQUIRE(store.submit("ann", a, frame_sub(f, 1)).code == 200);
    Submission s;
    s.non_superlative = true;
    REQUIRE(store.submit("other", b, s).code == 200);
    std::ostringstream os;
    export_corpus(store.export_corpus(), os);
    exported = os.str();
  }
  CHECK(count_lines(testing::slurp(journal)) == 3);

  // Replay without any documents loaded.
  AnnotationStore replayed(opts);
  CHECK(replayed.open_journal() == 3);
  CHECK(replayed.annotation("ann", a)->revision == 2);
  CHECK(replayed.annotation("ann", a)->frame->property == "breadth");
  std::ostringstream os;
  export_corpus(replayed.export_corpus(), os);
  CHECK(os.str() == exported);

  replayed.compact();
  CHECK(count_lines(testing::slurp(journal)) == 2);
  CHECK_FALSE(std::filesystem::exists(journal.string() + ".tmp"));
  AnnotationStore again(opts);
  CHECK(again.open_journal() == 2);
  std::ostringstream os2;
  export_corpus(again.export_corpus(), os2);
  CHECK(os2.str() == exported);
  CHECK(again.submit("ann", a, frame_sub(widest_frame(), 2)).code == 200);
}

TEST_CASE("periodic compaction") {
  testing::TempDir dir;
  StoreOptions opts;
  opts.journal = dir.path() / "j.jsonl";
  opts.compact_every = 2;
  AnnotationStore store(opts);
  fill(store);
  store.open_journal();
  const std::string a = find_id(store, "e2e-01", "widest");
  for (uint64_t rev = 0; rev < 4; ++rev) REQUIRE(store.submit("ann", a, frame_sub(widest_frame(), rev)).code == 200);
  CHECK(count_lines(testing::slurp(*opts.journal)) == 1);
}

TEST_CASE("corrupt journal lines are reported") {
  testing::TempDir dir;
  StoreOptions opts;
  opts.journal = dir.path() / "j.jsonl";
  testing::write_file(*opts.journal, "{\"annotator\": \"x\"}\n");
  AnnotationStore store(opts);
  CHECK_THROWS_WITH_AS(store.open_journal(), doctest::Contains("journal line 1"), std::runtime_error);
}

TEST_CASE("preflight and progress") {
  AnnotationStore store;
  fill(store);
  testing::TestServer srv(store);
  auto c = srv.client();
  auto r = c.Options("/instance/x/frame");
  REQUIRE(r);
  CHECK(r->status == 204);
  CHECK(r->get_header_value("Access-Control-Allow-Origin") == "*");
  r = c.Get("/progress?annotator=ann");
  const auto j = json::parse(r->body);
  CHECK(j["instances"] == store.size());
  CHECK(j["annotators"][0]["unseen"] == store.size());
}

TEST_CASE("documents need a known domain") {
  AnnotationStore store;
  const std::vector<Document> docs{{"d", "It is the best.", "Twitter"}};
  CHECK_THROWS_AS(store.add_detector_output(docs, {}), std::invalid_argument);
  const std::vector<Document> ok{{"d", "It is the best.", "Reviews"}};
  Candidate stray;
  stray.doc_id = "elsewhere";
  CHECK_THROWS_AS(store.add_detector_output(ok, {stray}), std::invalid_argument);
}
