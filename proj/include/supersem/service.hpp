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

// Annotation store and its JSON-over-HTTP front end.
//
// The store holds one instance per superlative candidate and, per annotator,
// a status and revision counter for every instance. Accepted writes are
// appended to a JSONL journal whose records carry the full instance payload,
// so a store can be rebuilt from the journal alone.

#ifndef SUPERSEM_SERVICE_HPP_
#define SUPERSEM_SERVICE_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "supersem/corpus.hpp"
#include "supersem/detector.hpp"
#include "supersem/frame.hpp"
#include "supersem/metrics.hpp"

namespace httplib {
class Server;
}

namespace supersem::service {

enum class Status { kUnseen, kSkipped, kNonSuperlative, kAnnotated };

std::string_view to_string(Status s);
std::optional<Status> parse_status(std::string_view s);

struct Annotation {
  Status status = Status::kUnseen;
  uint64_t revision = 0;  // 0 until the first accepted write
  std::optional<SuperlativeFrame> frame;
  uint64_t sequence = 0;  // store-wide order of the accepted write
};

struct AnnotationSession {
  std::string annotator_id;
  std::set<std::string> assigned;  // empty = every instance
  std::map<std::string, Annotation> annotations;
};

struct StoreOptions {
  size_t window_before = 1;
  size_t window_after = 1;
  bool strict = false;
  const RoleInventory* roles = nullptr;
  std::optional<std::filesystem::path> journal;
  size_t compact_every = 0;  // accepted writes between compactions; 0 = never
  std::string import_annotator = "import";
  uint64_t sample_seed = 13;
};

// Result of a write. `code` follows HTTP: 200 stored, 400 malformed,
// 403 not assigned, 404 unknown instance, 409 stale revision, 422 rejected
// by validation.
struct WriteResult {
  int code = 200;
  std::string message;
  uint64_t revision = 0;
  std::vector<Violation> violations;
};

struct Submission {
  uint64_t expected_revision = 0;
  bool override_warnings = false;
  bool non_superlative = false;
  bool skip = false;
  std::optional<SuperlativeFrame> frame;
};

// Parses a POST body {expected_revision, override?, non_superlative?,
// skip?, frame?}. Throws std::invalid_argument naming the bad field.
Submission parse_submission(const nlohmann::json& body);

struct StoreItem {
  AnnotatedInstance instance;  // no frame; frames live in sessions
  Candidate candidate;
  nlohmann::ordered_json candidate_record;  // as read, or as derived
};

class AnnotationStore {
 public:
  explicit AnnotationStore(StoreOptions opts = {});

  // One instance per candidate. Documents need a known domain; throws
  // std::invalid_argument otherwise or for candidates of unknown documents.
  void add_detector_output(const std::vector<Document>& docs, const std::vector<Candidate>& cands,
                           const Detector& detector = Detector());

  // Instances from a corpus; their frames become annotations of the import
  // annotator. Throws std::invalid_argument for duplicate ids.
  void add_corpus(const Corpus& corpus, const Detector& detector = Detector());

  // Restricts an annotator to the listed instances.
  void assign(const std::string& annotator, const std::vector<std::string>& instance_ids);

  // Replays the journal (if configured and present) and opens it for
  // appending. Returns the number of records applied.
  size_t open_journal();

  WriteResult submit(const std::string& annotator, const std::string& instance_id,
                     const Submission& sub);

  // Rewrites the journal keeping the latest record per (annotator,
  // instance). No-op without a journal.
  void compact();

  // Read side. All return copies taken under a shared lock.
  std::vector<Document> documents() const;
  std::optional<nlohmann::ordered_json> candidates(const std::string& doc_id) const;
  std::optional<nlohmann::ordered_json> instance_payload(const std::string& id) const;
  std::optional<Annotation> annotation(const std::string& annotator, const std::string& id) const;
  nlohmann::ordered_json progress(const std::string& annotator = "") const;
  std::vector<std::string> annotators() const;

  // Instances both annotators have decided (annotated or marked
  // non-superlative), sorted by id.
  std::vector<std::string> overlap(const std::string& a, const std::string& b) const;

  // IAA over the overlap, optionally on a seeded sample. Throws
  // std::invalid_argument when there is no overlap.
  eval::IaaReport iaa(const std::string& a, const std::string& b, size_t sample = 0,
                      std::optional<uint64_t> seed = std::nullopt) const;

  // Slot-level differences over the overlap.
  nlohmann::ordered_json disagreements(const std::string& a, const std::string& b) const;

  // One annotator's decisions, or, with an empty id, the latest accepted
  // decision per instance across annotators. Sorted by id.
  Corpus export_corpus(const std::string& annotator = "") const;

  size_t size() const;

 private:
  void add_item(StoreItem item);
  AnnotatedInstance decided(const StoreItem& item, const Annotation& a) const;
  Corpus annotator_corpus(const std::string& annotator, const std::vector<std::string>& ids) const;
  void append_journal(const std::string& annotator, const StoreItem& item, const Annotation& a);
  void compact_locked();

  StoreOptions opts_;
  mutable std::shared_mutex mu_;
  std::map<std::string, StoreItem> items_;
  std::vector<std::string> doc_order_;
  std::map<std::string, Document> docs_;
  std::map<std::string, std::vector<TextSpan>> sentences_;
  std::map<std::string, AnnotationSession> sessions_;
  uint64_t sequence_ = 0;
  size_t writes_since_compaction_ = 0;
  std::ofstream journal_;
};

// Registers every route on `server`. The store must outlive the server.
void register_routes(httplib::Server& server, AnnotationStore& store);

// Blocks serving on host:port until the process is stopped.
int serve(AnnotationStore& store, const std::string& host, int port);

}  // namespace supersem::service

#endif  // SUPERSEM_SERVICE_HPP_
