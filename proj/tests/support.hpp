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

// Shared helpers for the unit tests and the acceptance runner.

#ifndef SUPERSEM_TESTS_SUPPORT_HPP_
#define SUPERSEM_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "supersem/detector.hpp"
#include "supersem/frame.hpp"

namespace supersem::testing {

inline std::filesystem::path data_dir() { return SUPERSEM_TEST_DATA_DIR; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << content;
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() / ("supersem-test-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// A sentence from the detector fixture with its marks removed.
struct MarkedSentence {
  std::string text;
  std::vector<TextSpan> triggers;  // [[...]]
  std::vector<TextSpan> flagged;   // {{...}}
};

inline MarkedSentence parse_marked(const std::string& line) {
  MarkedSentence s;
  size_t i = 0;
  while (i < line.size()) {
    const bool trig = line.compare(i, 2, "[[") == 0;
    const bool flag = line.compare(i, 2, "{{") == 0;
    if (!trig && !flag) {
      s.text += line[i++];
      continue;
    }
    const size_t close = line.find(trig ? "]]" : "}}", i + 2);
    if (close == std::string::npos) throw std::runtime_error("unclosed mark in: " + line);
    const size_t start = s.text.size();
    s.text += line.substr(i + 2, close - i - 2);
    (trig ? s.triggers : s.flagged).push_back({start, s.text.size()});
    i = close + 2;
  }
  return s;
}

inline std::vector<MarkedSentence> load_marked_sentences(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::vector<MarkedSentence> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(parse_marked(line));
  }
  return out;
}

// One metric test case: two strings, two comparison sets and a label pair.
struct MetricCase {
  std::string gold;
  std::string pred;
  SetExpr gold_cs;
  SetExpr pred_cs;
  std::string label_a;
  std::string label_b;
};

// Deterministic pseudo-random metric fixture. Strings mix case, repeated
// tokens and punctuation; comparison sets repeat roles.
inline std::vector<MetricCase> metric_fixture(size_t n = 50, uint64_t seed = 2024) {
  static const char* const kWords[] = {"the", "largest", "fish", "in",   "lake", "Lake",
                                       "of",  "world", "cards", "Visa", "a",    "people"};
  static const char* const kPunct[] = {"", "", "", ",", ".", "!", "'s", " -"};
  static const char* const kRoles[] = {"AGENT", "THEME", "LOCATION", "TIME"};
  static const char* const kLabels[] = {"event", "none", "nominal"};
  std::mt19937_64 rng(seed);
  auto pick = [&rng](size_t k) { return static_cast<size_t>(rng() % k); };
  auto phrase = [&](size_t max_len) {
    std::string s;
    const size_t len = pick(max_len + 1);
    for (size_t i = 0; i < len; ++i) {
      if (i) s += pick(5) == 0 ? "  " : " ";
      s += kWords[pick(std::size(kWords))];
      s += kPunct[pick(std::size(kPunct))];
    }
    return s;
  };
  auto perturb = [&](const std::string& g) {
    switch (pick(4)) {
      case 0: return g;
      case 1: return " " + g + " ";
      case 2: return phrase(6);
      default: return g + " " + kWords[pick(std::size(kWords))];
    }
  };
  auto event = [&](size_t max_args) {
    EventExpression e;
    e.predicate = "CATCH";
    const size_t n_args = 1 + pick(max_args);
    for (size_t i = 0; i < n_args; ++i) {
      std::string v = phrase(3);
      if (v.empty()) v = "fish";
      e.args.push_back({kRoles[pick(std::size(kRoles))], v});
    }
    return e;
  };
  std::vector<MetricCase> out;
  for (size_t i = 0; i < n; ++i) {
    MetricCase c;
    c.gold = phrase(6);
    c.pred = perturb(c.gold);
    EventExpression g = event(4);
    EventExpression p = g;
    for (auto& a : p.args) {
      if (pick(3) == 0) a.value = perturb(a.value);
    }
    if (pick(4) == 0) p.args.push_back({kRoles[pick(std::size(kRoles))], phrase(3)});
    if (pick(4) == 0 && !p.args.empty()) p.args.erase(p.args.begin());
    std::shuffle(p.args.begin(), p.args.end(), rng);
    c.gold_cs = g;
    c.pred_cs = p;
    c.label_a = kLabels[pick(3)];
    c.label_b = pick(2) ? c.label_a : kLabels[pick(3)];
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace supersem::testing

#endif  // SUPERSEM_TESTS_SUPPORT_HPP_
