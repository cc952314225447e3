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

#ifndef SUPERSEM_LEXICON_HPP_
#define SUPERSEM_LEXICON_HPP_

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace supersem {

// A plain-text word list: one entry per line, '#' starts a comment, blank
// lines ignored. Entries may contain spaces (multi-word idioms).
class WordList {
 public:
  WordList() = default;
  explicit WordList(std::set<std::string> words) : words_(std::move(words)) {}

  static WordList parse(std::string_view text);
  static WordList load(const std::filesystem::path& path);

  bool contains(std::string_view w) const { return words_.find(std::string(w)) != words_.end(); }
  size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::set<std::string>& words() const { return words_; }
  void insert(std::string w) { words_.insert(std::move(w)); }

 private:
  std::set<std::string> words_;
};

// Closed inventory of semantic role labels. OF is always a member.
class RoleInventory {
 public:
  RoleInventory();
  explicit RoleInventory(WordList labels);
  static RoleInventory load(const std::filesystem::path& path);

  bool contains(std::string_view role) const { return labels_.contains(role); }
  const WordList& labels() const { return labels_; }

 private:
  WordList labels_;
};

// Light verbs mark subject-based comparisons. Predicates are matched
// case-insensitively; any BE_* compound counts as light.
class LightVerbLexicon {
 public:
  LightVerbLexicon();
  explicit LightVerbLexicon(WordList verbs);
  static LightVerbLexicon load(const std::filesystem::path& path);

  bool is_light(std::string_view predicate) const;
  const WordList& verbs() const { return verbs_; }

 private:
  WordList verbs_;
};

const RoleInventory& default_role_inventory();
const LightVerbLexicon& default_light_verbs();

// Detector resources.
struct DetectorLexicon {
  WordList adjectives;            // gradable adjective/adverb stems
  WordList irregular;             // best, worst, most, least, ...
  WordList lexical;               // main, top, favorite, ...
  WordList non_superlative_est;   // -est words that are never superlatives
  WordList idioms;                // "at best", "at worst", ...
  WordList abbreviations;         // "mr.", "dr.", ... (lowercase, with dot)
  WordList determiners;           // for the "most of <det>" partitive rule

  static DetectorLexicon defaults();
  // Loads <dir>/{adjectives,irregular,lexical,non_superlative_est,idioms,
  // abbreviations,determiners}.txt; missing files fall back to defaults.
  static DetectorLexicon load(const std::filesystem::path& dir);
};

}  // namespace supersem

#endif  // SUPERSEM_LEXICON_HPP_
