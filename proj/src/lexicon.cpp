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

#include "supersem/lexicon.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "default_lexicons.inc"
#include "supersem/text.hpp"

namespace supersem {

WordList WordList::parse(std::string_view text) {
  std::set<std::string> words;
  for (std::string_view line : text::split(text, '\n')) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = text::trim(line);
    if (!line.empty()) words.insert(text::collapse_whitespace(line));
  }
  return WordList(std::move(words));
}

WordList WordList::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word list: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

namespace {

WordList uppercased(const WordList& w) {
  std::set<std::string> out;
  for (const auto& x : w.words()) out.insert(text::to_upper(x));
  out.insert("OF");
  return WordList(std::move(out));
}

WordList lowercased(const WordList& w) {
  std::set<std::string> out;
  for (const auto& x : w.words()) out.insert(text::to_lower(x));
  return WordList(std::move(out));
}

}  // namespace

RoleInventory::RoleInventory() : RoleInventory(WordList::parse(lexicon_data::kRoles)) {}
RoleInventory::RoleInventory(WordList labels) : labels_(uppercased(labels)) {}
RoleInventory RoleInventory::load(const std::filesystem::path& path) {
  return RoleInventory(WordList::load(path));
}

LightVerbLexicon::LightVerbLexicon()
    : LightVerbLexicon(WordList::parse(lexicon_data::kLightVerbs)) {}
LightVerbLexicon::LightVerbLexicon(WordList verbs) : verbs_(lowercased(verbs)) {}
LightVerbLexicon LightVerbLexicon::load(const std::filesystem::path& path) {
  return LightVerbLexicon(WordList::load(path));
}

bool LightVerbLexicon::is_light(std::string_view predicate) const {
  const std::string p = text::to_lower(text::trim(predicate));
  if (p.rfind("be_", 0) == 0) return true;
  return verbs_.contains(p);
}

const RoleInventory& default_role_inventory() {
  static const RoleInventory inv;
  return inv;
}

const LightVerbLexicon& default_light_verbs() {
  static const LightVerbLexicon lex;
  return lex;
}

DetectorLexicon DetectorLexicon::defaults() {
  DetectorLexicon lex;
  lex.adjectives = lowercased(WordList::parse(lexicon_data::kAdjectives));
  lex.irregular = lowercased(WordList::parse(lexicon_data::kIrregular));
  lex.lexical = lowercased(WordList::parse(lexicon_data::kLexical));
  lex.non_superlative_est = lowercased(WordList::parse(lexicon_data::kNonSuperlativeEst));
  lex.idioms = lowercased(WordList::parse(lexicon_data::kIdioms));
  lex.abbreviations = lowercased(WordList::parse(lexicon_data::kAbbreviations));
  lex.determiners = lowercased(WordList::parse(lexicon_data::kDeterminers));
  return lex;
}

DetectorLexicon DetectorLexicon::load(const std::filesystem::path& dir) {
  DetectorLexicon lex = defaults();
  auto maybe = [&dir](const char* name, WordList& slot) {
    const auto p = dir / name;
    if (std::filesystem::exists(p)) slot = lowercased(WordList::load(p));
  };
  maybe("adjectives.txt", lex.adjectives);
  maybe("irregular.txt", lex.irregular);
  maybe("lexical.txt", lex.lexical);
  maybe("non_superlative_est.txt", lex.non_superlative_est);
  maybe("idioms.txt", lex.idioms);
  maybe("abbreviations.txt", lex.abbreviations);
  maybe("determiners.txt", lex.determiners);
  return lex;
}

}  // namespace supersem
