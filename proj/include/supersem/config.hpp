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

// Toolkit configuration: a key=value text file.
//
//   # comment
//   role_inventory = data/lexicon/roles.txt
//   light_verbs    = data/lexicon/light_verbs.txt
//   normalization  = default | casefold | verbatim
//   entropy_base   = nats | bits
//   window_before  = 1
//   window_after   = 1
//   split_seed     = 42
//   split_fractions = 0.8,0.1,0.1
//
// SUPERSEM_ROLE_INVENTORY and SUPERSEM_LIGHT_VERBS override the two paths.

#ifndef SUPERSEM_CONFIG_HPP_
#define SUPERSEM_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "supersem/analysis.hpp"
#include "supersem/corpus.hpp"
#include "supersem/metrics.hpp"

namespace supersem {

inline constexpr uint64_t kDefaultSplitSeed = 42;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(size_t line, const std::string& msg)
      : std::runtime_error(line ? "config line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

struct Config {
  std::optional<std::filesystem::path> role_inventory;
  std::optional<std::filesystem::path> light_verbs;
  eval::Normalization normalization = eval::Normalization::kDefault;
  analysis::LogBase entropy_base = analysis::LogBase::kNatural;
  size_t window_before = 1;
  size_t window_after = 1;
  uint64_t split_seed = kDefaultSplitSeed;
  SplitFractions split_fractions;

  // Loaded lexicons, or the bundled defaults when no path is set.
  RoleInventory roles() const;
  LightVerbLexicon light_verb_lexicon() const;
};

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

// Reads the process environment.
std::optional<std::string> process_env(const char* name);

// Throws ConfigError on unknown keys, malformed values or missing files.
// Relative paths resolve against `base_dir`.
Config parse_config(std::istream& in, const std::filesystem::path& base_dir = {},
                    const EnvLookup& env = process_env);
Config load_config(const std::filesystem::path& path, const EnvLookup& env = process_env);

// Defaults plus environment overrides.
Config default_config(const EnvLookup& env = process_env);

}  // namespace supersem

#endif  // SUPERSEM_CONFIG_HPP_
