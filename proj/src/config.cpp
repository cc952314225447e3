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

#include "supersem/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <set>

#include "supersem/text.hpp"

namespace supersem {

namespace {

std::filesystem::path existing_path(const std::string& value, const std::filesystem::path& base,
                                    size_t line, const std::string& key) {
  std::filesystem::path p(value);
  if (p.is_relative() && !base.empty()) p = base / p;
  if (!std::filesystem::exists(p)) throw ConfigError(line, key + ": no such file '" + p.string() + "'");
  return p;
}

uint64_t parse_unsigned(const std::string& v, size_t line, const std::string& key) {
  uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(line, key + ": expected a non-negative integer, got '" + v + "'");
  }
  return out;
}

double parse_fraction(const std::string& v, size_t line) {
  try {
    size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(line, "split_fractions: bad number '" + v + "'");
  }
}

void apply_env(Config& c, const EnvLookup& env) {
  if (!env) return;
  if (auto v = env("SUPERSEM_ROLE_INVENTORY"); v && !v->empty()) {
    c.role_inventory = existing_path(*v, {}, 0, "SUPERSEM_ROLE_INVENTORY");
  }
  if (auto v = env("SUPERSEM_LIGHT_VERBS"); v && !v->empty()) {
    c.light_verbs = existing_path(*v, {}, 0, "SUPERSEM_LIGHT_VERBS");
  }
}

}  // namespace

std::optional<std::string> process_env(const char* name) {
  const char* v = std::getenv(name);
  if (!v) return std::nullopt;
  return std::string(v);
}

RoleInventory Config::roles() const {
  return role_inventory ? RoleInventory::load(*role_inventory) : default_role_inventory();
}

LightVerbLexicon Config::light_verb_lexicon() const {
  return light_verbs ? LightVerbLexicon::load(*light_verbs) : default_light_verbs();
}

Config parse_config(std::istream& in, const std::filesystem::path& base_dir, const EnvLookup& env) {
  Config c;
  std::set<std::string> seen;
  std::string raw;
  size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s(text::trim(raw));
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected key = value");
    const std::string key(text::trim(std::string_view(s).substr(0, eq)));
    const std::string value(text::trim(std::string_view(s).substr(eq + 1)));
    if (!seen.insert(key).second) throw ConfigError(line, "duplicate key '" + key + "'");
    if (key == "role_inventory") {
      c.role_inventory = existing_path(value, base_dir, line, key);
    } else if (key == "light_verbs") {
      c.light_verbs = existing_path(value, base_dir, line, key);
    } else if (key == "normalization") {
      const auto n = eval::parse_normalization(value);
      if (!n) throw ConfigError(line, "normalization: expected default, casefold or verbatim");
      c.normalization = *n;
    } else if (key == "entropy_base") {
      if (value == "nats" || value == "e") {
        c.entropy_base = analysis::LogBase::kNatural;
      } else if (value == "bits" || value == "2") {
        c.entropy_base = analysis::LogBase::kBits;
      } else {
        throw ConfigError(line, "entropy_base: expected nats or bits");
      }
    } else if (key == "window_before") {
      c.window_before = parse_unsigned(value, line, key);
    } else if (key == "window_after") {
      c.window_after = parse_unsigned(value, line, key);
    } else if (key == "split_seed") {
      c.split_seed = parse_unsigned(value, line, key);
    } else if (key == "split_fractions") {
      const auto parts = text::split(value, ',');
      if (parts.size() != 3) throw ConfigError(line, "split_fractions: expected train,dev,test");
      c.split_fractions = {parse_fraction(std::string(text::trim(parts[0])), line),
                           parse_fraction(std::string(text::trim(parts[1])), line),
                           parse_fraction(std::string(text::trim(parts[2])), line)};
      const auto& f = c.split_fractions;
      if (f.train < 0 || f.dev < 0 || f.test < 0 || std::abs(f.train + f.dev + f.test - 1.0) > 1e-9) {
        throw ConfigError(line, "split_fractions: must be non-negative and sum to 1");
      }
    } else {
      throw ConfigError(line, "unknown key '" + key + "'");
    }
  }
  apply_env(c, env);
  return c;
}

Config load_config(const std::filesystem::path& path, const EnvLookup& env) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config '" + path.string() + "'");
  return parse_config(in, path.parent_path(), env);
}

Config default_config(const EnvLookup& env) {
  Config c;
  apply_env(c, env);
  return c;
}

}  // namespace supersem
