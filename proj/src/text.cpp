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

#include "supersem/text.hpp"

namespace supersem::text {

bool is_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= 33 && u <= 47) || (u >= 58 && u <= 64) || (u >= 91 && u <= 96) ||
         (u >= 123 && u <= 126);
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (is_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string to_upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (is_lower(c)) c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

std::string_view trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : s) {
    if (is_space(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

std::string_view strip_edge_punct(std::string_view s) {
  s = trim(s);
  size_t b = 0;
  size_t e = s.size();
  while (b < e && (is_punct(s[b]) || is_space(s[b]))) ++b;
  while (e > b && (is_punct(s[e - 1]) || is_space(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string match_form(std::string_view s) {
  std::string tmp(s);
  for (char& c : tmp) {
    if (is_punct(c)) {
      c = ' ';
    } else if (is_upper(c)) {
      c = static_cast<char>(c - 'A' + 'a');
    }
  }
  return collapse_whitespace(tmp);
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  const std::string m = match_form(s);
  size_t i = 0;
  while (i < m.size()) {
    size_t j = m.find(' ', i);
    if (j == std::string::npos) j = m.size();
    out.emplace_back(m.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (true) {
    size_t j = s.find(sep, i);
    if (j == std::string_view::npos) {
      out.push_back(s.substr(i));
      break;
    }
    out.push_back(s.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

bool contains(std::string_view haystack, std::string_view needle) {
  return haystack.find(needle) != std::string_view::npos;
}

}  // namespace supersem::text
