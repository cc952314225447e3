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

#ifndef SUPERSEM_TEXT_HPP_
#define SUPERSEM_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace supersem::text {

// All helpers operate on UTF-8 bytes. Case folding and punctuation handling
// only touch ASCII; multi-byte sequences pass through unchanged.

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
bool is_punct(char c);
inline bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
inline bool is_alpha(char c) { return is_upper(c) || is_lower(c); }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);
std::string_view trim(std::string_view s);

// Collapses every whitespace run into one space and trims the ends.
std::string collapse_whitespace(std::string_view s);

// Strips punctuation from both ends (after whitespace trimming).
std::string_view strip_edge_punct(std::string_view s);

// Replaces every punctuation byte with a space, lowercases, collapses
// whitespace. This is the canonical form for substring matching.
std::string match_form(std::string_view s);

// Metric tokenization: match_form() split on spaces.
std::vector<std::string> tokens(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);

bool contains(std::string_view haystack, std::string_view needle);

}  // namespace supersem::text

#endif  // SUPERSEM_TEXT_HPP_
