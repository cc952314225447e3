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

#include "supersem/frame.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "supersem/text.hpp"

namespace supersem {

std::string_view to_string(Orientation o) {
  return o == Orientation::kPositive ? "positive" : "negative";
}

std::optional<Orientation> parse_orientation(std::string_view s) {
  const std::string v = text::to_lower(text::trim(s));
  if (v == "positive" || v == "+" || v == "max") return Orientation::kPositive;
  if (v == "negative" || v == "-" || v == "min") return Orientation::kNegative;
  return std::nullopt;
}

std::string_view to_string(SemanticType t) {
  switch (t) {
    case SemanticType::kPropertySC: return "PropertySC";
    case SemanticType::kRelativeSCEventive: return "RelativeSC_Eventive";
    case SemanticType::kRelativeSCNominal: return "RelativeSC_Nominal";
    case SemanticType::kSubjectBasedSC: return "SubjectBasedSC";
  }
  return "PropertySC";
}

std::optional<SemanticType> parse_semantic_type(std::string_view s) {
  for (SemanticType t : kAllSemanticTypes) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

std::string_view to_string(Severity s) {
  return s == Severity::kError ? "error" : "warning";
}

FrameSyntaxError::FrameSyntaxError(const std::string& what, size_t offset)
    : std::runtime_error(what + " at offset " + std::to_string(offset)),
      reason_(what),
      offset_(offset) {}

std::string format_anchor(const Anchor& anchor, const SetExpr& cs) {
  if (!cs.is_eventive() && anchor.index == 0 && anchor.role.empty()) return cs.noun().head;
  return "#" + std::to_string(anchor.index) + "=" + anchor.role;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool is_ident_start(char c) { return text::is_alpha(c) || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || text::is_digit(c); }

class NotationParser {
 public:
  explicit NotationParser(std::string_view src) : src_(src) {}

  SetExpr parse() {
    check_balance();
    size_t b = 0;
    size_t e = src_.size();
    while (b < e && text::is_space(src_[b])) ++b;
    while (e > b && text::is_space(src_[e - 1])) --e;
    if (b == e) throw FrameSyntaxError("empty expression", 0);

    if (src_[b] == '(' && looks_like_event_body(b)) {
      throw FrameSyntaxError("empty predicate", b);
    }
    if (is_eventive(b)) return parse_event(b, e);
    return parse_nominal(b, e);
  }

 private:
  // Reports the first ')' without a partner, or the innermost unclosed '('.
  void check_balance() const {
    std::vector<size_t> open;
    for (size_t i = 0; i < src_.size(); ++i) {
      if (src_[i] == '(') {
        open.push_back(i);
      } else if (src_[i] == ')') {
        if (open.empty()) throw FrameSyntaxError("unbalanced ')'", i);
        open.pop_back();
      }
    }
    if (!open.empty()) throw FrameSyntaxError("unclosed '('", open.back());
  }

  size_t skip_space(size_t i) const {
    while (i < src_.size() && text::is_space(src_[i])) ++i;
    return i;
  }

  size_t scan_ident(size_t i) const {
    if (i >= src_.size() || !is_ident_start(src_[i])) return i;
    while (i < src_.size() && is_ident_char(src_[i])) ++i;
    return i;
  }

  // At '(': is the content "ident ws* (',' | ')')"?
  bool looks_like_event_body(size_t paren) const {
    size_t i = skip_space(paren + 1);
    size_t j = scan_ident(i);
    if (j == i) return false;
    j = skip_space(j);
    return j < src_.size() && (src_[j] == ',' || src_[j] == ')');
  }

  bool is_eventive(size_t b) const {
    size_t j = scan_ident(b);
    if (j == b) return false;
    const bool upper = std::all_of(src_.begin() + static_cast<std::ptrdiff_t>(b),
                                   src_.begin() + static_cast<std::ptrdiff_t>(j), [](char c) {
                                     return !text::is_lower(c);
                                   });
    // PRED( with an uppercase predicate glued to the parenthesis is always
    // read as an event so malformed bodies get event-specific errors.
    if (j < src_.size() && src_[j] == '(' && upper) return true;
    size_t k = skip_space(j);
    return k < src_.size() && src_[k] == '(' && looks_like_event_body(k);
  }

  // " ROLE=" at i (i points at the first char of ROLE).
  bool role_assignment_at(size_t i, size_t end) const {
    if (i >= end || !text::is_upper(src_[i])) return false;
    size_t j = i;
    while (j < end && (text::is_upper(src_[j]) || text::is_digit(src_[j]) || src_[j] == '_')) ++j;
    return j < end && src_[j] == '=';
  }

  SetExpr parse_event(size_t b, size_t e) {
    EventExpression ev;
    size_t j = scan_ident(b);
    ev.predicate = text::to_upper(src_.substr(b, j - b));
    size_t i = skip_space(j);
    // is_eventive() guarantees '(' here.
    ++i;
    i = skip_space(i);
    size_t v = scan_ident(i);
    if (v == i) throw FrameSyntaxError("expected event variable", i);
    ev.event_var = std::string(src_.substr(i, v - i));
    i = skip_space(v);
    if (i >= e || (src_[i] != ',' && src_[i] != ')')) {
      throw FrameSyntaxError("expected ',' or ')' after event variable", i);
    }

    while (src_[i] == ',') {
      Argument arg = parse_argument(i + 1, e, &i);
      ev.args.push_back(std::move(arg));
    }
    // src_[i] == ')'
    size_t rest = skip_space(i + 1);
    if (rest < e) throw FrameSyntaxError("unexpected text after ')'", rest);
    return ev;
  }

  // Parses "ROLE=VALUE" starting at `start`; leaves *next at the ',' or ')'
  // that terminates the value.
  Argument parse_argument(size_t start, size_t e, size_t* next) {
    size_t i = skip_space(start);
    size_t eq = std::string_view::npos;
    size_t k = i;
    for (; k < e; ++k) {
      const char c = src_[k];
      if (c == '=') {
        eq = k;
        break;
      }
      if (c == ',' || c == ')' || c == '(') break;
    }
    if (eq == std::string_view::npos) throw FrameSyntaxError("missing '=' in argument", k);
    const std::string_view role = text::trim(src_.substr(i, eq - i));
    if (role.empty()) throw FrameSyntaxError("empty role", i);
    if (scan_ident(i) != i + role.size()) throw FrameSyntaxError("invalid role label", i);

    size_t vstart = eq + 1;
    int depth = 0;
    size_t p = vstart;
    for (; p < e; ++p) {
      const char c = src_[p];
      if (c == '(') {
        ++depth;
      } else if (c == ')') {
        if (depth == 0) break;
        --depth;
      } else if (c == ',' && depth == 0) {
        break;
      }
    }
    if (p >= e) throw FrameSyntaxError("unterminated argument list", e);
    const std::string_view value = text::trim(src_.substr(vstart, p - vstart));
    if (value.empty()) throw FrameSyntaxError("empty value", vstart);
    if (const size_t stray = src_.substr(vstart, p - vstart).find('='); stray != std::string_view::npos) {
      throw FrameSyntaxError("'=' outside a role assignment", vstart + stray);
    }
    for (size_t q = vstart; q < p; ++q) {
      if (text::is_space(src_[q]) && role_assignment_at(q + 1, p)) {
        throw FrameSyntaxError("missing ',' before role", q + 1);
      }
    }
    *next = p;
    return Argument{text::to_upper(role), std::string(value)};
  }

  SetExpr parse_nominal(size_t b, size_t e) {
    // Split points: a ROLE= that starts the string or follows whitespace.
    std::vector<size_t> splits;
    int depth = 0;
    for (size_t i = b; i < e; ++i) {
      const char c = src_[i];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && (i == b || text::is_space(src_[i - 1])) && role_assignment_at(i, e)) {
        splits.push_back(i);
      }
    }
    // Every '=' must close the role label of a split.
    std::set<size_t> assignments;
    for (size_t sp : splits) assignments.insert(src_.find('=', sp));
    for (size_t i = b; i < e; ++i) {
      if (src_[i] == '=' && !assignments.count(i)) {
        throw FrameSyntaxError("'=' outside a role assignment", i);
      }
    }
    NominalExpression np;
    const size_t head_end = splits.empty() ? e : splits.front();
    np.head = std::string(text::trim(src_.substr(b, head_end - b)));
    if (np.head.empty()) throw FrameSyntaxError("empty head", b);
    for (size_t s = 0; s < splits.size(); ++s) {
      const size_t start = splits[s];
      const size_t stop = s + 1 < splits.size() ? splits[s + 1] : e;
      const size_t eq = src_.find('=', start);
      std::string_view value = text::trim(src_.substr(eq + 1, stop - eq - 1));
      if (s + 1 < splits.size() && !value.empty() && value.back() == ',') {
        value = text::trim(value.substr(0, value.size() - 1));
      }
      if (value.empty()) throw FrameSyntaxError("empty value", eq + 1);
      if (s + 1 == splits.size() && value.back() == ',') {
        throw FrameSyntaxError("trailing ','", stop - 1);
      }
      np.restrictions.push_back(
          Argument{std::string(src_.substr(start, eq - start)), std::string(value)});
    }
    return np;
  }

  std::string_view src_;
};

}  // namespace

SetExpr parse_frame_notation(std::string_view text) { return NotationParser(text).parse(); }

std::optional<SetExpr> try_parse_frame_notation(std::string_view text) {
  try {
    return parse_frame_notation(text);
  } catch (const FrameSyntaxError&) {
    return std::nullopt;
  }
}

std::string serialize_frame(const SetExpr& expr) {
  std::string out;
  if (expr.is_eventive()) {
    const auto& ev = expr.event();
    out = ev.predicate + "(e";
    for (const auto& a : ev.args) out += ", " + a.role + "=" + a.value;
    out += ")";
  } else {
    const auto& np = expr.noun();
    out = np.head;
    for (const auto& a : np.restrictions) out += " " + a.role + "=" + a.value;
  }
  return out;
}

bool equivalent(const SetExpr& a, const SetExpr& b, const TextNormalizer& normalize) {
  if (a.is_eventive() != b.is_eventive()) return false;
  auto norm = [&normalize](std::string_view s) {
    return normalize ? normalize(s) : std::string(s);
  };
  if (a.is_eventive()) {
    if (text::to_upper(a.event().predicate) != text::to_upper(b.event().predicate)) return false;
  } else if (norm(a.noun().head) != norm(b.noun().head)) {
    return false;
  }
  auto bag = [&norm](const std::vector<Argument>& args) {
    std::multiset<std::pair<std::string, std::string>> out;
    for (const auto& x : args) out.emplace(text::to_upper(x.role), norm(x.value));
    return out;
  };
  return bag(a.arguments()) == bag(b.arguments());
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void check_expression(const SetExpr& expr, const std::string& field, bool strict,
                      const RoleInventory& roles, std::vector<Violation>* out) {
  const Severity soft = strict ? Severity::kError : Severity::kWarning;
  if (expr.is_eventive()) {
    if (text::trim(expr.event().predicate).empty()) {
      out->push_back({Severity::kError, field, "predicate must be non-empty"});
    }
  } else if (text::trim(expr.noun().head).empty()) {
    out->push_back({Severity::kError, field, "head must be non-empty"});
  }
  std::set<std::string> seen;
  for (const auto& a : expr.arguments()) {
    if (a.role.empty()) {
      out->push_back({Severity::kError, field, "empty role"});
      continue;
    }
    if (text::to_upper(a.role) != a.role) {
      out->push_back({Severity::kError, field, "role '" + a.role + "' must be uppercase"});
    } else if (!roles.contains(a.role)) {
      out->push_back({soft, field, "unknown role '" + a.role + "'"});
    }
    if (!seen.insert(a.role).second) {
      out->push_back({soft, field, "duplicate role '" + a.role + "'"});
    }
  }
}

}  // namespace

std::vector<Violation> validate_frame(const SuperlativeFrame& frame, bool strict,
                                      const RoleInventory& roles) {
  std::vector<Violation> out;
  const Severity soft = strict ? Severity::kError : Severity::kWarning;

  if (frame.rank < 1) out.push_back({Severity::kError, "rank", "rank must be ≥ 1"});
  if (text::trim(frame.property).empty()) {
    out.push_back({Severity::kError, "property", "property must be non-empty"});
  }
  check_expression(frame.target, "target", strict, roles, &out);
  check_expression(frame.cs, "cs", strict, roles, &out);

  const auto& args = frame.cs.arguments();
  const int n = static_cast<int>(args.size());
  const int lo = frame.cs.is_eventive() ? 1 : 0;
  if (frame.anchor.index < lo || frame.anchor.index > n) {
    out.push_back({soft, "anchor", "anchor index out of range"});
  } else if (frame.anchor.index >= 1) {
    const auto& at = args[static_cast<size_t>(frame.anchor.index - 1)];
    if (at.role != frame.anchor.role) {
      out.push_back({soft, "anchor",
                     "anchor role " + frame.anchor.role + " does not match CS argument #" +
                         std::to_string(frame.anchor.index) + "=" + at.role});
    }
  }

  if (frame.cs.is_eventive() && frame.target.is_eventive() &&
      frame.cs.event().predicate != frame.target.event().predicate) {
    out.push_back({Severity::kWarning, "target",
                   "target predicate differs from comparison set predicate"});
  }
  return out;
}

SemanticType classify_semantic_type(const SetExpr& cs, const LightVerbLexicon& light_verbs) {
  if (cs.is_eventive()) {
    return light_verbs.is_light(cs.event().predicate) ? SemanticType::kSubjectBasedSC
                                                      : SemanticType::kRelativeSCEventive;
  }
  return cs.noun().restrictions.empty() ? SemanticType::kPropertySC
                                        : SemanticType::kRelativeSCNominal;
}

// ---------------------------------------------------------------------------
// Full-frame strings

namespace {
constexpr std::array<std::string_view, 8> kSlotMarkers = {
    "TARGET", "CS", "ANCHOR", "PROPERTY", "ORIENTATION", "RANK", "IMPLICIT", "AMOUNT"};
}  // namespace

std::string format_full_frame(const SuperlativeFrame& frame) {
  std::string out = "TARGET: " + serialize_frame(frame.target);
  out += " CS: " + serialize_frame(frame.cs);
  out += " ANCHOR: " + format_anchor(frame.anchor, frame.cs);
  out += " PROPERTY: " + frame.property;
  out += " ORIENTATION: " + std::string(to_string(frame.orientation));
  if (frame.rank != 1) out += " RANK: " + std::to_string(frame.rank);
  out += std::string(" IMPLICIT: ") + (frame.implicit ? "true" : "false");
  if (frame.amount) out += " AMOUNT: " + *frame.amount;
  return out;
}

std::map<std::string, std::string> split_full_frame(std::string_view s) {
  struct Hit {
    size_t pos;
    size_t body;
    std::string_view name;
  };
  std::vector<Hit> hits;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i > 0 && !text::is_space(s[i - 1])) continue;
    for (std::string_view m : kSlotMarkers) {
      if (s.substr(i, m.size()) == m && i + m.size() < s.size() && s[i + m.size()] == ':') {
        hits.push_back({i, i + m.size() + 1, m});
        break;
      }
    }
  }
  std::map<std::string, std::string> out;
  for (size_t h = 0; h < hits.size(); ++h) {
    const size_t stop = h + 1 < hits.size() ? hits[h + 1].pos : s.size();
    const std::string key = text::to_lower(hits[h].name);
    if (out.count(key)) continue;
    out[key] = std::string(text::trim(s.substr(hits[h].body, stop - hits[h].body)));
  }
  return out;
}

}  // namespace supersem
