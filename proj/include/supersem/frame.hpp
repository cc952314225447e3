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

// Superlative frame data model and the textual frame notation.
//
// A comparison set (or target) is written either as a Neo-Davidsonian event
//
//   PAY(e, AGENT=people, ASSET=Visa cards, LOCATION=in Romania)
//
// or as a noun phrase head with optional role-labelled restrictions
//
//   writers OF=the ancient world
//
// The grammar is documented in docs/frame_notation.ebnf.

#ifndef SUPERSEM_FRAME_HPP_
#define SUPERSEM_FRAME_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "supersem/lexicon.hpp"

namespace supersem {

struct Argument {
  std::string role;   // uppercase label, e.g. AGENT or OF
  std::string value;  // verbatim span text

  bool operator==(const Argument&) const = default;
};

struct EventExpression {
  std::string predicate;  // uppercase lemma, e.g. BE_HUNGRY
  std::string event_var = "e";
  std::vector<Argument> args;

  // The event variable is notation only and does not take part in equality.
  bool operator==(const EventExpression& o) const {
    return predicate == o.predicate && args == o.args;
  }
};

struct NominalExpression {
  std::string head;
  std::vector<Argument> restrictions;

  bool operator==(const NominalExpression&) const = default;
};

// Comparison set or target: an event or a restricted noun phrase.
class SetExpr {
 public:
  SetExpr() : value_(NominalExpression{}) {}
  SetExpr(EventExpression e) : value_(std::move(e)) {}    // NOLINT
  SetExpr(NominalExpression n) : value_(std::move(n)) {}  // NOLINT

  static SetExpr nominal(std::string head, std::vector<Argument> restrictions = {}) {
    return NominalExpression{std::move(head), std::move(restrictions)};
  }

  bool is_eventive() const { return std::holds_alternative<EventExpression>(value_); }
  const EventExpression& event() const { return std::get<EventExpression>(value_); }
  const NominalExpression& noun() const { return std::get<NominalExpression>(value_); }

  // Event arguments or nominal restrictions, in written order.
  const std::vector<Argument>& arguments() const {
    return is_eventive() ? event().args : noun().restrictions;
  }

  bool operator==(const SetExpr&) const = default;

 private:
  std::variant<EventExpression, NominalExpression> value_;
};

enum class Orientation { kPositive, kNegative };

std::string_view to_string(Orientation o);
std::optional<Orientation> parse_orientation(std::string_view s);

// Position of the compared element inside the comparison set. For an
// eventive set the index is 1-based into the argument list; for a nominal
// set 0 designates the head and i >= 1 the i-th restriction.
struct Anchor {
  int index = 0;
  std::string role;

  bool operator==(const Anchor&) const = default;
};

// "#2=ASSET"; a nominal head anchor (index 0, no role) renders as the head.
std::string format_anchor(const Anchor& anchor, const SetExpr& cs);

struct SuperlativeFrame {
  std::string superlative_span;
  SetExpr target;
  SetExpr cs;
  Anchor anchor;
  std::string property;
  Orientation orientation = Orientation::kPositive;
  int rank = 1;
  bool implicit = false;
  std::optional<std::string> amount;

  bool operator==(const SuperlativeFrame&) const = default;
};

enum class SemanticType {
  kPropertySC,
  kRelativeSCEventive,
  kRelativeSCNominal,
  kSubjectBasedSC,
};

inline constexpr SemanticType kAllSemanticTypes[] = {
    SemanticType::kPropertySC, SemanticType::kRelativeSCEventive,
    SemanticType::kRelativeSCNominal, SemanticType::kSubjectBasedSC};

std::string_view to_string(SemanticType t);
std::optional<SemanticType> parse_semantic_type(std::string_view s);

// Thrown by parse_frame_notation(); offset is a byte offset into the input.
class FrameSyntaxError : public std::runtime_error {
 public:
  FrameSyntaxError(const std::string& what, size_t offset);
  size_t offset() const { return offset_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
  size_t offset_;
};

SetExpr parse_frame_notation(std::string_view text);
std::optional<SetExpr> try_parse_frame_notation(std::string_view text);

// Canonical form: ", " between arguments, no space around '=', event
// variable "e", one space before each nominal restriction.
std::string serialize_frame(const SetExpr& expr);

// Order-insensitive comparison of two expressions. Argument values are
// compared after `normalize`; the predicate/head too.
using TextNormalizer = std::function<std::string(std::string_view)>;
bool equivalent(const SetExpr& a, const SetExpr& b, const TextNormalizer& normalize = {});

enum class Severity { kWarning, kError };
std::string_view to_string(Severity s);

struct Violation {
  Severity severity;
  std::string field;
  std::string message;

  bool operator==(const Violation&) const = default;
};

inline bool has_errors(const std::vector<Violation>& v) {
  for (const auto& x : v) {
    if (x.severity == Severity::kError) return true;
  }
  return false;
}

// Checks every frame invariant. In strict mode role-inventory membership,
// duplicate roles and anchor consistency are errors, otherwise warnings.
std::vector<Violation> validate_frame(const SuperlativeFrame& frame, bool strict,
                                      const RoleInventory& roles = default_role_inventory());

SemanticType classify_semantic_type(const SetExpr& cs,
                                    const LightVerbLexicon& light_verbs = default_light_verbs());
inline SemanticType classify_semantic_type(
    const SuperlativeFrame& frame, const LightVerbLexicon& light_verbs = default_light_verbs()) {
  return classify_semantic_type(frame.cs, light_verbs);
}

// Single-string rendering of a whole frame:
//   TARGET: <t> CS: <cs> ANCHOR: <a> PROPERTY: <p> ORIENTATION: <o> ...
std::string format_full_frame(const SuperlativeFrame& frame);

// Splits a full-frame string into slot name (lowercase) -> text. Unknown
// text before the first marker is dropped.
std::map<std::string, std::string> split_full_frame(std::string_view text);

}  // namespace supersem

#endif  // SUPERSEM_FRAME_HPP_
