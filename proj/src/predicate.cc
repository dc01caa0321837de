// Copyright 2026 The SDC Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sdc/predicate.h"

#include <array>
#include <utility>

#include "sdc/internal/str.h"
#include "sdc/table_io.h"

namespace sdc {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

// Longest spellings first so "<=" wins over "<".
constexpr std::array<std::pair<std::string_view, CompareOp>, 9> kOperators = {{
    {"!=", CompareOp::kNe},
    {"<=", CompareOp::kLe},
    {">=", CompareOp::kGe},
    {"\xE2\x89\xA0", CompareOp::kNe},  // ≠
    {"\xE2\x89\xA4", CompareOp::kLe},  // ≤
    {"\xE2\x89\xA5", CompareOp::kGe},  // ≥
    {"=", CompareOp::kEq},
    {"<", CompareOp::kLt},
    {">", CompareOp::kGt},
}};

absl::StatusOr<Clause> ParseClause(std::string_view text) {
  for (size_t pos = 0; pos < text.size(); ++pos) {
    for (const auto& [symbol, op] : kOperators) {
      if (text.substr(pos, symbol.size()) != symbol) continue;
      Clause clause;
      clause.attribute = std::string(Trim(text.substr(0, pos)));
      std::string_view literal = Trim(text.substr(pos + symbol.size()));
      if (literal.size() >= 2 &&
          ((literal.front() == '\'' && literal.back() == '\'') ||
           (literal.front() == '"' && literal.back() == '"'))) {
        literal = literal.substr(1, literal.size() - 2);
      }
      clause.literal = std::string(literal);
      clause.op = op;
      if (clause.attribute.empty() || clause.literal.empty()) {
        return absl::InvalidArgumentError(
            internal::StrCat("malformed clause '", text, "'"));
      }
      return clause;
    }
  }
  return absl::InvalidArgumentError(
      internal::StrCat("clause '", text, "' has no comparison operator"));
}

bool Compare(const Value& v, CompareOp op, const Value& literal) {
  switch (op) {
    case CompareOp::kEq:
      return v == literal;
    case CompareOp::kNe:
      return v != literal;
    case CompareOp::kLt:
      return v < literal;
    case CompareOp::kLe:
      return !(literal < v);
    case CompareOp::kGt:
      return literal < v;
    case CompareOp::kGe:
      return !(v < literal);
  }
  return false;
}

}  // namespace

std::string_view CompareOpSymbol(CompareOp op) {
  switch (op) {
    case CompareOp::kEq:
      return "=";
    case CompareOp::kNe:
      return "!=";
    case CompareOp::kLt:
      return "<";
    case CompareOp::kLe:
      return "<=";
    case CompareOp::kGt:
      return ">";
    case CompareOp::kGe:
      return ">=";
  }
  return "=";
}

absl::StatusOr<RecordPredicate> RecordPredicate::Parse(std::string_view text) {
  RecordPredicate predicate;
  text = Trim(text);
  if (text.empty()) {
    return absl::InvalidArgumentError("empty predicate");
  }
  // Split on the keyword AND (any case), surrounded by whitespace.
  size_t start = 0;
  const std::string lower = internal::ToLower(text);
  for (size_t pos = 0; pos + 5 <= lower.size();) {
    if ((lower[pos] == ' ' || lower[pos] == '\t') &&
        lower.compare(pos + 1, 3, "and") == 0 &&
        (lower[pos + 4] == ' ' || lower[pos + 4] == '\t')) {
      auto clause = ParseClause(text.substr(start, pos - start));
      if (!clause.ok()) return clause.status();
      predicate.clauses.push_back(*std::move(clause));
      start = pos + 5;
      pos = start;
    } else {
      ++pos;
    }
  }
  auto clause = ParseClause(text.substr(start));
  if (!clause.ok()) return clause.status();
  predicate.clauses.push_back(*std::move(clause));
  return predicate;
}

std::string RecordPredicate::ToString() const {
  std::string out;
  for (size_t i = 0; i < clauses.size(); ++i) {
    if (i > 0) out += " AND ";
    out += internal::StrCat(clauses[i].attribute, " ",
                            CompareOpSymbol(clauses[i].op), " ",
                            clauses[i].literal);
  }
  return out;
}

absl::StatusOr<BoundPredicate> BoundPredicate::Bind(
    const RecordPredicate& predicate, const Schema& schema) {
  if (predicate.clauses.empty()) {
    return absl::InvalidArgumentError("predicate has no clauses");
  }
  BoundPredicate bound;
  for (const auto& clause : predicate.clauses) {
    auto column = schema.IndexOf(clause.attribute);
    if (!column) {
      return absl::InvalidArgumentError(internal::StrCat(
          "predicate references unknown attribute '", clause.attribute, "'"));
    }
    auto literal = ParseCell(clause.literal, schema.at(*column).kind);
    if (!literal.ok()) {
      return absl::InvalidArgumentError(
          internal::StrCat("predicate literal for '", clause.attribute,
                           "': ", internal::Message(literal.status())));
    }
    bound.clauses_.push_back({*column, clause.op, *std::move(literal)});
  }
  return bound;
}

bool BoundPredicate::Matches(const Row& row) const {
  for (const auto& c : clauses_) {
    const Value& v = row[c.column];
    if (v.is_missing() || !Compare(v, c.op, c.literal)) return false;
  }
  return true;
}

}  // namespace sdc
