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

#ifndef SDC_PREDICATE_H_
#define SDC_PREDICATE_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "sdc/dataset.h"

namespace sdc {

enum class CompareOp { kEq, kNe, kLt, kLe, kGt, kGe };

std::string_view CompareOpSymbol(CompareOp op);

struct Clause {
  std::string attribute;
  CompareOp op = CompareOp::kEq;
  std::string literal;
};

// Conjunction of `attribute op literal` clauses, e.g. "Age > 54 AND Gender = M".
// Operators: = != < <= > >= (and the forms ≠ ≤ ≥). Literals may be quoted
// with single or double quotes. There is no disjunction or nesting.
struct RecordPredicate {
  std::vector<Clause> clauses;

  static absl::StatusOr<RecordPredicate> Parse(std::string_view text);
  std::string ToString() const;
};

// A predicate with literals typed against a schema.
class BoundPredicate {
 public:
  // Fails on unknown attributes or literals that do not parse as the
  // attribute's kind.
  static absl::StatusOr<BoundPredicate> Bind(const RecordPredicate& predicate,
                                             const Schema& schema);

  // Missing values never satisfy a clause.
  bool Matches(const Row& row) const;

 private:
  struct BoundClause {
    size_t column;
    CompareOp op;
    Value literal;
  };
  std::vector<BoundClause> clauses_;
};

}  // namespace sdc

#endif  // SDC_PREDICATE_H_
