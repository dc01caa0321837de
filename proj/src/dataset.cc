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

#include "sdc/dataset.h"

#include "absl/status/status.h"
#include "sdc/internal/str.h"
#include "sdc/internal/hash.h"

namespace sdc {
namespace {

bool TypeFits(ValueType type, Kind kind) {
  switch (type) {
    case ValueType::kMissing:
      return true;
    case ValueType::kCategory:
      return kind == Kind::kCategorical;
    case ValueType::kInteger:
      return kind == Kind::kInteger;
    case ValueType::kDate:
      return kind == Kind::kDate;
    case ValueType::kText:
      return kind == Kind::kText;
  }
  return false;
}

}  // namespace

absl::StatusOr<Dataset> Dataset::Create(Schema schema, std::vector<Row> rows,
                                        std::string provenance) {
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != schema.size()) {
      return absl::InvalidArgumentError(
          internal::StrCat("row ", r, " has ", rows[r].size(), " values; schema has ",
                       schema.size(), " attributes"));
    }
    for (size_t c = 0; c < schema.size(); ++c) {
      const Value& v = rows[r][c];
      const AttributeSchema& a = schema.at(c);
      if (!TypeFits(v.type(), a.kind)) {
        return absl::InvalidArgumentError(
            internal::StrCat("row ", r, ", attribute '", a.name,
                         "': value does not match kind ", KindName(a.kind)));
      }
      if ((v.type() == ValueType::kCategory || v.type() == ValueType::kText) &&
          v.token().empty()) {
        return absl::InvalidArgumentError(
            internal::StrCat("row ", r, ", attribute '", a.name,
                         "': empty tokens are reserved for missing values"));
      }
    }
  }
  Dataset d;
  d.schema_ = std::make_shared<const Schema>(std::move(schema));
  d.rows_ = std::make_shared<const std::vector<Row>>(std::move(rows));
  d.provenance_ = std::move(provenance);
  return d;
}

absl::StatusOr<Value> Dataset::Get(size_t row,
                                   std::string_view attribute) const {
  auto col = schema_->IndexOf(attribute);
  if (!col) {
    return absl::NotFoundError(
        internal::StrCat("unknown attribute '", attribute, "'"));
  }
  if (row >= rows_->size()) {
    return absl::OutOfRangeError(internal::StrCat("row ", row, " out of range"));
  }
  return (*rows_)[row][*col];
}

uint64_t Fingerprint(const Dataset& dataset) {
  internal::Fnv1a64 h;
  for (const auto& a : dataset.schema().attributes()) {
    h.Add(a.name);
    h.Add(RoleName(a.role));
    h.Add(KindName(a.kind));
  }
  for (const auto& row : dataset.rows()) {
    for (const auto& v : row) {
      h.Add(static_cast<uint64_t>(v.type()));
      h.Add(v.ToString());
    }
  }
  return h.digest();
}

}  // namespace sdc
