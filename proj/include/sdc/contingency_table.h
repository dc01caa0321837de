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

#ifndef SDC_CONTINGENCY_TABLE_H_
#define SDC_CONTINGENCY_TABLE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace sdc {

// A two-way table of counts for a summary report.
class ContingencyTable {
 public:
  // `adjacency` lists column pairs that may be merged. When absent, columns
  // are linearly ordered and each is adjacent to its neighbours.
  static absl::StatusOr<ContingencyTable> Create(
      std::vector<std::string> rows, std::vector<std::string> columns,
      std::vector<std::vector<int64_t>> counts,
      std::optional<std::vector<std::pair<std::string, std::string>>>
          adjacency = std::nullopt);

  const std::vector<std::string>& rows() const { return rows_; }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<int64_t>>& counts() const { return counts_; }
  int64_t at(size_t r, size_t c) const { return counts_[r][c]; }
  const std::optional<std::vector<std::pair<std::string, std::string>>>&
  adjacency() const {
    return adjacency_;
  }

  bool Adjacent(size_t a, size_t b) const;
  int64_t RowTotal(size_t r) const;
  int64_t ColumnTotal(size_t c) const;
  int64_t GrandTotal() const;

  // Labels for the two attributes, used in notes only.
  std::string row_attribute = "row";
  std::string column_attribute = "column";

 private:
  std::vector<std::string> rows_;
  std::vector<std::string> columns_;
  std::vector<std::vector<int64_t>> counts_;
  std::optional<std::vector<std::pair<std::string, std::string>>> adjacency_;
};

enum class CellFlagReason { kSmallCount, kZeroComplement };

std::string_view CellFlagReasonName(CellFlagReason r);

struct CellFlag {
  size_t row = 0;
  size_t column = 0;
  int64_t count = 0;
  CellFlagReason reason = CellFlagReason::kSmallCount;
  std::string note;
};

struct TableAudit {
  int64_t threshold = 5;
  std::vector<CellFlag> flags;
  // Zeros in attributes with more than two levels narrow the possibilities
  // without pinning them down; these are reported here, not flagged.
  std::vector<std::string> warnings;
  bool clean() const { return flags.empty(); }
};

// Flags cells with 0 < count < threshold, and zeros that let a reader infer
// the other level of a binary attribute for a whole margin.
absl::StatusOr<TableAudit> AuditTable(const ContingencyTable& table,
                                      int64_t threshold);

// old column label -> new column label. Every column must be mapped, and each
// group must be connected under the table's adjacency.
absl::StatusOr<ContingencyTable> MergeTableCategories(
    const ContingencyTable& table,
    const std::map<std::string, std::string>& grouping);

// Delimited layout: a header of (row attribute, column labels...) followed by
// one line per row (label, counts...).
absl::StatusOr<ContingencyTable> ParseTableDelimited(std::string_view text,
                                                     char delimiter = ',');
std::string FormatTableDelimited(const ContingencyTable& table,
                                 char delimiter = ',');

// {"rows", "columns", "counts", "adjacency"?, "row_attribute"?,
//  "column_attribute"?}
absl::StatusOr<ContingencyTable> TableFromJson(const nlohmann::json& j);
nlohmann::json TableToJson(const ContingencyTable& table);
nlohmann::json TableAuditToJson(const ContingencyTable& table,
                                const TableAudit& audit);
absl::StatusOr<std::map<std::string, std::string>> GroupingFromJson(
    const nlohmann::json& j);

}  // namespace sdc

#endif  // SDC_CONTINGENCY_TABLE_H_
