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

#include "sdc/contingency_table.h"

#include <algorithm>
#include <set>

#include "sdc/internal/str.h"
#include "sdc/table_io.h"

namespace sdc {
namespace {

absl::Status CheckUnique(const std::vector<std::string>& labels,
                         std::string_view what) {
  std::set<std::string_view> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      return absl::InvalidArgumentError(
          internal::StrCat("duplicate ", what, " label '", l, "'"));
    }
  }
  return absl::OkStatus();
}

std::optional<size_t> IndexOf(const std::vector<std::string>& labels,
                              std::string_view label) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<size_t>(it - labels.begin());
}

}  // namespace

absl::StatusOr<ContingencyTable> ContingencyTable::Create(
    std::vector<std::string> rows, std::vector<std::string> columns,
    std::vector<std::vector<int64_t>> counts,
    std::optional<std::vector<std::pair<std::string, std::string>>>
        adjacency) {
  if (rows.empty() || columns.empty()) {
    return absl::InvalidArgumentError("a table needs at least one row and column");
  }
  if (auto s = CheckUnique(rows, "row"); !s.ok()) return s;
  if (auto s = CheckUnique(columns, "column"); !s.ok()) return s;
  if (counts.size() != rows.size()) {
    return absl::InvalidArgumentError(internal::StrCat(
        "table has ", rows.size(), " row labels but ", counts.size(),
        " count rows"));
  }
  for (size_t r = 0; r < counts.size(); ++r) {
    if (counts[r].size() != columns.size()) {
      return absl::InvalidArgumentError(internal::StrCat(
          "row '", rows[r], "' has ", counts[r].size(), " counts, expected ",
          columns.size()));
    }
    for (size_t c = 0; c < counts[r].size(); ++c) {
      if (counts[r][c] < 0) {
        return absl::InvalidArgumentError(internal::StrCat(
            "negative count at (", rows[r], ", ", columns[c], ")"));
      }
    }
  }
  if (adjacency) {
    for (const auto& [a, b] : *adjacency) {
      if (!IndexOf(columns, a) || !IndexOf(columns, b)) {
        return absl::InvalidArgumentError(internal::StrCat(
            "adjacency pair (", a, ", ", b, ") names an unknown column"));
      }
    }
  }
  ContingencyTable t;
  t.rows_ = std::move(rows);
  t.columns_ = std::move(columns);
  t.counts_ = std::move(counts);
  t.adjacency_ = std::move(adjacency);
  return t;
}

bool ContingencyTable::Adjacent(size_t a, size_t b) const {
  if (!adjacency_) return a + 1 == b || b + 1 == a;
  for (const auto& [x, y] : *adjacency_) {
    if ((x == columns_[a] && y == columns_[b]) ||
        (x == columns_[b] && y == columns_[a])) {
      return true;
    }
  }
  return false;
}

int64_t ContingencyTable::RowTotal(size_t r) const {
  int64_t total = 0;
  for (int64_t v : counts_[r]) total += v;
  return total;
}

int64_t ContingencyTable::ColumnTotal(size_t c) const {
  int64_t total = 0;
  for (const auto& row : counts_) total += row[c];
  return total;
}

int64_t ContingencyTable::GrandTotal() const {
  int64_t total = 0;
  for (size_t r = 0; r < rows_.size(); ++r) total += RowTotal(r);
  return total;
}

std::string_view CellFlagReasonName(CellFlagReason r) {
  return r == CellFlagReason::kSmallCount ? "small-count" : "zero-complement";
}

absl::StatusOr<TableAudit> AuditTable(const ContingencyTable& table,
                                      int64_t threshold) {
  if (threshold < 1) {
    return absl::InvalidArgumentError(
        internal::StrCat("cell threshold must be at least 1, got ", threshold));
  }
  TableAudit audit;
  audit.threshold = threshold;
  const size_t nr = table.rows().size();
  const size_t nc = table.columns().size();
  for (size_t r = 0; r < nr; ++r) {
    for (size_t c = 0; c < nc; ++c) {
      const int64_t v = table.at(r, c);
      const std::string cell = internal::StrCat(
          "(", table.rows()[r], ", ", table.columns()[c], ")");
      if (v > 0 && v < threshold) {
        audit.flags.push_back(
            {r, c, v, CellFlagReason::kSmallCount,
             internal::StrCat("count ", v, " at ", cell, " is below ",
                              threshold)});
        continue;
      }
      if (v != 0) continue;

      // A zero on one level of a two-level attribute pins the other level
      // for the whole opposite margin.
      std::vector<std::string> notes;
      const int64_t column_total = table.ColumnTotal(c);
      const int64_t row_total = table.RowTotal(r);
      if (column_total > 0 && nr == 2) {
        notes.push_back(internal::StrCat(
            "all ", column_total, " records with ", table.column_attribute,
            " = ", table.columns()[c], " have ", table.row_attribute, " = ",
            table.rows()[1 - r]));
      } else if (column_total > 0 && nr > 2) {
        audit.warnings.push_back(internal::StrCat(
            "zero at ", cell, " rules out ", table.row_attribute, " = ",
            table.rows()[r], " for the ", column_total, " records with ",
            table.column_attribute, " = ", table.columns()[c]));
      }
      if (row_total > 0 && nc == 2) {
        notes.push_back(internal::StrCat(
            "all ", row_total, " records with ", table.row_attribute, " = ",
            table.rows()[r], " have ", table.column_attribute, " = ",
            table.columns()[1 - c]));
      } else if (row_total > 0 && nc > 2) {
        audit.warnings.push_back(internal::StrCat(
            "zero at ", cell, " rules out ", table.column_attribute, " = ",
            table.columns()[c], " for the ", row_total, " records with ",
            table.row_attribute, " = ", table.rows()[r]));
      }
      if (!notes.empty()) {
        std::string note = internal::StrCat("zero at ", cell, ": ", notes[0]);
        for (size_t i = 1; i < notes.size(); ++i) note += "; " + notes[i];
        audit.flags.push_back({r, c, 0, CellFlagReason::kZeroComplement, note});
      }
    }
  }
  return audit;
}

absl::StatusOr<ContingencyTable> MergeTableCategories(
    const ContingencyTable& table,
    const std::map<std::string, std::string>& grouping) {
  const auto& columns = table.columns();
  for (const auto& [from, to] : grouping) {
    if (!IndexOf(columns, from)) {
      return absl::InvalidArgumentError(
          internal::StrCat("grouping names unknown column '", from, "'"));
    }
  }
  std::vector<std::string> groups;
  std::vector<size_t> group_of(columns.size());
  for (size_t c = 0; c < columns.size(); ++c) {
    auto it = grouping.find(columns[c]);
    if (it == grouping.end()) {
      return absl::InvalidArgumentError(internal::StrCat(
          "grouping does not map column '", columns[c], "'"));
    }
    auto g = IndexOf(groups, it->second);
    if (!g) {
      groups.push_back(it->second);
      g = groups.size() - 1;
    }
    group_of[c] = *g;
  }

  // Each group must be connected under the adjacency relation.
  for (size_t g = 0; g < groups.size(); ++g) {
    std::vector<size_t> members;
    for (size_t c = 0; c < columns.size(); ++c) {
      if (group_of[c] == g) members.push_back(c);
    }
    std::set<size_t> reached = {members.front()};
    std::vector<size_t> frontier = {members.front()};
    while (!frontier.empty()) {
      const size_t a = frontier.back();
      frontier.pop_back();
      for (size_t b : members) {
        if (!reached.count(b) && table.Adjacent(a, b)) {
          reached.insert(b);
          frontier.push_back(b);
        }
      }
    }
    if (reached.size() != members.size()) {
      std::vector<std::string> names;
      for (size_t m : members) names.push_back(columns[m]);
      return absl::FailedPreconditionError(fmt::format(
          "cannot merge non-adjacent columns {{{}}} into '{}'",
          fmt::join(names, ", "), groups[g]));
    }
  }

  std::vector<std::vector<int64_t>> counts(
      table.rows().size(), std::vector<int64_t>(groups.size(), 0));
  for (size_t r = 0; r < table.rows().size(); ++r) {
    for (size_t c = 0; c < columns.size(); ++c) {
      counts[r][group_of[c]] += table.at(r, c);
    }
  }
  std::optional<std::vector<std::pair<std::string, std::string>>> adjacency;
  if (table.adjacency()) {
    std::set<std::pair<size_t, size_t>> pairs;
    for (size_t a = 0; a < columns.size(); ++a) {
      for (size_t b = a + 1; b < columns.size(); ++b) {
        const size_t ga = group_of[a], gb = group_of[b];
        if (ga != gb && table.Adjacent(a, b)) {
          pairs.insert({std::min(ga, gb), std::max(ga, gb)});
        }
      }
    }
    adjacency.emplace();
    for (const auto& [a, b] : pairs) adjacency->push_back({groups[a], groups[b]});
  }
  auto out = ContingencyTable::Create(table.rows(), groups, std::move(counts),
                                      std::move(adjacency));
  if (!out.ok()) return out.status();
  out->row_attribute = table.row_attribute;
  out->column_attribute = table.column_attribute;
  return out;
}

absl::StatusOr<ContingencyTable> ParseTableDelimited(std::string_view text,
                                                     char delimiter) {
  auto records = ParseDelimited(text, delimiter);
  if (!records.ok()) return records.status();
  if (records->size() < 2 || records->front().size() < 2) {
    return absl::InvalidArgumentError(
        "table needs a header and at least one row and column");
  }
  const auto& header = records->front();
  std::vector<std::string> columns(header.begin() + 1, header.end());
  std::vector<std::string> rows;
  std::vector<std::vector<int64_t>> counts;
  for (size_t i = 1; i < records->size(); ++i) {
    const auto& rec = (*records)[i];
    if (rec.size() != header.size()) {
      return absl::InvalidArgumentError(internal::StrCat(
          "line ", i + 1, " has ", rec.size(), " fields, expected ",
          header.size()));
    }
    rows.push_back(rec[0]);
    std::vector<int64_t> row;
    for (size_t c = 1; c < rec.size(); ++c) {
      auto v = internal::ParseInt<int64_t>(rec[c]);
      if (!v) {
        return absl::InvalidArgumentError(internal::StrCat(
            "line ", i + 1, ", column '", header[c], "': '", rec[c],
            "' is not an integer count"));
      }
      row.push_back(*v);
    }
    counts.push_back(std::move(row));
  }
  auto table =
      ContingencyTable::Create(std::move(rows), std::move(columns), std::move(counts));
  if (!table.ok()) return table.status();
  if (!header[0].empty()) table->row_attribute = header[0];
  return table;
}

std::string FormatTableDelimited(const ContingencyTable& table,
                                 char delimiter) {
  DelimitedRecords records;
  std::vector<std::string> header = {table.row_attribute};
  header.insert(header.end(), table.columns().begin(), table.columns().end());
  records.push_back(std::move(header));
  for (size_t r = 0; r < table.rows().size(); ++r) {
    std::vector<std::string> rec = {table.rows()[r]};
    for (int64_t v : table.counts()[r]) rec.push_back(std::to_string(v));
    records.push_back(std::move(rec));
  }
  return FormatDelimited(records, delimiter);
}

absl::StatusOr<ContingencyTable> TableFromJson(const nlohmann::json& j) {
  try {
    if (!j.is_object()) {
      return absl::InvalidArgumentError("table must be a JSON object");
    }
    auto rows = j.at("rows").get<std::vector<std::string>>();
    auto columns = j.at("columns").get<std::vector<std::string>>();
    auto counts = j.at("counts").get<std::vector<std::vector<int64_t>>>();
    std::optional<std::vector<std::pair<std::string, std::string>>> adjacency;
    if (j.contains("adjacency")) {
      adjacency.emplace();
      for (const auto& pair : j["adjacency"]) {
        const auto p = pair.get<std::vector<std::string>>();
        if (p.size() != 2) {
          return absl::InvalidArgumentError(
              "adjacency entries must be [column, column] pairs");
        }
        adjacency->push_back({p[0], p[1]});
      }
    }
    auto table = ContingencyTable::Create(std::move(rows), std::move(columns),
                                          std::move(counts), std::move(adjacency));
    if (!table.ok()) return table.status();
    table->row_attribute = j.value("row_attribute", table->row_attribute);
    table->column_attribute =
        j.value("column_attribute", table->column_attribute);
    return table;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        internal::StrCat("malformed table: ", e.what()));
  }
}

nlohmann::json TableToJson(const ContingencyTable& table) {
  nlohmann::json j = {{"row_attribute", table.row_attribute},
                      {"column_attribute", table.column_attribute},
                      {"rows", table.rows()},
                      {"columns", table.columns()},
                      {"counts", table.counts()}};
  if (table.adjacency()) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [a, b] : *table.adjacency()) pairs.push_back({a, b});
    j["adjacency"] = pairs;
  }
  return j;
}

nlohmann::json TableAuditToJson(const ContingencyTable& table,
                                const TableAudit& audit) {
  nlohmann::json flags = nlohmann::json::array();
  for (const auto& f : audit.flags) {
    flags.push_back({{"row", table.rows()[f.row]},
                     {"column", table.columns()[f.column]},
                     {"count", f.count},
                     {"reason", std::string(CellFlagReasonName(f.reason))},
                     {"note", f.note}});
  }
  return {{"threshold", audit.threshold},
          {"clean", audit.clean()},
          {"flags", flags},
          {"warnings", audit.warnings}};
}

absl::StatusOr<std::map<std::string, std::string>> GroupingFromJson(
    const nlohmann::json& j) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError(
        "grouping must map old column labels to new ones");
  }
  std::map<std::string, std::string> out;
  for (const auto& [from, to] : j.items()) {
    if (!to.is_string()) {
      return absl::InvalidArgumentError(
          internal::StrCat("grouping target for '", from, "' is not a string"));
    }
    out[from] = to.get<std::string>();
  }
  return out;
}

}  // namespace sdc
