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

#include "sdc/table_io.h"

#include <fstream>
#include <map>
#include <sstream>

#include "absl/status/status.h"
#include "sdc/internal/str.h"

namespace sdc {

absl::StatusOr<DelimitedRecords> ParseDelimited(std::string_view text,
                                                char delimiter) {
  DelimitedRecords records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  size_t line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };

  // Skip a UTF-8 byte order mark.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty()) {
        return absl::InvalidArgumentError(internal::StrCat(
            "line ", line, ": quote inside an unquoted field"));
      }
      in_quotes = true;
      field_started = true;
    } else if (c == delimiter) {
      end_field();
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      // handled with the '\n'
    } else if (c == '\n') {
      end_record();
      ++line;
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (in_quotes) {
    return absl::InvalidArgumentError("unterminated quoted field");
  }
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

std::string FormatDelimited(const DelimitedRecords& records, char delimiter) {
  std::string out;
  for (const auto& record : records) {
    for (size_t i = 0; i < record.size(); ++i) {
      if (i > 0) out.push_back(delimiter);
      const std::string& f = record[i];
      bool quote = f.find_first_of(std::string{delimiter, '"', '\n', '\r'}) !=
                   std::string::npos;
      if (!quote) {
        out += f;
        continue;
      }
      out.push_back('"');
      for (char c : f) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
      }
      out.push_back('"');
    }
    out += "\r\n";
  }
  return out;
}

absl::StatusOr<Value> ParseCell(std::string_view cell, Kind kind) {
  if (cell.empty()) return Value::Missing();
  switch (kind) {
    case Kind::kCategorical:
      return Value::Category(std::string(cell));
    case Kind::kText:
      return Value::Text(std::string(cell));
    case Kind::kInteger: {
      auto v = internal::ParseInt<int64_t>(cell);
      if (!v) {
        return absl::InvalidArgumentError(
            internal::StrCat("'", cell, "' is not an integer"));
      }
      return Value::Integer(*v);
    }
    case Kind::kDate: {
      auto d = ParseDate(cell);
      if (!d) {
        return absl::InvalidArgumentError(
            internal::StrCat("'", cell, "' is not a date"));
      }
      return Value::FromDate(*d);
    }
  }
  return absl::InternalError("unhandled kind");
}

absl::StatusOr<Dataset> LoadDataset(std::string_view text, const Schema& schema,
                                    std::string provenance) {
  auto records = ParseDelimited(text);
  if (!records.ok()) return records.status();
  if (records->empty()) {
    return absl::InvalidArgumentError("input has no header row");
  }
  const auto& header = records->front();

  std::map<std::string, size_t, std::less<>> header_index;
  for (size_t i = 0; i < header.size(); ++i) {
    if (!header_index.emplace(header[i], i).second) {
      return absl::InvalidArgumentError(
          internal::StrCat("duplicate column name '", header[i], "'"));
    }
  }
  std::vector<size_t> source_column;
  for (const auto& a : schema.attributes()) {
    auto it = header_index.find(a.name);
    if (it == header_index.end()) {
      return absl::InvalidArgumentError(
          internal::StrCat("schema attribute '", a.name, "' has no column"));
    }
    source_column.push_back(it->second);
  }
  if (header.size() != schema.size()) {
    for (const auto& name : header) {
      if (!schema.IndexOf(name)) {
        return absl::InvalidArgumentError(
            internal::StrCat("column '", name, "' is not in the schema"));
      }
    }
  }

  std::vector<Row> rows;
  rows.reserve(records->size() - 1);
  for (size_t r = 1; r < records->size(); ++r) {
    const auto& record = (*records)[r];
    if (record.size() != header.size()) {
      return absl::InvalidArgumentError(
          internal::StrCat("row ", r, ": expected ", header.size(),
                       " fields, found ", record.size()));
    }
    Row row;
    row.reserve(schema.size());
    for (size_t c = 0; c < schema.size(); ++c) {
      auto v = ParseCell(record[source_column[c]], schema.at(c).kind);
      if (!v.ok()) {
        return absl::InvalidArgumentError(
            internal::StrCat("row ", r, ", column '", schema.at(c).name,
                         "': ", internal::Message(v.status())));
      }
      row.push_back(*std::move(v));
    }
    rows.push_back(std::move(row));
  }
  return Dataset::Create(schema, std::move(rows), std::move(provenance));
}

std::string SerializeDataset(const Dataset& dataset) {
  DelimitedRecords records;
  records.push_back(dataset.schema().Names());
  for (const auto& row : dataset.rows()) {
    std::vector<std::string> fields;
    fields.reserve(row.size());
    for (const auto& v : row) fields.push_back(v.ToString());
    records.push_back(std::move(fields));
  }
  return FormatDelimited(records);
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(internal::StrCat("cannot open ", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(internal::StrCat("cannot write ", path));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) return absl::UnavailableError(internal::StrCat("write failed: ", path));
  return absl::OkStatus();
}

}  // namespace sdc
