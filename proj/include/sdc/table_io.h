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

#ifndef SDC_TABLE_IO_H_
#define SDC_TABLE_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "sdc/dataset.h"
#include "sdc/schema.h"

namespace sdc {

using DelimitedRecords = std::vector<std::vector<std::string>>;

// RFC-4180 reader: quoted fields, doubled quotes, embedded delimiters and
// line breaks; CRLF or LF record separators. A trailing line break does not
// start a new record.
absl::StatusOr<DelimitedRecords> ParseDelimited(std::string_view text,
                                                char delimiter = ',');
std::string FormatDelimited(const DelimitedRecords& records,
                            char delimiter = ',');

// Parses one cell for an attribute kind. Empty cells are missing for every
// kind; malformed integers and dates are errors.
absl::StatusOr<Value> ParseCell(std::string_view cell, Kind kind);

// Header names must match the schema names exactly (as a set; columns are
// reordered to schema order). Errors name the offending row and column.
absl::StatusOr<Dataset> LoadDataset(std::string_view text, const Schema& schema,
                                    std::string provenance = "");
std::string SerializeDataset(const Dataset& dataset);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);

}  // namespace sdc

#endif  // SDC_TABLE_IO_H_
