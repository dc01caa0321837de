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

#ifndef SDC_DATASET_H_
#define SDC_DATASET_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "sdc/schema.h"
#include "sdc/value.h"

namespace sdc {

// Values in schema order.
using Row = std::vector<Value>;

// Immutable record table. Copies share storage; transforms build new
// datasets rather than editing rows in place.
class Dataset {
 public:
  // Every row must have one value per attribute, each either missing or of
  // the attribute's kind. Category and text tokens must be non-empty.
  static absl::StatusOr<Dataset> Create(Schema schema, std::vector<Row> rows,
                                        std::string provenance = "");

  const Schema& schema() const { return *schema_; }
  size_t record_count() const { return rows_->size(); }
  std::span<const Row> rows() const { return *rows_; }
  const Row& row(size_t i) const { return rows_->at(i); }
  const std::string& provenance() const { return provenance_; }

  absl::StatusOr<Value> Get(size_t row, std::string_view attribute) const;

 private:
  Dataset() = default;

  std::shared_ptr<const Schema> schema_;
  std::shared_ptr<const std::vector<Row>> rows_;
  std::string provenance_;
};

// Stable 64-bit digest over schema and rows (not provenance). Used to check
// that read-only operations leave a dataset untouched.
uint64_t Fingerprint(const Dataset& dataset);

}  // namespace sdc

#endif  // SDC_DATASET_H_
