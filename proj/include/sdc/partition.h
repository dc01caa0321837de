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

#ifndef SDC_PARTITION_H_
#define SDC_PARTITION_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "sdc/dataset.h"

namespace sdc {

// Quasi-identifier values of one record, in schema order.
using Signature = std::vector<Value>;

// "(M, >=45)"; missing renders as "<missing>".
std::string FormatSignature(const Signature& signature);

struct EquivalenceClass {
  Signature signature;
  std::vector<size_t> rows;  // ascending
  size_t size() const { return rows.size(); }
};

// Records grouped by their quasi-identifier signature. Classes are disjoint,
// non-empty, cover every row, and are ordered by signature.
class EquivalencePartition {
 public:
  EquivalencePartition() = default;
  EquivalencePartition(std::vector<std::string> quasi_set,
                       std::vector<EquivalenceClass> classes, size_t total);

  const std::vector<std::string>& quasi_set() const { return quasi_set_; }
  std::span<const EquivalenceClass> classes() const { return classes_; }
  size_t class_count() const { return classes_.size(); }
  size_t total() const { return total_; }
  bool empty() const { return classes_.empty(); }
  std::vector<size_t> sizes() const;
  // 0 for an empty partition.
  size_t min_size() const;

 private:
  std::vector<std::string> quasi_set_;
  std::vector<EquivalenceClass> classes_;
  size_t total_ = 0;
};

// Groups rows by their values over `quasi_set`. Names are reordered to schema
// order; duplicates are ignored. Missing is its own value. An empty dataset
// yields an empty partition.
absl::StatusOr<EquivalencePartition> Partition(
    const Dataset& dataset, std::span<const std::string> quasi_set);

}  // namespace sdc

#endif  // SDC_PARTITION_H_
