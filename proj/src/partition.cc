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

#include "sdc/partition.h"

#include <algorithm>
#include <map>

#include "absl/status/status.h"
#include "fmt/format.h"
#include "sdc/internal/str.h"

namespace sdc {

std::string FormatSignature(const Signature& signature) {
  std::vector<std::string> parts;
  parts.reserve(signature.size());
  for (const auto& v : signature) {
    parts.push_back(v.is_missing() ? "<missing>" : v.ToString());
  }
  return fmt::format("({})", fmt::join(parts, ", "));
}

EquivalencePartition::EquivalencePartition(std::vector<std::string> quasi_set,
                                           std::vector<EquivalenceClass> classes,
                                           size_t total)
    : quasi_set_(std::move(quasi_set)),
      classes_(std::move(classes)),
      total_(total) {}

std::vector<size_t> EquivalencePartition::sizes() const {
  std::vector<size_t> out;
  out.reserve(classes_.size());
  for (const auto& c : classes_) out.push_back(c.size());
  return out;
}

size_t EquivalencePartition::min_size() const {
  size_t m = 0;
  for (const auto& c : classes_) {
    if (m == 0 || c.size() < m) m = c.size();
  }
  return m;
}

absl::StatusOr<EquivalencePartition> Partition(
    const Dataset& dataset, std::span<const std::string> quasi_set) {
  if (quasi_set.empty()) {
    return absl::InvalidArgumentError("quasi-identifier set is empty");
  }
  const Schema& schema = dataset.schema();
  std::vector<size_t> columns;
  for (const auto& name : quasi_set) {
    auto idx = schema.IndexOf(name);
    if (!idx) {
      return absl::InvalidArgumentError(
          internal::StrCat("unknown quasi-identifier '", name, "'"));
    }
    columns.push_back(*idx);
  }
  std::sort(columns.begin(), columns.end());
  columns.erase(std::unique(columns.begin(), columns.end()), columns.end());

  std::vector<std::string> names;
  for (size_t c : columns) names.push_back(schema.at(c).name);

  std::map<Signature, std::vector<size_t>> groups;
  const auto rows = dataset.rows();
  for (size_t r = 0; r < rows.size(); ++r) {
    Signature sig;
    sig.reserve(columns.size());
    for (size_t c : columns) sig.push_back(rows[r][c]);
    groups[std::move(sig)].push_back(r);
  }

  std::vector<EquivalenceClass> classes;
  classes.reserve(groups.size());
  for (auto& [sig, members] : groups) {
    classes.push_back({sig, std::move(members)});
  }
  return EquivalencePartition(std::move(names), std::move(classes),
                              rows.size());
}

}  // namespace sdc
