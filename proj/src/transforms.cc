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

#include "sdc/transforms.h"

#include <algorithm>
#include <set>
#include <vector>

#include "sdc/internal/str.h"

namespace sdc {
namespace {

absl::StatusOr<size_t> Column(const Schema& schema, std::string_view name) {
  auto idx = schema.IndexOf(name);
  if (!idx) {
    return absl::InvalidArgumentError(
        internal::StrCat("unknown attribute '", name, "'"));
  }
  return *idx;
}

std::vector<AttributeSchema> CopyAttributes(const Schema& schema) {
  return {schema.attributes().begin(), schema.attributes().end()};
}

std::vector<Row> CopyRows(const Dataset& dataset) {
  return {dataset.rows().begin(), dataset.rows().end()};
}

absl::StatusOr<Dataset> Rebuild(const Dataset& source,
                                std::vector<AttributeSchema> attributes,
                                std::vector<Row> rows) {
  auto schema = Schema::Create(std::move(attributes),
                               source.schema().hierarchies());
  if (!schema.ok()) return schema.status();
  return Dataset::Create(*std::move(schema), std::move(rows),
                         source.provenance());
}

// Bands a domain of `domain_size` values into `bands` groups: 0 when every
// raw value keeps its own group, 1 when everything collapses into one.
double BandHeight(int64_t domain_size, int64_t bands) {
  if (domain_size <= 1) return 0.0;
  const double h = 1.0 - static_cast<double>(bands - 1) /
                             static_cast<double>(domain_size - 1);
  return std::clamp(h, 0.0, 1.0);
}

absl::StatusOr<std::vector<size_t>> DateColumns(
    const Schema& schema, std::span<const std::string> attributes) {
  std::vector<size_t> columns;
  for (const auto& name : attributes) {
    auto c = Column(schema, name);
    if (!c.ok()) return c.status();
    if (schema.at(*c).kind != Kind::kDate) {
      return absl::InvalidArgumentError(
          internal::StrCat("attribute '", name, "' is ",
                           KindName(schema.at(*c).kind), ", not a date"));
    }
    columns.push_back(*c);
  }
  return columns;
}

}  // namespace

absl::StatusOr<Dataset> RemoveAttribute(const Dataset& dataset,
                                        std::string_view attribute) {
  auto column = Column(dataset.schema(), attribute);
  if (!column.ok()) return column.status();
  auto attributes = CopyAttributes(dataset.schema());
  attributes.erase(attributes.begin() + static_cast<std::ptrdiff_t>(*column));
  std::vector<Row> rows;
  rows.reserve(dataset.record_count());
  for (const auto& row : dataset.rows()) {
    Row out = row;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(*column));
    rows.push_back(std::move(out));
  }
  return Rebuild(dataset, std::move(attributes), std::move(rows));
}

absl::StatusOr<Dataset> GeneralizeToLevel(const Dataset& dataset,
                                          std::string_view attribute,
                                          int level) {
  auto column = Column(dataset.schema(), attribute);
  if (!column.ok()) return column.status();
  const AttributeSchema& a = dataset.schema().at(*column);
  const GeneralizationHierarchy* h = dataset.schema().HierarchyFor(a);
  if (h == nullptr) {
    return absl::FailedPreconditionError(
        internal::StrCat("attribute '", a.name, "' has no hierarchy"));
  }
  if (level < 0 || level > h->height()) {
    return absl::OutOfRangeError(
        internal::StrCat("level ", level, " exceeds the height ", h->height(),
                         " of hierarchy '", h->name(), "'"));
  }
  if (level < a.hierarchy_level) {
    return absl::FailedPreconditionError(internal::StrCat(
        "attribute '", a.name, "' is already at level ", a.hierarchy_level,
        "; cannot go back to level ", level));
  }

  auto rows = CopyRows(dataset);
  for (auto& row : rows) {
    Value& v = row[*column];
    if (v.is_missing()) continue;
    auto token = h->Generalize(v.ToString(), a.hierarchy_level, level);
    if (!token.ok()) return token.status();
    v = Value::Category(*std::move(token));
  }
  auto attributes = CopyAttributes(dataset.schema());
  AttributeSchema& out = attributes[*column];
  out.kind = Kind::kCategorical;
  out.domain = Domain{h->TokensAt(level)};
  out.hierarchy_level = level;
  out.generalization_height =
      h->height() == 0 ? 0.0
                       : static_cast<double>(level) / static_cast<double>(h->height());
  return Rebuild(dataset, std::move(attributes), std::move(rows));
}

absl::StatusOr<Dataset> GeneralizeToBands(const Dataset& dataset,
                                          std::string_view attribute,
                                          const BandSpec& bands) {
  if (auto s = bands.Validate(); !s.ok()) return s;
  auto column = Column(dataset.schema(), attribute);
  if (!column.ok()) return column.status();
  const AttributeSchema& a = dataset.schema().at(*column);
  if (a.kind != Kind::kInteger) {
    return absl::FailedPreconditionError(internal::StrCat(
        "banding needs an integer attribute; '", a.name, "' is ",
        KindName(a.kind)));
  }

  auto rows = CopyRows(dataset);
  std::set<int64_t> observed;
  for (auto& row : rows) {
    Value& v = row[*column];
    if (v.is_missing()) continue;
    observed.insert(v.integer());
    auto label = bands.LabelFor(v.integer());
    if (!label.ok()) {
      return absl::OutOfRangeError(internal::StrCat(
          "attribute '", a.name, "': ", internal::Message(label.status())));
    }
    v = Value::Category(*std::move(label));
  }

  // Granularity is judged against the declared domain when there is one.
  int64_t domain_size = static_cast<int64_t>(observed.size());
  int64_t band_count = static_cast<int64_t>(bands.band_count());
  if (a.domain && std::holds_alternative<IntegerRange>(*a.domain)) {
    const auto& range = std::get<IntegerRange>(*a.domain);
    domain_size = range.max - range.min + 1;
    std::set<std::string> hit;
    for (int64_t x = range.min; x <= range.max; ++x) {
      if (auto label = bands.LabelFor(x); label.ok()) hit.insert(*label);
    }
    band_count = static_cast<int64_t>(hit.size());
  } else {
    std::set<std::string> hit;
    for (int64_t x : observed) hit.insert(*bands.LabelFor(x));
    band_count = static_cast<int64_t>(hit.size());
  }

  auto attributes = CopyAttributes(dataset.schema());
  AttributeSchema& out = attributes[*column];
  out.kind = Kind::kCategorical;
  out.hierarchy.reset();
  out.hierarchy_level = 0;
  out.domain = Domain{bands.Labels()};
  out.generalization_height = BandHeight(domain_size, band_count);
  return Rebuild(dataset, std::move(attributes), std::move(rows));
}

absl::StatusOr<SuppressionResult> SuppressRecords(
    const Dataset& dataset, const RecordPredicate& predicate) {
  auto bound = BoundPredicate::Bind(predicate, dataset.schema());
  if (!bound.ok()) return bound.status();
  std::vector<Row> kept;
  size_t removed = 0;
  for (const auto& row : dataset.rows()) {
    if (bound->Matches(row)) {
      ++removed;
    } else {
      kept.push_back(row);
    }
  }
  auto out = Dataset::Create(dataset.schema(), std::move(kept),
                             dataset.provenance());
  if (!out.ok()) return out.status();
  return SuppressionResult{*std::move(out), removed};
}

absl::StatusOr<Dataset> Pseudonymize(const Dataset& dataset,
                                     std::string_view attribute,
                                     uint64_t seed) {
  auto column = Column(dataset.schema(), attribute);
  if (!column.ok()) return column.status();
  const AttributeSchema& a = dataset.schema().at(*column);
  if (a.role != Role::kDirectIdentifier) {
    return absl::FailedPreconditionError(internal::StrCat(
        "refusing to pseudonymize '", a.name, "': role is ", RoleName(a.role),
        ", not direct-identifier"));
  }
  std::vector<std::string> universe;
  for (const auto& row : dataset.rows()) {
    if (!row[*column].is_missing()) universe.push_back(row[*column].ToString());
  }
  const PseudonymTable table = PseudonymTable::Create(seed, universe);

  auto rows = CopyRows(dataset);
  for (auto& row : rows) {
    Value& v = row[*column];
    if (v.is_missing()) continue;
    v = Value::Category(*table.Lookup(v.ToString()));
  }
  auto attributes = CopyAttributes(dataset.schema());
  attributes[*column].kind = Kind::kCategorical;
  attributes[*column].domain.reset();
  attributes[*column].hierarchy.reset();
  return Rebuild(dataset, std::move(attributes), std::move(rows));
}

absl::StatusOr<Dataset> OffsetDates(const Dataset& dataset,
                                    std::span<const std::string> attributes,
                                    const OffsetSource& source) {
  auto columns = DateColumns(dataset.schema(), attributes);
  if (!columns.ok()) return columns.status();
  std::optional<size_t> subject_column;
  if (const auto* seeded = std::get_if<SeededOffset>(&source);
      seeded != nullptr && seeded->subject_attribute) {
    auto c = Column(dataset.schema(), *seeded->subject_attribute);
    if (!c.ok()) return c.status();
    subject_column = *c;
  }

  auto rows = CopyRows(dataset);
  for (size_t r = 0; r < rows.size(); ++r) {
    const std::string key = subject_column
                                ? rows[r][*subject_column].ToString()
                                : internal::StrCat("row:", r);
    const int offset = OffsetDaysFor(source, key);
    for (size_t c : *columns) {
      Value& v = rows[r][c];
      if (v.is_missing()) continue;
      v = Value::FromDate(v.date() + std::chrono::days{offset});
    }
  }
  auto schema_attributes = CopyAttributes(dataset.schema());
  for (size_t c : *columns) schema_attributes[c].domain.reset();
  return Rebuild(dataset, std::move(schema_attributes), std::move(rows));
}

absl::StatusOr<Dataset> RelativeDays(const Dataset& dataset,
                                     std::span<const std::string> attributes,
                                     std::string_view anchor) {
  auto anchor_column = Column(dataset.schema(), anchor);
  if (!anchor_column.ok()) return anchor_column.status();
  const std::string anchor_name(anchor);
  auto anchor_check = DateColumns(dataset.schema(), {&anchor_name, 1});
  if (!anchor_check.ok()) return anchor_check.status();
  auto columns = DateColumns(dataset.schema(), attributes);
  if (!columns.ok()) return columns.status();
  if (std::find(columns->begin(), columns->end(), *anchor_column) ==
      columns->end()) {
    columns->push_back(*anchor_column);
  }

  auto rows = CopyRows(dataset);
  for (size_t r = 0; r < rows.size(); ++r) {
    const Value& anchor_value = dataset.row(r)[*anchor_column];
    if (anchor_value.is_missing()) {
      return absl::FailedPreconditionError(internal::StrCat(
          "row ", r, " has no value for anchor '", anchor, "'"));
    }
    for (size_t c : *columns) {
      Value& v = rows[r][c];
      if (v.is_missing()) continue;
      v = Value::Integer((v.date() - anchor_value.date()).count());
    }
  }
  auto schema_attributes = CopyAttributes(dataset.schema());
  for (size_t c : *columns) {
    schema_attributes[c].kind = Kind::kInteger;
    schema_attributes[c].domain.reset();
  }
  return Rebuild(dataset, std::move(schema_attributes), std::move(rows));
}

}  // namespace sdc
