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

#ifndef SDC_SCHEMA_H_
#define SDC_SCHEMA_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sdc/hierarchy.h"
#include "sdc/value.h"

namespace sdc {

enum class Role { kDirectIdentifier, kQuasiIdentifier, kSensitive, kNeutral };
enum class Kind { kCategorical, kInteger, kDate, kText };

std::string_view RoleName(Role role);
std::string_view KindName(Kind kind);
absl::StatusOr<Role> ParseRole(std::string_view name);
absl::StatusOr<Kind> ParseKind(std::string_view name);

struct IntegerRange {
  int64_t min = 0;
  int64_t max = 0;
  friend bool operator==(const IntegerRange&, const IntegerRange&) = default;
};

struct DateRange {
  Date min;
  Date max;
  friend bool operator==(const DateRange&, const DateRange&) = default;
};

// Enumerated tokens keep their declared order, which ordered distances use.
using Domain = std::variant<std::vector<std::string>, IntegerRange, DateRange>;

// Number of distinct values a domain admits.
int64_t DomainSize(const Domain& domain);

struct AttributeSchema {
  std::string name;
  Role role = Role::kNeutral;
  Kind kind = Kind::kCategorical;
  std::optional<std::string> hierarchy;
  std::optional<Domain> domain;

  // Generalization state, maintained by transforms. `hierarchy_level` is the
  // level the current tokens live at; `generalization_height` is 0 for raw
  // values and 1 when every value is collapsed into a single token.
  int hierarchy_level = 0;
  double generalization_height = 0.0;

  friend bool operator==(const AttributeSchema&,
                         const AttributeSchema&) = default;
};

// Ordered attribute list plus the hierarchies its attributes may reference.
class Schema {
 public:
  Schema() = default;

  // Enforces unique names, hierarchy-kind compatibility and that every
  // referenced hierarchy is present in `hierarchies`.
  static absl::StatusOr<Schema> Create(std::vector<AttributeSchema> attributes,
                                       HierarchySet hierarchies = {});

  std::span<const AttributeSchema> attributes() const { return attributes_; }
  size_t size() const { return attributes_.size(); }
  const AttributeSchema& at(size_t i) const { return attributes_.at(i); }
  std::optional<size_t> IndexOf(std::string_view name) const;
  const AttributeSchema* Find(std::string_view name) const;
  const HierarchySet& hierarchies() const { return hierarchies_; }
  const GeneralizationHierarchy* HierarchyFor(
      const AttributeSchema& attribute) const;

  std::vector<std::string> NamesWithRole(Role role) const;
  std::vector<std::string> Names() const;

  friend bool operator==(const Schema& a, const Schema& b) {
    return a.attributes_ == b.attributes_;
  }

 private:
  std::vector<AttributeSchema> attributes_;
  HierarchySet hierarchies_;
};

// Schema document: array of {name, role, kind, hierarchy?, domain?}. A domain
// is either an array of tokens or {"min": .., "max": ..} (integers or dates).
absl::StatusOr<Schema> ParseSchema(const nlohmann::json& doc,
                                   HierarchySet hierarchies = {});
nlohmann::json SchemaToJson(const Schema& schema);

}  // namespace sdc

#endif  // SDC_SCHEMA_H_
