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

#include "sdc/schema.h"

#include <set>

#include "absl/status/status.h"
#include "sdc/internal/str.h"

namespace sdc {
namespace {

absl::StatusOr<Date> JsonDate(const nlohmann::json& j, std::string_view what) {
  if (!j.is_string()) {
    return absl::InvalidArgumentError(internal::StrCat(what, " must be a date"));
  }
  auto d = ParseDate(j.get<std::string>());
  if (!d) {
    return absl::InvalidArgumentError(
        internal::StrCat(what, " is not a valid date: ", j.get<std::string>()));
  }
  return *d;
}

absl::StatusOr<Domain> ParseDomain(const nlohmann::json& j, Kind kind,
                                   std::string_view attr) {
  if (j.is_array()) {
    std::vector<std::string> tokens;
    for (const auto& t : j) {
      if (!t.is_string()) {
        return absl::InvalidArgumentError(internal::StrCat(
            "attribute '", attr, "': enumerated domain tokens must be strings"));
      }
      tokens.push_back(t.get<std::string>());
    }
    return Domain{std::move(tokens)};
  }
  if (j.is_object() && j.contains("min") && j.contains("max")) {
    if (kind == Kind::kDate) {
      auto lo = JsonDate(j["min"], "domain min");
      if (!lo.ok()) return lo.status();
      auto hi = JsonDate(j["max"], "domain max");
      if (!hi.ok()) return hi.status();
      if (*hi < *lo) {
        return absl::InvalidArgumentError(
            internal::StrCat("attribute '", attr, "': empty date range"));
      }
      return Domain{DateRange{*lo, *hi}};
    }
    if (kind == Kind::kInteger && j["min"].is_number_integer() &&
        j["max"].is_number_integer()) {
      IntegerRange r{j["min"].get<int64_t>(), j["max"].get<int64_t>()};
      if (r.max < r.min) {
        return absl::InvalidArgumentError(
            internal::StrCat("attribute '", attr, "': empty integer range"));
      }
      return Domain{r};
    }
  }
  return absl::InvalidArgumentError(
      internal::StrCat("attribute '", attr, "': malformed domain"));
}

}  // namespace

std::string_view RoleName(Role role) {
  switch (role) {
    case Role::kDirectIdentifier:
      return "direct-identifier";
    case Role::kQuasiIdentifier:
      return "quasi-identifier";
    case Role::kSensitive:
      return "sensitive";
    case Role::kNeutral:
      return "neutral";
  }
  return "neutral";
}

std::string_view KindName(Kind kind) {
  switch (kind) {
    case Kind::kCategorical:
      return "categorical";
    case Kind::kInteger:
      return "integer";
    case Kind::kDate:
      return "date";
    case Kind::kText:
      return "text";
  }
  return "text";
}

absl::StatusOr<Role> ParseRole(std::string_view name) {
  for (Role r : {Role::kDirectIdentifier, Role::kQuasiIdentifier,
                 Role::kSensitive, Role::kNeutral}) {
    if (RoleName(r) == name) return r;
  }
  return absl::InvalidArgumentError(internal::StrCat("unknown role '", name, "'"));
}

absl::StatusOr<Kind> ParseKind(std::string_view name) {
  for (Kind k : {Kind::kCategorical, Kind::kInteger, Kind::kDate, Kind::kText}) {
    if (KindName(k) == name) return k;
  }
  return absl::InvalidArgumentError(internal::StrCat("unknown kind '", name, "'"));
}

int64_t DomainSize(const Domain& domain) {
  if (const auto* tokens = std::get_if<std::vector<std::string>>(&domain)) {
    return static_cast<int64_t>(std::set<std::string>(tokens->begin(),
                                                      tokens->end())
                                    .size());
  }
  if (const auto* r = std::get_if<IntegerRange>(&domain)) {
    return r->max - r->min + 1;
  }
  const auto& d = std::get<DateRange>(domain);
  return (d.max - d.min).count() + 1;
}

absl::StatusOr<Schema> Schema::Create(std::vector<AttributeSchema> attributes,
                                      HierarchySet hierarchies) {
  std::set<std::string, std::less<>> names;
  for (const auto& a : attributes) {
    if (a.name.empty()) {
      return absl::InvalidArgumentError("attribute names must be non-empty");
    }
    if (!names.insert(a.name).second) {
      return absl::InvalidArgumentError(
          internal::StrCat("duplicate attribute name '", a.name, "'"));
    }
    if (a.hierarchy) {
      if (a.kind != Kind::kCategorical && a.kind != Kind::kInteger) {
        return absl::InvalidArgumentError(internal::StrCat(
            "attribute '", a.name, "': hierarchies attach only to categorical ",
            "or integer attributes"));
      }
      if (hierarchies.find(*a.hierarchy) == hierarchies.end()) {
        return absl::InvalidArgumentError(internal::StrCat(
            "attribute '", a.name, "' references unknown hierarchy '",
            *a.hierarchy, "'"));
      }
    }
    if (a.domain) {
      bool ok = std::holds_alternative<std::vector<std::string>>(*a.domain) ||
                (std::holds_alternative<IntegerRange>(*a.domain) &&
                 a.kind == Kind::kInteger) ||
                (std::holds_alternative<DateRange>(*a.domain) &&
                 a.kind == Kind::kDate);
      if (!ok) {
        return absl::InvalidArgumentError(internal::StrCat(
            "attribute '", a.name, "': domain does not fit kind ",
            KindName(a.kind)));
      }
    }
  }
  Schema s;
  s.attributes_ = std::move(attributes);
  s.hierarchies_ = std::move(hierarchies);
  return s;
}

std::optional<size_t> Schema::IndexOf(std::string_view name) const {
  for (size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name == name) return i;
  }
  return std::nullopt;
}

const AttributeSchema* Schema::Find(std::string_view name) const {
  auto i = IndexOf(name);
  return i ? &attributes_[*i] : nullptr;
}

const GeneralizationHierarchy* Schema::HierarchyFor(
    const AttributeSchema& attribute) const {
  if (!attribute.hierarchy) return nullptr;
  auto it = hierarchies_.find(*attribute.hierarchy);
  return it == hierarchies_.end() ? nullptr : it->second.get();
}

std::vector<std::string> Schema::NamesWithRole(Role role) const {
  std::vector<std::string> out;
  for (const auto& a : attributes_) {
    if (a.role == role) out.push_back(a.name);
  }
  return out;
}

std::vector<std::string> Schema::Names() const {
  std::vector<std::string> out;
  for (const auto& a : attributes_) out.push_back(a.name);
  return out;
}

absl::StatusOr<Schema> ParseSchema(const nlohmann::json& doc,
                                   HierarchySet hierarchies) {
  if (!doc.is_array()) {
    return absl::InvalidArgumentError("schema document must be a JSON array");
  }
  std::vector<AttributeSchema> attributes;
  for (const auto& entry : doc) {
    if (!entry.is_object()) {
      return absl::InvalidArgumentError("schema entries must be objects");
    }
    for (const char* key : {"name", "role", "kind"}) {
      if (!entry.contains(key) || !entry[key].is_string()) {
        return absl::InvalidArgumentError(
            internal::StrCat("schema entry is missing string field '", key, "'"));
      }
    }
    AttributeSchema a;
    a.name = entry["name"].get<std::string>();
    auto role = ParseRole(entry["role"].get<std::string>());
    if (!role.ok()) return role.status();
    a.role = *role;
    auto kind = ParseKind(entry["kind"].get<std::string>());
    if (!kind.ok()) return kind.status();
    a.kind = *kind;
    if (entry.contains("hierarchy") && !entry["hierarchy"].is_null()) {
      if (!entry["hierarchy"].is_string()) {
        return absl::InvalidArgumentError(internal::StrCat(
            "attribute '", a.name, "': 'hierarchy' must name a hierarchy"));
      }
      a.hierarchy = entry["hierarchy"].get<std::string>();
    }
    if (entry.contains("domain") && !entry["domain"].is_null()) {
      auto domain = ParseDomain(entry["domain"], a.kind, a.name);
      if (!domain.ok()) return domain.status();
      a.domain = *std::move(domain);
    }
    if (entry.contains("hierarchy_level")) {
      a.hierarchy_level = entry["hierarchy_level"].get<int>();
    }
    if (entry.contains("generalization_height")) {
      a.generalization_height = entry["generalization_height"].get<double>();
    }
    attributes.push_back(std::move(a));
  }
  return Schema::Create(std::move(attributes), std::move(hierarchies));
}

nlohmann::json SchemaToJson(const Schema& schema) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& a : schema.attributes()) {
    nlohmann::json entry = {{"name", a.name},
                            {"role", std::string(RoleName(a.role))},
                            {"kind", std::string(KindName(a.kind))}};
    if (a.hierarchy) entry["hierarchy"] = *a.hierarchy;
    if (a.domain) {
      if (const auto* tokens = std::get_if<std::vector<std::string>>(&*a.domain)) {
        entry["domain"] = *tokens;
      } else if (const auto* r = std::get_if<IntegerRange>(&*a.domain)) {
        entry["domain"] = {{"min", r->min}, {"max", r->max}};
      } else {
        const auto& d = std::get<DateRange>(*a.domain);
        entry["domain"] = {{"min", FormatDate(d.min)}, {"max", FormatDate(d.max)}};
      }
    }
    if (a.hierarchy_level != 0) entry["hierarchy_level"] = a.hierarchy_level;
    if (a.generalization_height != 0.0) {
      entry["generalization_height"] = a.generalization_height;
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace sdc
