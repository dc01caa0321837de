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

#include "sdc/hierarchy.h"

#include <algorithm>
#include <set>

#include "absl/status/status.h"
#include "sdc/internal/str.h"

namespace sdc {

absl::StatusOr<GeneralizationHierarchy> GeneralizationHierarchy::Build(
    std::string name, std::vector<std::string> domain,
    std::vector<LevelMapping> mappings, bool complete) {
  GeneralizationHierarchy h;
  h.name_ = std::move(name);

  std::set<std::string> seen;
  std::vector<std::string> level0;
  for (auto& token : domain) {
    if (seen.insert(token).second) level0.push_back(std::move(token));
  }
  h.level_tokens_.push_back(std::move(level0));

  for (size_t k = 0; k < mappings.size(); ++k) {
    const auto& previous = h.level_tokens_.back();
    std::vector<std::string> next;
    std::set<std::string> next_seen;
    for (const auto& token : previous) {
      auto it = mappings[k].map.find(token);
      if (it == mappings[k].map.end()) {
        return absl::InvalidArgumentError(internal::StrCat(
            "hierarchy '", h.name_, "': level ", k + 1, " does not map token '",
            token, "'"));
      }
      if (next_seen.insert(it->second).second) next.push_back(it->second);
    }
    h.level_tokens_.push_back(std::move(next));
  }
  if (complete && h.level_tokens_.back().size() > 1) {
    return absl::InvalidArgumentError(
        internal::StrCat("hierarchy '", h.name_, "' is declared complete but its ",
                     "top level has ", h.level_tokens_.back().size(),
                     " tokens"));
  }
  h.mappings_ = std::move(mappings);
  return h;
}

absl::StatusOr<std::string> GeneralizationHierarchy::Generalize(
    std::string_view token, int from_level, int to_level) const {
  if (from_level < 0 || to_level > height() || from_level > to_level) {
    return absl::OutOfRangeError(internal::StrCat(
        "hierarchy '", name_, "' has height ", height(),
        "; cannot generalize from level ", from_level, " to ", to_level));
  }
  std::string current(token);
  for (int k = from_level; k < to_level; ++k) {
    const auto& map = mappings_[k].map;
    auto it = map.find(current);
    if (it == map.end()) {
      return absl::InvalidArgumentError(
          internal::StrCat("value '", current, "' is outside the domain of ",
                       "hierarchy '", name_, "' at level ", k));
    }
    current = it->second;
  }
  if (from_level == to_level) {
    const auto& tokens = level_tokens_[from_level];
    if (std::find(tokens.begin(), tokens.end(), current) == tokens.end()) {
      return absl::InvalidArgumentError(
          internal::StrCat("value '", current, "' is outside the domain of ",
                       "hierarchy '", name_, "' at level ", from_level));
    }
  }
  return current;
}

absl::StatusOr<HierarchySet> ParseHierarchies(const nlohmann::json& doc) {
  HierarchySet out;
  if (!doc.is_object() || !doc.contains("hierarchies") ||
      !doc["hierarchies"].is_array()) {
    return absl::InvalidArgumentError(
        "hierarchy document must be an object with a 'hierarchies' array");
  }
  for (const auto& entry : doc["hierarchies"]) {
    if (!entry.is_object() || !entry.contains("name") ||
        !entry["name"].is_string() || !entry.contains("levels") ||
        !entry["levels"].is_array()) {
      return absl::InvalidArgumentError(
          "each hierarchy needs a string 'name' and a 'levels' array");
    }
    std::string name = entry["name"].get<std::string>();
    std::vector<LevelMapping> mappings;
    for (const auto& level : entry["levels"]) {
      if (!level.is_object() || !level.contains("map") ||
          !level["map"].is_object()) {
        return absl::InvalidArgumentError(internal::StrCat(
            "hierarchy '", name, "': each level needs a 'map' object"));
      }
      LevelMapping mapping;
      mapping.name = level.value("name", "");
      for (const auto& [from, to] : level["map"].items()) {
        if (!to.is_string()) {
          return absl::InvalidArgumentError(internal::StrCat(
              "hierarchy '", name, "': mapping for '", from,
              "' must be a string"));
        }
        mapping.map.emplace(from, to.get<std::string>());
      }
      mappings.push_back(std::move(mapping));
    }
    std::vector<std::string> domain;
    if (entry.contains("domain")) {
      if (!entry["domain"].is_array()) {
        return absl::InvalidArgumentError(
            internal::StrCat("hierarchy '", name, "': 'domain' must be an array"));
      }
      for (const auto& token : entry["domain"]) {
        if (!token.is_string()) {
          return absl::InvalidArgumentError(internal::StrCat(
              "hierarchy '", name, "': domain tokens must be strings"));
        }
        domain.push_back(token.get<std::string>());
      }
    } else if (!mappings.empty()) {
      for (const auto& [from, to] : mappings.front().map) domain.push_back(from);
    }
    auto built = GeneralizationHierarchy::Build(
        name, std::move(domain), std::move(mappings),
        entry.value("complete", false));
    if (!built.ok()) return built.status();
    if (out.count(name) > 0) {
      return absl::InvalidArgumentError(
          internal::StrCat("duplicate hierarchy name '", name, "'"));
    }
    out.emplace(name, std::make_shared<const GeneralizationHierarchy>(
                          *std::move(built)));
  }
  return out;
}

nlohmann::json HierarchiesToJson(const HierarchySet& set) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [name, h] : set) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& m : h->mappings()) {
      levels.push_back({{"name", m.name}, {"map", m.map}});
    }
    list.push_back(
        {{"name", name}, {"domain", h->TokensAt(0)}, {"levels", levels}});
  }
  return {{"hierarchies", list}};
}

}  // namespace sdc
