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

#ifndef SDC_HIERARCHY_H_
#define SDC_HIERARCHY_H_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace sdc {

// One generalization step: every token of the previous level maps to exactly
// one coarser token.
struct LevelMapping {
  std::string name;
  std::map<std::string, std::string> map;
};

// Value generalization hierarchy. Level 0 holds the raw domain; level k > 0 is
// the image of level k-1 under mappings()[k-1]. Immutable once built.
class GeneralizationHierarchy {
 public:
  // Fails when a mapping does not cover every token of the previous level
  // (the error names the first unmapped token), or when `complete` is set and
  // the top level holds more than one token.
  static absl::StatusOr<GeneralizationHierarchy> Build(
      std::string name, std::vector<std::string> domain,
      std::vector<LevelMapping> mappings, bool complete = false);

  const std::string& name() const { return name_; }
  // Number of mappings; a hierarchy with only the raw level has height 0.
  int height() const { return static_cast<int>(mappings_.size()); }
  int level_count() const { return height() + 1; }
  const std::vector<std::string>& TokensAt(int level) const {
    return level_tokens_.at(level);
  }
  const std::vector<LevelMapping>& mappings() const { return mappings_; }

  // Maps a token known at `from_level` up to `to_level`.
  absl::StatusOr<std::string> Generalize(std::string_view token, int from_level,
                                         int to_level) const;

 private:
  GeneralizationHierarchy() = default;

  std::string name_;
  std::vector<LevelMapping> mappings_;
  std::vector<std::vector<std::string>> level_tokens_;
};

using HierarchySet =
    std::map<std::string, std::shared_ptr<const GeneralizationHierarchy>,
             std::less<>>;

// Document shape:
//   {"hierarchies": [{"name": "geography", "complete": false,
//                     "domain": ["Argentina", ...],        (optional)
//                     "levels": [{"name": "continent",
//                                 "map": {"Argentina": "South America"}}]}]}
// Without "domain", level 0 is the key set of the first mapping.
absl::StatusOr<HierarchySet> ParseHierarchies(const nlohmann::json& doc);
nlohmann::json HierarchiesToJson(const HierarchySet& set);

}  // namespace sdc

#endif  // SDC_HIERARCHY_H_
