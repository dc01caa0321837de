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

#ifndef SDC_NARRATIVE_H_
#define SDC_NARRATIVE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sdc/bands.h"
#include "sdc/deid_context.h"
#include "sdc/hierarchy.h"

namespace sdc {

enum class SpanCategory {
  kSubjectId,
  kGender,
  kAge,
  kLocation,
  kDate,
  kEventTerm,
  kFreeText,
};

inline constexpr SpanCategory kAllSpanCategories[] = {
    SpanCategory::kSubjectId, SpanCategory::kGender,    SpanCategory::kAge,
    SpanCategory::kLocation,  SpanCategory::kDate,      SpanCategory::kEventTerm,
    SpanCategory::kFreeText,
};

std::string_view SpanCategoryName(SpanCategory c);
absl::StatusOr<SpanCategory> ParseSpanCategory(std::string_view name);

enum class ActionKind { kRetain, kRedact, kRecode, kGeneralize, kOffsetDate, kDrop };

std::string_view ActionKindName(ActionKind a);
absl::StatusOr<ActionKind> ParseActionKind(std::string_view name);

// A tagged region [start, end) of the text, in bytes.
struct NarrativeSpan {
  size_t start = 0;
  size_t end = 0;
  SpanCategory category = SpanCategory::kFreeText;
  // Normalized value, e.g. "35" for "thirty-five" or an ISO date. The span's
  // own text is used when absent.
  std::optional<std::string> value;
  // Overrides the category's action for this span only.
  std::optional<ActionKind> action;
};

struct AnnotatedNarrative {
  std::string text;
  std::vector<NarrativeSpan> spans;

  // Spans must be in bounds, non-empty, sorted and non-overlapping.
  absl::Status Validate() const;
};

// Redaction glyph: ten full blocks, whatever the original length.
inline constexpr std::string_view kDefaultRedactionGlyph =
    "██████████";

struct CategoryAction {
  ActionKind kind = ActionKind::kRedact;
  // generalize: numeric bands (ages).
  std::optional<BandSpec> bands;
  // generalize: hierarchy name and target level (locations).
  std::optional<std::string> hierarchy;
  int level = 1;
  // generalize / recode: explicit term -> group map, matched
  // case-insensitively, rendered through `term_format`.
  std::map<std::string, std::string> term_map;
  std::string term_format = "[{}]";
};

struct NarrativePolicy {
  // Every category carries an action; unlisted categories are redacted.
  std::map<SpanCategory, CategoryAction> actions;
  std::string glyph{kDefaultRedactionGlyph};
  HierarchySet hierarchies;
  // Recoding reuses a dataset's table when one is shared here, otherwise one
  // is built from the narrative's subject ids with `pseudonym_seed`.
  std::shared_ptr<const PseudonymTable> pseudonyms;
  uint64_t pseudonym_seed = 0;
  OffsetSource offsets = FixedOffset{0};

  static NarrativePolicy RedactAll();
  const CategoryAction& ActionFor(SpanCategory c) const;
};

struct NarrativeLogEntry {
  size_t span_index = 0;
  SpanCategory category = SpanCategory::kFreeText;
  ActionKind action = ActionKind::kRetain;
  size_t input_start = 0;
  size_t input_end = 0;
  size_t output_start = 0;
  size_t output_end = 0;
};

// The log records where and how each span was rewritten, never the original
// content.
struct NarrativeResult {
  std::string text;
  std::vector<NarrativeLogEntry> log;
};

absl::StatusOr<NarrativeResult> ApplyNarrativePolicy(
    const AnnotatedNarrative& narrative, const NarrativePolicy& policy);

absl::StatusOr<AnnotatedNarrative> NarrativeFromJson(const nlohmann::json& j);
nlohmann::json NarrativeToJson(const AnnotatedNarrative& narrative);

// {"glyph", "pseudonym_seed", "offset": {...}, "actions": {category: action}}
// where an action is a kind string or {kind, bands?, hierarchy?, level?,
// term_map?, term_format?}. `hierarchies` resolves generalize actions.
absl::StatusOr<NarrativePolicy> NarrativePolicyFromJson(
    const nlohmann::json& j, HierarchySet hierarchies);

nlohmann::json NarrativeLogToJson(const std::vector<NarrativeLogEntry>& log);

}  // namespace sdc

#endif  // SDC_NARRATIVE_H_
