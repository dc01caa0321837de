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

#ifndef SDC_TRANSFORM_STEP_H_
#define SDC_TRANSFORM_STEP_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sdc/bands.h"
#include "sdc/dataset.h"
#include "sdc/deid_context.h"
#include "sdc/predicate.h"

namespace sdc {

enum class StepKind {
  kRemoveAttribute,
  kGeneralize,
  kBandNumeric,
  kSuppressRecords,
  kPseudonymize,
  kOffsetDates,
  kRelativeDays,
};

std::string_view StepKindName(StepKind kind);
absl::StatusOr<StepKind> ParseStepKind(std::string_view name);

struct HierarchyLevel {
  int level = 1;
};

struct AnchorAttribute {
  std::string anchor;
};

using StepParams = std::variant<std::monostate, HierarchyLevel, BandSpec,
                                RecordPredicate, OffsetSource, AnchorAttribute>;

// One declarative de-identification action. Serializes to
// {"kind", "target", "params", "seed"}.
struct TransformStep {
  StepKind kind = StepKind::kRemoveAttribute;
  std::vector<std::string> target;
  StepParams params;
  uint64_t seed = 0;

  static TransformStep Remove(std::string attribute);
  static TransformStep Generalize(std::string attribute, int level);
  static TransformStep Band(std::string attribute, BandSpec bands);
  static TransformStep Suppress(RecordPredicate predicate);
  static TransformStep PseudonymizeIds(std::string attribute, uint64_t seed);
  static TransformStep Offset(std::vector<std::string> attributes,
                              OffsetSource source);
  static TransformStep Relative(std::vector<std::string> attributes,
                                std::string anchor);
};

// Checks that parameters are complete for the kind.
absl::Status ValidateStep(const TransformStep& step);

// Checks the step's references against a schema (existence, kinds, roles).
absl::Status CheckStepAgainstSchema(const TransformStep& step,
                                    const Schema& schema);

// Attribute names the step reads or rewrites.
std::vector<std::string> ReferencedAttributes(const TransformStep& step);

// One-line human-readable summary.
std::string DescribeStep(const TransformStep& step);

struct StepOutcome {
  Dataset dataset;
  size_t removed_records = 0;
};

absl::StatusOr<StepOutcome> ApplyStep(const Dataset& dataset,
                                      const TransformStep& step);

nlohmann::json StepToJson(const TransformStep& step);
absl::StatusOr<TransformStep> StepFromJson(const nlohmann::json& j);

}  // namespace sdc

#endif  // SDC_TRANSFORM_STEP_H_
