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

#ifndef SDC_TRANSFORMS_H_
#define SDC_TRANSFORMS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "sdc/bands.h"
#include "sdc/dataset.h"
#include "sdc/deid_context.h"
#include "sdc/predicate.h"

namespace sdc {

// De-identification transforms. Each returns a new dataset; the input is
// never modified. All are deterministic in (input, parameters, seed).

absl::StatusOr<Dataset> RemoveAttribute(const Dataset& dataset,
                                        std::string_view attribute);

// Replaces every value by its token at `level` of the attribute's hierarchy.
// Levels are absolute (0 = raw); generalizing to the current level is a no-op
// and going back down is an error.
absl::StatusOr<Dataset> GeneralizeToLevel(const Dataset& dataset,
                                          std::string_view attribute,
                                          int level);

// Replaces integer values by band labels. The attribute becomes categorical
// with the band labels as its ordered domain.
absl::StatusOr<Dataset> GeneralizeToBands(const Dataset& dataset,
                                          std::string_view attribute,
                                          const BandSpec& bands);

struct SuppressionResult {
  Dataset dataset;
  size_t removed = 0;
};

absl::StatusOr<SuppressionResult> SuppressRecords(
    const Dataset& dataset, const RecordPredicate& predicate);

// Only direct identifiers may be pseudonymized.
absl::StatusOr<Dataset> Pseudonymize(const Dataset& dataset,
                                     std::string_view attribute, uint64_t seed);

// Shifts every listed date of a subject by that subject's single offset.
absl::StatusOr<Dataset> OffsetDates(const Dataset& dataset,
                                    std::span<const std::string> attributes,
                                    const OffsetSource& source);

// Replaces dates by signed day counts from the row's anchor date. The anchor
// itself becomes 0. Every row needs an anchor value.
absl::StatusOr<Dataset> RelativeDays(const Dataset& dataset,
                                     std::span<const std::string> attributes,
                                     std::string_view anchor);

}  // namespace sdc

#endif  // SDC_TRANSFORMS_H_
