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

#ifndef SDC_BANDS_H_
#define SDC_BANDS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"

namespace sdc {

enum class BandLabelStyle {
  kInclusive,  // "30-34": inclusive integer endpoints
  kBoundary,   // "30-40": lower cut to next cut
};

// Numeric banding. With cuts {c0, c1, ..., ck}, bands are [c_i, c_{i+1} - 1]
// for i < k; `open_top` adds a final band [c_k, +inf) rendered ">=c_k".
// Without `open_top` the last cut is an exclusive upper bound. Values below
// c0 (or at/above c_k when closed) are outside the spec.
struct BandSpec {
  std::vector<int64_t> cuts;
  bool open_top = false;
  BandLabelStyle style = BandLabelStyle::kInclusive;
  // Optional explicit labels, one per band.
  std::vector<std::string> labels;

  size_t band_count() const;
  absl::Status Validate() const;
  // Label of the band containing `value`.
  absl::StatusOr<std::string> LabelFor(int64_t value) const;
  std::vector<std::string> Labels() const;
};

nlohmann::json BandSpecToJson(const BandSpec& spec);
absl::StatusOr<BandSpec> BandSpecFromJson(const nlohmann::json& j);

}  // namespace sdc

#endif  // SDC_BANDS_H_
