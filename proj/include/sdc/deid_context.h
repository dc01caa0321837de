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

#ifndef SDC_DEID_CONTEXT_H_
#define SDC_DEID_CONTEXT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace sdc {

inline constexpr int kDefaultPseudonymWidth = 6;
inline constexpr int kDefaultMaxOffsetDays = 365;

// Seeded assignment of surrogate identifiers. Pseudonyms are fixed-width
// zero-padded numbers that never coincide with a token of the universe, and
// equal originals always receive equal pseudonyms. The table lives only in
// memory: there is deliberately no serialization for it.
class PseudonymTable {
 public:
  // Same (seed, set of universe tokens) always yields the same table,
  // whatever the order or multiplicity of `universe`.
  static PseudonymTable Create(uint64_t seed,
                               std::span<const std::string> universe,
                               int width = kDefaultPseudonymWidth);

  // NotFound for tokens outside the universe.
  absl::StatusOr<std::string> Lookup(std::string_view token) const;
  size_t size() const { return map_.size(); }

 private:
  std::map<std::string, std::string, std::less<>> map_;
};

struct FixedOffset {
  int days = 0;
};

// Per-subject offsets drawn uniformly from [-max_abs_days, -1] U
// [1, max_abs_days], keyed on (seed, subject token).
struct SeededOffset {
  uint64_t seed = 0;
  int max_abs_days = kDefaultMaxOffsetDays;
  // Attribute whose value identifies the subject of a row. When absent each
  // row is its own subject.
  std::optional<std::string> subject_attribute;
};

using OffsetSource = std::variant<FixedOffset, SeededOffset>;

// The single offset applied to every date of `subject_key`.
int OffsetDaysFor(const OffsetSource& source, std::string_view subject_key);

nlohmann::json OffsetSourceToJson(const OffsetSource& source);
absl::StatusOr<OffsetSource> OffsetSourceFromJson(const nlohmann::json& j,
                                                  uint64_t seed);

}  // namespace sdc

#endif  // SDC_DEID_CONTEXT_H_
