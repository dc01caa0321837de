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

#include "sdc/deid_context.h"

#include <random>
#include <set>

#include "fmt/format.h"
#include "sdc/internal/hash.h"
#include "sdc/internal/str.h"

namespace sdc {

PseudonymTable PseudonymTable::Create(uint64_t seed,
                                      std::span<const std::string> universe,
                                      int width) {
  std::set<std::string, std::less<>> originals(universe.begin(),
                                               universe.end());
  // Keep the numeric space at least 4x the number of tokens so rejection
  // sampling stays cheap.
  uint64_t space = 1;
  for (int i = 0; i < width; ++i) space *= 10;
  while (space < 4 * (originals.size() + 1)) {
    space *= 10;
    ++width;
  }

  std::mt19937_64 engine(internal::SplitMix64(seed));
  std::set<std::string> used;
  PseudonymTable table;
  for (const auto& original : originals) {
    std::string candidate;
    do {
      candidate = fmt::format("{:0{}}", internal::UniformBelow(engine, space),
                              width);
    } while (originals.count(candidate) > 0 || used.count(candidate) > 0);
    used.insert(candidate);
    table.map_.emplace(original, std::move(candidate));
  }
  return table;
}

absl::StatusOr<std::string> PseudonymTable::Lookup(
    std::string_view token) const {
  auto it = map_.find(token);
  if (it == map_.end()) {
    return absl::NotFoundError("token has no pseudonym in this context");
  }
  return it->second;
}

int OffsetDaysFor(const OffsetSource& source, std::string_view subject_key) {
  if (const auto* fixed = std::get_if<FixedOffset>(&source)) return fixed->days;
  const auto& seeded = std::get<SeededOffset>(source);
  if (seeded.max_abs_days <= 0) return 0;
  internal::Fnv1a64 h;
  h.Add(seeded.seed);
  h.Add(subject_key);
  std::mt19937_64 engine(internal::SplitMix64(h.digest()));
  const auto span = static_cast<uint64_t>(seeded.max_abs_days);
  const auto draw = static_cast<int64_t>(internal::UniformBelow(engine, 2 * span));
  // [0, span) -> [-span, -1]; [span, 2 span) -> [1, span]
  return static_cast<int>(draw < static_cast<int64_t>(span)
                              ? draw - static_cast<int64_t>(span)
                              : draw - static_cast<int64_t>(span) + 1);
}

nlohmann::json OffsetSourceToJson(const OffsetSource& source) {
  if (const auto* fixed = std::get_if<FixedOffset>(&source)) {
    return {{"fixed_days", fixed->days}};
  }
  const auto& seeded = std::get<SeededOffset>(source);
  nlohmann::json j = {{"max_abs_days", seeded.max_abs_days}};
  if (seeded.subject_attribute) j["subject"] = *seeded.subject_attribute;
  return j;
}

absl::StatusOr<OffsetSource> OffsetSourceFromJson(const nlohmann::json& j,
                                                  uint64_t seed) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("offset parameters must be an object");
  }
  if (j.contains("fixed_days")) {
    if (!j["fixed_days"].is_number_integer()) {
      return absl::InvalidArgumentError("'fixed_days' must be an integer");
    }
    return OffsetSource{FixedOffset{j["fixed_days"].get<int>()}};
  }
  SeededOffset seeded;
  seeded.seed = seed;
  seeded.max_abs_days = j.value("max_abs_days", kDefaultMaxOffsetDays);
  if (seeded.max_abs_days < 1) {
    return absl::InvalidArgumentError(internal::StrCat(
        "'max_abs_days' must be positive, got ", seeded.max_abs_days));
  }
  if (j.contains("subject")) {
    if (!j["subject"].is_string()) {
      return absl::InvalidArgumentError("'subject' must name an attribute");
    }
    seeded.subject_attribute = j["subject"].get<std::string>();
  }
  return OffsetSource{seeded};
}

}  // namespace sdc
