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

#include "sdc/bands.h"

#include "sdc/internal/str.h"

namespace sdc {

size_t BandSpec::band_count() const {
  if (cuts.empty()) return 0;
  return cuts.size() - 1 + (open_top ? 1 : 0);
}

absl::Status BandSpec::Validate() const {
  if (cuts.empty() || (cuts.size() < 2 && !open_top)) {
    return absl::InvalidArgumentError(
        "band spec needs at least two cuts, or one cut with an open top band");
  }
  for (size_t i = 1; i < cuts.size(); ++i) {
    if (cuts[i] <= cuts[i - 1]) {
      return absl::InvalidArgumentError(internal::StrCat(
          "band cut points must be strictly increasing (", cuts[i - 1],
          " then ", cuts[i], ")"));
    }
  }
  if (!labels.empty() && labels.size() != band_count()) {
    return absl::InvalidArgumentError(
        internal::StrCat("band spec has ", band_count(), " bands but ",
                         labels.size(), " labels"));
  }
  for (const auto& l : labels) {
    if (l.empty()) return absl::InvalidArgumentError("empty band label");
  }
  return absl::OkStatus();
}

std::vector<std::string> BandSpec::Labels() const {
  if (!labels.empty()) return labels;
  std::vector<std::string> out;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const int64_t hi =
        style == BandLabelStyle::kInclusive ? cuts[i + 1] - 1 : cuts[i + 1];
    out.push_back(internal::StrCat(cuts[i], "-", hi));
  }
  if (open_top && !cuts.empty()) {
    out.push_back(internal::StrCat(">=", cuts.back()));
  }
  return out;
}

absl::StatusOr<std::string> BandSpec::LabelFor(int64_t value) const {
  if (auto s = Validate(); !s.ok()) return s;
  if (value < cuts.front() || (!open_top && value >= cuts.back())) {
    return absl::OutOfRangeError(
        internal::StrCat("value ", value, " lies outside the bands [",
                         cuts.front(), ", ",
                         open_top ? std::string("inf")
                                  : internal::StrCat(cuts.back()),
                         ")"));
  }
  size_t band = cuts.size() - 1;  // open top
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (value < cuts[i + 1]) {
      band = i;
      break;
    }
  }
  return Labels()[band];
}

nlohmann::json BandSpecToJson(const BandSpec& spec) {
  nlohmann::json j = {
      {"cuts", spec.cuts},
      {"open_top", spec.open_top},
      {"style",
       spec.style == BandLabelStyle::kInclusive ? "inclusive" : "boundary"}};
  if (!spec.labels.empty()) j["labels"] = spec.labels;
  return j;
}

absl::StatusOr<BandSpec> BandSpecFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("cuts") || !j["cuts"].is_array()) {
    return absl::InvalidArgumentError("band spec needs a 'cuts' array");
  }
  BandSpec spec;
  for (const auto& c : j["cuts"]) {
    if (!c.is_number_integer()) {
      return absl::InvalidArgumentError("band cuts must be integers");
    }
    spec.cuts.push_back(c.get<int64_t>());
  }
  spec.open_top = j.value("open_top", false);
  const std::string style = j.value("style", "inclusive");
  if (style == "inclusive") {
    spec.style = BandLabelStyle::kInclusive;
  } else if (style == "boundary") {
    spec.style = BandLabelStyle::kBoundary;
  } else {
    return absl::InvalidArgumentError(
        internal::StrCat("unknown band label style '", style, "'"));
  }
  if (j.contains("labels")) {
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) {
        return absl::InvalidArgumentError("band labels must be strings");
      }
      spec.labels.push_back(l.get<std::string>());
    }
  }
  if (auto s = spec.Validate(); !s.ok()) return s;
  return spec;
}

}  // namespace sdc
