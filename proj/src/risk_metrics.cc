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

#include "sdc/risk_metrics.h"

#include <cmath>

#include "absl/status/status.h"
#include "sdc/internal/str.h"

namespace sdc {

std::string Ratio::ToString() const {
  return internal::StrCat(numerator, "/", denominator);
}

absl::StatusOr<RiskMetrics> ComputeRiskMetrics(
    const EquivalencePartition& partition, int tau) {
  if (partition.empty()) {
    return absl::InvalidArgumentError(
        "risk metrics are undefined for an empty partition");
  }
  if (tau < 1) {
    return absl::InvalidArgumentError(
        internal::StrCat("tau must be positive, got ", tau));
  }
  const auto total = static_cast<int64_t>(partition.total());
  int64_t in_small = 0;
  for (const auto& c : partition.classes()) {
    if (c.size() < static_cast<size_t>(tau)) {
      in_small += static_cast<int64_t>(c.size());
    }
  }
  RiskMetrics m;
  m.tau = tau;
  m.small_class_fraction = {in_small, total};
  m.inverse_average = {static_cast<int64_t>(partition.class_count()), total};
  m.inverse_min = {1, static_cast<int64_t>(partition.min_size())};
  return m;
}

KAnonymityResult CheckKAnonymity(const EquivalencePartition& partition,
                                 int k) {
  KAnonymityResult result;
  result.k = k < 1 ? 1 : k;
  result.min_class_size = partition.min_size();
  for (const auto& c : partition.classes()) {
    if (c.size() < static_cast<size_t>(result.k)) {
      result.violators.push_back(c.signature);
    }
  }
  result.passed = result.violators.empty();
  return result;
}

absl::StatusOr<StrictAverageResult> CheckStrictAverage(
    const EquivalencePartition& partition) {
  if (partition.empty()) {
    return absl::InvalidArgumentError(
        "strict average is undefined for an empty partition");
  }
  StrictAverageResult r;
  r.min_class_size = partition.min_size();
  r.average_class_size = static_cast<double>(partition.total()) /
                         static_cast<double>(partition.class_count());
  r.passed = r.min_class_size >= kStrictAverageMinClassSize &&
             r.average_class_size >= kStrictAverageMinAverageSize;
  return r;
}

nlohmann::json RatioToJson(const Ratio& r) {
  return {{"numerator", r.numerator},
          {"denominator", r.denominator},
          {"ratio", r.ToString()},
          {"value", r.value()},
          {"rounded", std::round(r.value() * 1000.0) / 1000.0}};
}

nlohmann::json RiskMetricsToJson(const RiskMetrics& m) {
  return {{"small_class_fraction", RatioToJson(m.small_class_fraction)},
          {"inverse_average", RatioToJson(m.inverse_average)},
          {"inverse_min", RatioToJson(m.inverse_min)},
          {"tau", m.tau}};
}

}  // namespace sdc
