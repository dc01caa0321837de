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

#ifndef SDC_RISK_METRICS_H_
#define SDC_RISK_METRICS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sdc/partition.h"

namespace sdc {

inline constexpr int kDefaultTau = 5;
inline constexpr size_t kStrictAverageMinClassSize = 3;
inline constexpr double kStrictAverageMinAverageSize = 10.0;

// Exact ratio as reported, e.g. 8/242. Not reduced.
struct Ratio {
  int64_t numerator = 0;
  int64_t denominator = 1;

  double value() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  std::string ToString() const;
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

// The three equivalence-class risk metrics.
//
//   small_class_fraction = sum(f_i * [f_i < tau]) / J
//   inverse_average      = n / J         (reciprocal of the mean class size)
//   inverse_min          = 1 / min(f_i)
//
// The first metric divides by the record count J; published worked values
// (e.g. 28/242) use J even where the formula is sometimes printed over n.
struct RiskMetrics {
  Ratio small_class_fraction;
  Ratio inverse_average;
  Ratio inverse_min;
  int tau = kDefaultTau;

  // J / n.
  double average_class_size() const {
    return static_cast<double>(inverse_average.denominator) /
           static_cast<double>(inverse_average.numerator);
  }
};

// Fails on an empty partition or tau < 1.
absl::StatusOr<RiskMetrics> ComputeRiskMetrics(
    const EquivalencePartition& partition, int tau = kDefaultTau);

struct KAnonymityResult {
  int k = 1;
  bool passed = true;
  size_t min_class_size = 0;
  std::vector<Signature> violators;
};

// Passes iff every class has at least k members. k < 1 is treated as 1.
KAnonymityResult CheckKAnonymity(const EquivalencePartition& partition, int k);

struct StrictAverageResult {
  bool passed = false;
  size_t min_class_size = 0;
  double average_class_size = 0.0;
};

// No class below 3 and an average class size of at least 10.
absl::StatusOr<StrictAverageResult> CheckStrictAverage(
    const EquivalencePartition& partition);

nlohmann::json RatioToJson(const Ratio& r);
nlohmann::json RiskMetricsToJson(const RiskMetrics& m);

}  // namespace sdc

#endif  // SDC_RISK_METRICS_H_
