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

#ifndef SDC_RISK_REPORT_H_
#define SDC_RISK_REPORT_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sdc/attack_model.h"
#include "sdc/dataset.h"
#include "sdc/diversity.h"
#include "sdc/partition.h"
#include "sdc/risk_metrics.h"

namespace sdc {

struct LDiversityRequirement {
  std::string sensitive;
  int l = 2;
};

struct TClosenessRequirement {
  std::string sensitive;
  double t = 0.2;
  DistanceKind distance = DistanceKind::kTotalVariation;
  double significance_level = 0.05;
};

// What a release must satisfy. k-anonymity at thresholds.min_class_size is
// always checked; the rest are opt-in.
struct ReleasePolicy {
  PolicyThresholds thresholds = OpenReleasePreset();
  bool require_strict_average = false;
  std::vector<LDiversityRequirement> l_diversity;
  std::vector<TClosenessRequirement> t_closeness;

  int k() const { return thresholds.min_class_size; }
};

// Accepts a preset name or {"preset"?, thresholds fields..., "k"?,
// "strict_average"?, "l_diversity"?: [...], "t_closeness"?: [...]}.
absl::StatusOr<ReleasePolicy> ReleasePolicyFromJson(const nlohmann::json& j);
nlohmann::json ReleasePolicyToJson(const ReleasePolicy& p);

// A sensitive attribute no longer in the release passes with a note.
struct NamedCheck {
  std::string sensitive;
  bool passed = true;
  std::optional<DiversityReport> diversity;
  std::optional<ClosenessReport> closeness;
  std::string note;
};

struct RiskReport {
  // The quasi-identifiers actually present; removed ones are dropped.
  std::vector<std::string> quasi_set;
  size_t record_count = 0;
  size_t class_count = 0;
  RiskMetrics metrics;
  KAnonymityResult k_anonymity;
  std::optional<StrictAverageResult> strict_average;
  std::vector<NamedCheck> l_diversity;
  std::vector<NamedCheck> t_closeness;
  std::string policy_name;
  bool passed = false;
};

// Errors on an empty or unknown quasi-identifier set.
absl::StatusOr<RiskReport> Evaluate(const Dataset& dataset,
                                    std::span<const std::string> quasi_set,
                                    const ReleasePolicy& policy,
                                    int tau = kDefaultTau);

// As Evaluate, for a quasi-identifier set declared on an earlier version of
// the data: names no longer in the schema are skipped, and when none remain
// every record falls into a single class.
absl::StatusOr<RiskReport> EvaluateDeclared(
    const Dataset& dataset, std::span<const std::string> declared_quasi_set,
    const ReleasePolicy& policy, int tau = kDefaultTau);

// Partition over the declared names still present (one class if none are).
absl::StatusOr<EquivalencePartition> PartitionDeclared(
    const Dataset& dataset, std::span<const std::string> declared_quasi_set);

// Class size -> number of classes of that size.
std::map<size_t, size_t> ClassSizeHistogram(
    const EquivalencePartition& partition);

nlohmann::json RiskReportToJson(const RiskReport& report);

// Proxies in [0, 1]; all 1 for an untouched dataset.
struct UtilityProxies {
  double attribute_retention = 1.0;
  double granularity = 1.0;
  double record_retention = 1.0;

  double mean() const {
    return (attribute_retention + granularity + record_retention) / 3.0;
  }
};

// `quasi_set` is declared on `original`. Removed quasi-identifiers count as
// fully generalized.
UtilityProxies UtilityScore(const Dataset& current, const Dataset& original,
                            std::span<const std::string> quasi_set);

nlohmann::json UtilityToJson(const UtilityProxies& u);

}  // namespace sdc

#endif  // SDC_RISK_REPORT_H_
