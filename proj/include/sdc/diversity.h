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

#ifndef SDC_DIVERSITY_H_
#define SDC_DIVERSITY_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sdc/dataset.h"
#include "sdc/partition.h"

namespace sdc {

// Distinct l-diversity: each class needs at least l distinct non-missing
// sensitive values.
struct DiversityReport {
  std::string sensitive;
  int l = 1;
  std::vector<Signature> failing_classes;
  bool passed = true;
};

absl::StatusOr<DiversityReport> CheckLDiversity(
    const EquivalencePartition& partition, const Dataset& dataset,
    std::string_view sensitive, int l);

enum class DistanceKind { kTotalVariation, kOrderedEarthMover, kChiSquaredTest };

std::string_view DistanceKindName(DistanceKind kind);
absl::StatusOr<DistanceKind> ParseDistanceKind(std::string_view name);

struct ClosenessOptions {
  double significance_level = 0.05;
};

struct ClassDistance {
  Signature signature;
  // A distance in [0, 1], or a p-value for kChiSquaredTest.
  double value = 0.0;
};

struct ClosenessReport {
  std::string sensitive;
  double t = 0.0;
  DistanceKind distance_kind = DistanceKind::kTotalVariation;
  double significance_level = 0.05;
  std::vector<ClassDistance> per_class_distance;
  std::vector<Signature> failing_classes;
  bool passed = true;
};

// Compares each class's sensitive-value distribution with the distribution
// over the whole dataset (missing values excluded).
//
//  - kTotalVariation: half the L1 distance; categorical attributes.
//  - kOrderedEarthMover: earth mover's distance over rank positions,
//    normalized by (m - 1); integer attributes, or categorical attributes with
//    an enumerated domain (the declared order is the rank order).
//  - kChiSquaredTest: Pearson test of the class against all other classes;
//    the reported value is the p-value and a class fails when it falls below
//    `options.significance_level`. `t` is unused.
absl::StatusOr<ClosenessReport> CheckTCloseness(
    const EquivalencePartition& partition, const Dataset& dataset,
    std::string_view sensitive, double t, DistanceKind kind,
    ClosenessOptions options = {});

nlohmann::json DiversityReportToJson(const DiversityReport& report);
nlohmann::json ClosenessReportToJson(const ClosenessReport& report);

}  // namespace sdc

#endif  // SDC_DIVERSITY_H_
