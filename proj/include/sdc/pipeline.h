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

#ifndef SDC_PIPELINE_H_
#define SDC_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sdc/dataset.h"
#include "sdc/risk_report.h"
#include "sdc/transform_step.h"

namespace sdc {

struct AnonymizationPlan {
  std::vector<std::string> quasi_set;
  ReleasePolicy policy;
  int tau = kDefaultTau;
  std::vector<TransformStep> steps;
};

// {"quasi_set", "policy"?, "tau"?, "steps": [...]}
absl::StatusOr<AnonymizationPlan> PlanFromJson(const nlohmann::json& j);
nlohmann::json PlanToJson(const AnonymizationPlan& plan);

// Checks the quasi set and every step against the schema as it stands at
// that step. Errors name the failing step index.
absl::Status ValidatePlan(const AnonymizationPlan& plan, const Schema& schema);

// Checks a step against the schema without running it on data.
absl::Status ValidateStepOn(const Schema& schema, const TransformStep& step);

struct LedgerEntry {
  size_t index = 0;
  TransformStep step;
  std::string description;
  std::optional<RiskReport> before;
  std::optional<RiskReport> after;
  UtilityProxies utility_before;
  UtilityProxies utility_after;
  size_t removed_records = 0;
  uint64_t fingerprint_after = 0;
  std::string timestamp;  // UTC, ISO 8601
  bool committed = false;
  std::string error;
};

// Append-only record of applied steps.
class AuditLedger {
 public:
  void Append(LedgerEntry entry);
  const std::vector<LedgerEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  size_t committed_count() const;

 private:
  std::vector<LedgerEntry> entries_;
};

// Timestamps are left out when `with_timestamps` is false so two runs can be
// compared byte for byte.
nlohmann::json LedgerToJson(const AuditLedger& ledger,
                            bool with_timestamps = true);
nlohmann::json LedgerEntryToJson(const LedgerEntry& entry,
                                 bool with_timestamps = true);
// Restores steps, fingerprints and status; the embedded reports are not
// parsed back.
absl::StatusOr<AuditLedger> LedgerFromJson(const nlohmann::json& j);

// Human-readable summary of a ledger in its JSON form, one block per entry.
std::string FormatLedgerReport(const nlohmann::json& ledger);

struct PlanOutcome {
  Dataset dataset;
  AuditLedger ledger;
  absl::Status status;
  std::optional<size_t> failed_step;
};

// Applies the plan in order. A failing step stops the run; the ledger records
// the failure and `dataset` is the last good state.
PlanOutcome ApplyPlan(const Dataset& original, const AnonymizationPlan& plan);

// Builds the entry for `step` applied to `current`. `original` anchors the
// utility proxies.
absl::StatusOr<std::pair<Dataset, LedgerEntry>> RunStep(
    const Dataset& original, const Dataset& current, const TransformStep& step,
    std::span<const std::string> quasi_set, const ReleasePolicy& policy,
    int tau, size_t index);

// Re-applies committed entries to `original` and checks each result against
// the recorded fingerprint.
absl::StatusOr<Dataset> ReplayLedger(const Dataset& original,
                                     const AuditLedger& ledger);

struct MetricDeltas {
  double small_class_fraction = 0.0;
  double inverse_average = 0.0;
  double inverse_min = 0.0;
  double attribute_retention = 0.0;
  double granularity = 0.0;
  double record_retention = 0.0;
};

struct WhatIfResult {
  RiskReport before;
  RiskReport after;
  UtilityProxies utility_before;
  UtilityProxies utility_after;
  MetricDeltas deltas;
  size_t removed_records = 0;
};

// Evaluates `candidate` on `current` without committing anything.
absl::StatusOr<WhatIfResult> WhatIf(const Dataset& original,
                                    const Dataset& current,
                                    const TransformStep& candidate,
                                    std::span<const std::string> quasi_set,
                                    const ReleasePolicy& policy,
                                    int tau = kDefaultTau);

nlohmann::json WhatIfToJson(const WhatIfResult& w);

struct Suggestion {
  size_t candidate_index = 0;
  TransformStep step;
  WhatIfResult result;
};

// Candidates that cannot be applied are left out. Policy-passing candidates
// come first, by mean utility (high first) then inverse_min (low first);
// failing ones follow by inverse_min. Ties keep input order.
std::vector<Suggestion> SuggestNext(const Dataset& original,
                                    const Dataset& current,
                                    std::span<const TransformStep> candidates,
                                    std::span<const std::string> quasi_set,
                                    const ReleasePolicy& policy,
                                    int tau = kDefaultTau);

nlohmann::json SuggestionsToJson(const std::vector<Suggestion>& s);

}  // namespace sdc

#endif  // SDC_PIPELINE_H_
