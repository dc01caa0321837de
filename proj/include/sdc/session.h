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

#ifndef SDC_SESSION_H_
#define SDC_SESSION_H_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sdc/dataset.h"
#include "sdc/pipeline.h"
#include "sdc/risk_report.h"

namespace sdc {

// Builds a schema from its JSON document. `schema_doc` is either the
// attribute array or {"attributes": [...], "hierarchies": [...]}; a separate
// hierarchies document, when given, takes precedence.
absl::StatusOr<Schema> SchemaFromDocuments(
    const nlohmann::json& schema_doc,
    const nlohmann::json* hierarchies_doc = nullptr);

// One committed dataset plus the ledger that produced it. Queries and
// what-ifs run concurrently; commits are serialized, and a commit that finds
// another in flight fails with kAborted rather than waiting.
class Session {
 public:
  Session(std::string id, Dataset original, std::vector<std::string> quasi_set,
          ReleasePolicy policy, int tau);

  const std::string& id() const { return id_; }
  const std::vector<std::string>& quasi_set() const { return quasi_set_; }
  const ReleasePolicy& policy() const { return policy_; }
  int tau() const { return tau_; }

  Dataset current() const;
  size_t version() const;

  // `k` overrides the policy's minimum class size for this report only.
  absl::StatusOr<RiskReport> Report(std::optional<int> tau = std::nullopt,
                                    std::optional<int> k = std::nullopt) const;
  absl::StatusOr<std::map<size_t, size_t>> Histogram() const;
  UtilityProxies Utility() const;
  nlohmann::json LedgerJson() const;

  absl::StatusOr<WhatIfResult> WhatIf(const TransformStep& candidate) const;
  std::vector<Suggestion> Suggest(
      std::span<const TransformStep> candidates) const;

  struct CommitResult {
    LedgerEntry entry;
    size_t version = 0;
  };

  // kAborted when another commit is in flight or `expected_version` is stale.
  absl::StatusOr<CommitResult> Commit(
      const TransformStep& step,
      std::optional<size_t> expected_version = std::nullopt);

 private:
  const std::string id_;
  const Dataset original_;
  const std::vector<std::string> quasi_set_;
  const ReleasePolicy policy_;
  const int tau_;

  std::mutex commit_mu_;
  mutable std::shared_mutex mu_;
  Dataset current_;
  AuditLedger ledger_;
  size_t version_ = 0;
};

// Sessions held in memory only; nothing survives a restart.
class SessionStore {
 public:
  absl::StatusOr<std::shared_ptr<Session>> Create(
      Dataset dataset, std::vector<std::string> quasi_set, ReleasePolicy policy,
      int tau);
  std::shared_ptr<Session> Find(const std::string& id) const;
  bool Erase(const std::string& id);
  size_t size() const;

 private:
  std::string NewId();

  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  uint64_t counter_ = 0;
};

}  // namespace sdc

#endif  // SDC_SESSION_H_
