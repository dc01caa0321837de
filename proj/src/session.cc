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

#include "sdc/session.h"

#include <random>

#include "fmt/format.h"
#include "sdc/internal/str.h"

namespace sdc {

absl::StatusOr<Schema> SchemaFromDocuments(
    const nlohmann::json& schema_doc, const nlohmann::json* hierarchies_doc) {
  const nlohmann::json* attributes = &schema_doc;
  const nlohmann::json* hierarchies = hierarchies_doc;
  if (schema_doc.is_object()) {
    if (!schema_doc.contains("attributes")) {
      return absl::InvalidArgumentError(
          "schema object needs an 'attributes' array");
    }
    attributes = &schema_doc["attributes"];
    if (hierarchies == nullptr && schema_doc.contains("hierarchies")) {
      hierarchies = &schema_doc;
    }
  }
  HierarchySet set;
  if (hierarchies != nullptr) {
    auto parsed = ParseHierarchies(*hierarchies);
    if (!parsed.ok()) return parsed.status();
    set = *std::move(parsed);
  }
  return ParseSchema(*attributes, std::move(set));
}

Session::Session(std::string id, Dataset original,
                 std::vector<std::string> quasi_set, ReleasePolicy policy,
                 int tau)
    : id_(std::move(id)),
      original_(original),
      quasi_set_(std::move(quasi_set)),
      policy_(std::move(policy)),
      tau_(tau),
      current_(std::move(original)) {}

Dataset Session::current() const {
  std::shared_lock lock(mu_);
  return current_;
}

size_t Session::version() const {
  std::shared_lock lock(mu_);
  return version_;
}

absl::StatusOr<RiskReport> Session::Report(std::optional<int> tau,
                                           std::optional<int> k) const {
  ReleasePolicy policy = policy_;
  if (k) policy.thresholds.min_class_size = *k;
  return EvaluateDeclared(current(), quasi_set_, policy, tau.value_or(tau_));
}

absl::StatusOr<std::map<size_t, size_t>> Session::Histogram() const {
  auto p = PartitionDeclared(current(), quasi_set_);
  if (!p.ok()) return p.status();
  return ClassSizeHistogram(*p);
}

UtilityProxies Session::Utility() const {
  return UtilityScore(current(), original_, quasi_set_);
}

nlohmann::json Session::LedgerJson() const {
  std::shared_lock lock(mu_);
  return LedgerToJson(ledger_);
}

absl::StatusOr<WhatIfResult> Session::WhatIf(
    const TransformStep& candidate) const {
  return sdc::WhatIf(original_, current(), candidate, quasi_set_, policy_,
                     tau_);
}

std::vector<Suggestion> Session::Suggest(
    std::span<const TransformStep> candidates) const {
  return SuggestNext(original_, current(), candidates, quasi_set_, policy_,
                     tau_);
}

absl::StatusOr<Session::CommitResult> Session::Commit(
    const TransformStep& step, std::optional<size_t> expected_version) {
  std::unique_lock commit(commit_mu_, std::try_to_lock);
  if (!commit.owns_lock()) {
    return absl::AbortedError("another commit to this session is in progress");
  }
  Dataset base = current();
  size_t base_version;
  size_t index;
  {
    std::shared_lock lock(mu_);
    base_version = version_;
    index = ledger_.size();
  }
  if (expected_version && *expected_version != base_version) {
    return absl::AbortedError(internal::StrCat(
        "session is at version ", base_version, ", commit expected ",
        *expected_version));
  }
  // The step runs outside the data lock; commit_mu_ keeps `base` current.
  auto r = RunStep(original_, base, step, quasi_set_, policy_, tau_, index);
  if (!r.ok()) return r.status();
  std::unique_lock lock(mu_);
  current_ = std::move(r->first);
  ledger_.Append(r->second);
  ++version_;
  return CommitResult{std::move(r->second), version_};
}

absl::StatusOr<std::shared_ptr<Session>> SessionStore::Create(
    Dataset dataset, std::vector<std::string> quasi_set, ReleasePolicy policy,
    int tau) {
  AnonymizationPlan probe{quasi_set, policy, tau, {}};
  if (auto s = ValidatePlan(probe, dataset.schema()); !s.ok()) return s;
  if (auto r = Evaluate(dataset, quasi_set, policy, tau); !r.ok()) {
    return r.status();
  }
  std::unique_lock lock(mu_);
  auto session = std::make_shared<Session>(NewId(), std::move(dataset),
                                           std::move(quasi_set),
                                           std::move(policy), tau);
  sessions_.emplace(session->id(), session);
  return session;
}

std::shared_ptr<Session> SessionStore::Find(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

bool SessionStore::Erase(const std::string& id) {
  std::unique_lock lock(mu_);
  return sessions_.erase(id) > 0;
}

size_t SessionStore::size() const {
  std::shared_lock lock(mu_);
  return sessions_.size();
}

// Caller holds mu_ exclusively.
std::string SessionStore::NewId() {
  static thread_local std::random_device device;
  const uint64_t salt =
      (static_cast<uint64_t>(device()) << 32) ^ static_cast<uint64_t>(device());
  return fmt::format("s{:x}-{:012x}", ++counter_, salt & 0xffffffffffffULL);
}

}  // namespace sdc
