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

#include "sdc/risk_report.h"

#include <algorithm>
#include <numeric>

#include "sdc/internal/str.h"

namespace sdc {
namespace {

std::vector<std::string> PresentNames(const Schema& schema,
                                      std::span<const std::string> names) {
  std::vector<std::string> out;
  for (const auto& n : names) {
    if (schema.IndexOf(n)) out.push_back(n);
  }
  return out;
}

absl::StatusOr<RiskReport> EvaluatePartition(const Dataset& dataset,
                                             const EquivalencePartition& p,
                                             const ReleasePolicy& policy,
                                             int tau) {
  if (auto s = ValidateThresholds(policy.thresholds); !s.ok()) return s;
  if (p.empty()) {
    return absl::FailedPreconditionError("dataset has no records to assess");
  }
  RiskReport r;
  r.quasi_set = p.quasi_set();
  r.record_count = p.total();
  r.class_count = p.class_count();
  r.policy_name = policy.thresholds.name;
  auto metrics = ComputeRiskMetrics(p, tau);
  if (!metrics.ok()) return metrics.status();
  r.metrics = *metrics;
  r.k_anonymity = CheckKAnonymity(p, policy.k());
  r.passed = r.k_anonymity.passed;
  if (policy.require_strict_average) {
    auto strict = CheckStrictAverage(p);
    if (!strict.ok()) return strict.status();
    r.strict_average = *strict;
    r.passed &= strict->passed;
  }
  for (const auto& req : policy.l_diversity) {
    NamedCheck check;
    check.sensitive = req.sensitive;
    if (!dataset.schema().IndexOf(req.sensitive)) {
      check.note = "attribute not in the release";
    } else {
      auto d = CheckLDiversity(p, dataset, req.sensitive, req.l);
      if (!d.ok()) return d.status();
      check.passed = d->passed;
      check.diversity = *std::move(d);
    }
    r.passed &= check.passed;
    r.l_diversity.push_back(std::move(check));
  }
  for (const auto& req : policy.t_closeness) {
    NamedCheck check;
    check.sensitive = req.sensitive;
    if (!dataset.schema().IndexOf(req.sensitive)) {
      check.note = "attribute not in the release";
    } else {
      auto c = CheckTCloseness(p, dataset, req.sensitive, req.t, req.distance,
                               {req.significance_level});
      if (!c.ok()) return c.status();
      check.passed = c->passed;
      check.closeness = *std::move(c);
    }
    r.passed &= check.passed;
    r.t_closeness.push_back(std::move(check));
  }
  return r;
}

nlohmann::json NamedCheckToJson(const NamedCheck& c) {
  nlohmann::json j = {{"sensitive", c.sensitive}, {"passed", c.passed}};
  if (c.diversity) j["detail"] = DiversityReportToJson(*c.diversity);
  if (c.closeness) j["detail"] = ClosenessReportToJson(*c.closeness);
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

}  // namespace

absl::StatusOr<ReleasePolicy> ReleasePolicyFromJson(const nlohmann::json& j) {
  ReleasePolicy p;
  auto thresholds = PolicyThresholdsFromJson(j);
  if (!thresholds.ok()) return thresholds.status();
  p.thresholds = *thresholds;
  if (!j.is_object()) return p;
  try {
    if (j.contains("k")) p.thresholds.min_class_size = j["k"].get<int>();
    p.require_strict_average = j.value("strict_average", false);
    if (j.contains("l_diversity")) {
      for (const auto& e : j["l_diversity"]) {
        p.l_diversity.push_back(
            {e.at("sensitive").get<std::string>(), e.value("l", 2)});
      }
    }
    if (j.contains("t_closeness")) {
      for (const auto& e : j["t_closeness"]) {
        TClosenessRequirement t;
        t.sensitive = e.at("sensitive").get<std::string>();
        t.t = e.value("t", t.t);
        if (e.contains("distance")) {
          auto kind = ParseDistanceKind(e["distance"].get<std::string>());
          if (!kind.ok()) return kind.status();
          t.distance = *kind;
        }
        t.significance_level = e.value("significance_level", 0.05);
        p.t_closeness.push_back(std::move(t));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        internal::StrCat("malformed policy: ", e.what()));
  }
  if (auto s = ValidateThresholds(p.thresholds); !s.ok()) return s;
  return p;
}

nlohmann::json ReleasePolicyToJson(const ReleasePolicy& p) {
  nlohmann::json j = PolicyThresholdsToJson(p.thresholds);
  j["k"] = p.k();
  j["strict_average"] = p.require_strict_average;
  nlohmann::json l = nlohmann::json::array();
  for (const auto& r : p.l_diversity) {
    l.push_back({{"sensitive", r.sensitive}, {"l", r.l}});
  }
  nlohmann::json t = nlohmann::json::array();
  for (const auto& r : p.t_closeness) {
    t.push_back({{"sensitive", r.sensitive},
                 {"t", r.t},
                 {"distance", std::string(DistanceKindName(r.distance))},
                 {"significance_level", r.significance_level}});
  }
  j["l_diversity"] = l;
  j["t_closeness"] = t;
  return j;
}

absl::StatusOr<RiskReport> Evaluate(const Dataset& dataset,
                                    std::span<const std::string> quasi_set,
                                    const ReleasePolicy& policy, int tau) {
  auto p = Partition(dataset, quasi_set);
  if (!p.ok()) return p.status();
  return EvaluatePartition(dataset, *p, policy, tau);
}

absl::StatusOr<EquivalencePartition> PartitionDeclared(
    const Dataset& dataset, std::span<const std::string> declared_quasi_set) {
  const auto present = PresentNames(dataset.schema(), declared_quasi_set);
  if (!present.empty()) return Partition(dataset, present);
  std::vector<EquivalenceClass> classes;
  if (dataset.record_count() > 0) {
    EquivalenceClass all;
    all.rows.resize(dataset.record_count());
    std::iota(all.rows.begin(), all.rows.end(), size_t{0});
    classes.push_back(std::move(all));
  }
  return EquivalencePartition({}, std::move(classes), dataset.record_count());
}

absl::StatusOr<RiskReport> EvaluateDeclared(
    const Dataset& dataset, std::span<const std::string> declared_quasi_set,
    const ReleasePolicy& policy, int tau) {
  auto p = PartitionDeclared(dataset, declared_quasi_set);
  if (!p.ok()) return p.status();
  return EvaluatePartition(dataset, *p, policy, tau);
}

std::map<size_t, size_t> ClassSizeHistogram(
    const EquivalencePartition& partition) {
  std::map<size_t, size_t> out;
  for (size_t s : partition.sizes()) ++out[s];
  return out;
}

nlohmann::json RiskReportToJson(const RiskReport& r) {
  nlohmann::json violators = nlohmann::json::array();
  for (const auto& v : r.k_anonymity.violators) {
    violators.push_back(FormatSignature(v));
  }
  nlohmann::json checks = {
      {"k_anonymity",
       {{"k", r.k_anonymity.k},
        {"passed", r.k_anonymity.passed},
        {"min_class_size", r.k_anonymity.min_class_size},
        {"violators", violators}}}};
  if (r.strict_average) {
    checks["strict_average"] = {
        {"passed", r.strict_average->passed},
        {"min_class_size", r.strict_average->min_class_size},
        {"average_class_size", r.strict_average->average_class_size}};
  }
  if (!r.l_diversity.empty()) {
    nlohmann::json l = nlohmann::json::array();
    for (const auto& c : r.l_diversity) l.push_back(NamedCheckToJson(c));
    checks["l_diversity"] = l;
  }
  if (!r.t_closeness.empty()) {
    nlohmann::json t = nlohmann::json::array();
    for (const auto& c : r.t_closeness) t.push_back(NamedCheckToJson(c));
    checks["t_closeness"] = t;
  }
  return {{"quasi_set", r.quasi_set},
          {"record_count", r.record_count},
          {"class_count", r.class_count},
          {"metrics", RiskMetricsToJson(r.metrics)},
          {"checks", checks},
          {"policy", r.policy_name},
          {"passed", r.passed}};
}

UtilityProxies UtilityScore(const Dataset& current, const Dataset& original,
                            std::span<const std::string> quasi_set) {
  UtilityProxies u;
  const auto declared = PresentNames(original.schema(), quasi_set);
  if (!declared.empty()) {
    size_t retained = 0;
    double granularity = 0.0;
    for (const auto& name : declared) {
      const AttributeSchema* a = current.schema().Find(name);
      if (a == nullptr) continue;
      ++retained;
      granularity += 1.0 - std::clamp(a->generalization_height, 0.0, 1.0);
    }
    const auto n = static_cast<double>(declared.size());
    u.attribute_retention = static_cast<double>(retained) / n;
    u.granularity = granularity / n;
  }
  if (original.record_count() > 0) {
    u.record_retention = static_cast<double>(current.record_count()) /
                         static_cast<double>(original.record_count());
  }
  return u;
}

nlohmann::json UtilityToJson(const UtilityProxies& u) {
  return {{"attribute_retention", u.attribute_retention},
          {"granularity", u.granularity},
          {"record_retention", u.record_retention},
          {"mean", u.mean()}};
}

}  // namespace sdc
