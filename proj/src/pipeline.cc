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

#include "sdc/pipeline.h"

#include <algorithm>
#include <chrono>
#include <ctime>

#include "fmt/chrono.h"
#include "fmt/format.h"
#include "sdc/internal/str.h"

namespace sdc {
namespace {

std::string NowUtc() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(t));
}

std::string Hex(uint64_t v) { return fmt::format("{:016x}", v); }

absl::Status AtStep(size_t index, const absl::Status& s) {
  return absl::Status(s.code(), internal::StrCat("step ", index, ": ",
                                                 internal::Message(s)));
}

MetricDeltas Deltas(const RiskReport& before, const RiskReport& after,
                    const UtilityProxies& ub, const UtilityProxies& ua) {
  MetricDeltas d;
  d.small_class_fraction = after.metrics.small_class_fraction.value() -
                           before.metrics.small_class_fraction.value();
  d.inverse_average = after.metrics.inverse_average.value() -
                      before.metrics.inverse_average.value();
  d.inverse_min =
      after.metrics.inverse_min.value() - before.metrics.inverse_min.value();
  d.attribute_retention = ua.attribute_retention - ub.attribute_retention;
  d.granularity = ua.granularity - ub.granularity;
  d.record_retention = ua.record_retention - ub.record_retention;
  return d;
}

nlohmann::json EntryToJsonImpl(const LedgerEntry& e, bool with_timestamps) {
  nlohmann::json j = {{"index", e.index},
                      {"step", StepToJson(e.step)},
                      {"description", e.description},
                      {"utility_before", UtilityToJson(e.utility_before)},
                      {"utility_after", UtilityToJson(e.utility_after)},
                      {"removed_records", e.removed_records},
                      {"fingerprint_after", Hex(e.fingerprint_after)},
                      {"committed", e.committed}};
  j["before"] = e.before ? RiskReportToJson(*e.before) : nlohmann::json();
  j["after"] = e.after ? RiskReportToJson(*e.after) : nlohmann::json();
  if (!e.error.empty()) j["error"] = e.error;
  if (with_timestamps) j["timestamp"] = e.timestamp;
  return j;
}

std::string MetricLine(const nlohmann::json& before,
                       const nlohmann::json& after, const char* key) {
  auto ratio = [key](const nlohmann::json& r) -> std::string {
    if (r.is_null()) return "-";
    const auto& m = r["metrics"][key];
    return fmt::format("{:.3f} ({})", m["value"].get<double>(),
                       m["ratio"].get<std::string>());
  };
  return fmt::format("    {:<22} {} -> {}\n", key, ratio(before), ratio(after));
}

}  // namespace

absl::StatusOr<AnonymizationPlan> PlanFromJson(const nlohmann::json& j) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("plan must be a JSON object");
  }
  AnonymizationPlan plan;
  try {
    if (!j.contains("quasi_set")) {
      return absl::InvalidArgumentError("plan needs a 'quasi_set'");
    }
    plan.quasi_set = j["quasi_set"].get<std::vector<std::string>>();
    plan.tau = j.value("tau", kDefaultTau);
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        internal::StrCat("malformed plan: ", e.what()));
  }
  if (j.contains("policy")) {
    auto policy = ReleasePolicyFromJson(j["policy"]);
    if (!policy.ok()) return policy.status();
    plan.policy = *std::move(policy);
  }
  if (j.contains("steps")) {
    if (!j["steps"].is_array()) {
      return absl::InvalidArgumentError("'steps' must be an array");
    }
    for (size_t i = 0; i < j["steps"].size(); ++i) {
      auto step = StepFromJson(j["steps"][i]);
      if (!step.ok()) return AtStep(i, step.status());
      plan.steps.push_back(*std::move(step));
    }
  }
  return plan;
}

nlohmann::json PlanToJson(const AnonymizationPlan& plan) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : plan.steps) steps.push_back(StepToJson(s));
  return {{"quasi_set", plan.quasi_set},
          {"policy", ReleasePolicyToJson(plan.policy)},
          {"tau", plan.tau},
          {"steps", steps}};
}

absl::Status ValidateStepOn(const Schema& schema, const TransformStep& step) {
  if (auto s = CheckStepAgainstSchema(step, schema); !s.ok()) return s;
  // A dry run on zero rows catches what the schema alone cannot, such as a
  // level below the current one.
  auto empty = Dataset::Create(schema, {});
  if (!empty.ok()) return empty.status();
  return ApplyStep(*empty, step).status();
}

absl::Status ValidatePlan(const AnonymizationPlan& plan, const Schema& schema) {
  if (plan.quasi_set.empty()) {
    return absl::InvalidArgumentError("quasi-identifier set is empty");
  }
  for (const auto& q : plan.quasi_set) {
    if (!schema.IndexOf(q)) {
      return absl::NotFoundError(
          internal::StrCat("quasi-identifier '", q, "' is not in the schema"));
    }
  }
  if (plan.tau < 1) {
    return absl::InvalidArgumentError(
        internal::StrCat("tau must be at least 1, got ", plan.tau));
  }
  auto current = Dataset::Create(schema, {});
  if (!current.ok()) return current.status();
  for (size_t i = 0; i < plan.steps.size(); ++i) {
    if (auto s = CheckStepAgainstSchema(plan.steps[i], current->schema());
        !s.ok()) {
      return AtStep(i, s);
    }
    auto next = ApplyStep(*current, plan.steps[i]);
    if (!next.ok()) return AtStep(i, next.status());
    current = std::move(next->dataset);
  }
  return absl::OkStatus();
}

nlohmann::json LedgerEntryToJson(const LedgerEntry& entry,
                                 bool with_timestamps) {
  return EntryToJsonImpl(entry, with_timestamps);
}

void AuditLedger::Append(LedgerEntry entry) {
  entries_.push_back(std::move(entry));
}

size_t AuditLedger::committed_count() const {
  return static_cast<size_t>(
      std::count_if(entries_.begin(), entries_.end(),
                    [](const LedgerEntry& e) { return e.committed; }));
}

nlohmann::json LedgerToJson(const AuditLedger& ledger, bool with_timestamps) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : ledger.entries()) {
    out.push_back(EntryToJsonImpl(e, with_timestamps));
  }
  return out;
}

absl::StatusOr<AuditLedger> LedgerFromJson(const nlohmann::json& j) {
  if (!j.is_array()) {
    return absl::InvalidArgumentError("ledger must be a JSON array");
  }
  AuditLedger ledger;
  for (size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    if (!e.is_object() || !e.contains("step")) {
      return absl::InvalidArgumentError(
          internal::StrCat("ledger entry ", i, " has no step"));
    }
    auto step = StepFromJson(e["step"]);
    if (!step.ok()) return AtStep(i, step.status());
    LedgerEntry entry;
    entry.index = i;
    entry.step = *std::move(step);
    try {
      entry.description = e.value("description", DescribeStep(entry.step));
      entry.removed_records = e.value("removed_records", size_t{0});
      entry.committed = e.value("committed", false);
      entry.timestamp = e.value("timestamp", std::string());
      entry.error = e.value("error", std::string());
      const std::string fp = e.value("fingerprint_after", std::string("0"));
      entry.fingerprint_after = std::stoull(fp, nullptr, 16);
    } catch (const std::exception& ex) {
      return absl::InvalidArgumentError(
          internal::StrCat("ledger entry ", i, ": ", ex.what()));
    }
    ledger.Append(std::move(entry));
  }
  return ledger;
}

std::string FormatLedgerReport(const nlohmann::json& ledger) {
  std::string out;
  if (!ledger.is_array() || ledger.empty()) return "empty ledger\n";
  for (const auto& e : ledger) {
    out += fmt::format("Step {}: {}{}\n", e.value("index", 0),
                       e.value("description", std::string("?")),
                       e.value("committed", false) ? "" : " [not committed]");
    if (e.contains("error")) {
      out += fmt::format("    error: {}\n", e["error"].get<std::string>());
      continue;
    }
    const auto& before = e.contains("before") ? e["before"] : nlohmann::json();
    const auto& after = e.contains("after") ? e["after"] : nlohmann::json();
    if (!after.is_null()) {
      const auto classes = [](const nlohmann::json& r) {
        return r.is_null() ? std::string("-")
                           : std::to_string(r["class_count"].get<size_t>());
      };
      out += fmt::format("    {:<22} {} -> {}\n", "classes", classes(before),
                         classes(after));
      out += MetricLine(before, after, "small_class_fraction");
      out += MetricLine(before, after, "inverse_average");
      out += MetricLine(before, after, "inverse_min");
      out += fmt::format("    {:<22} {}\n", "policy",
                         after["passed"].get<bool>() ? "pass" : "fail");
    }
    if (e.contains("utility_after")) {
      const auto& u = e["utility_after"];
      out += fmt::format(
          "    {:<22} attributes {:.3f}, granularity {:.3f}, records {:.3f}\n",
          "utility", u["attribute_retention"].get<double>(),
          u["granularity"].get<double>(), u["record_retention"].get<double>());
    }
    if (e.value("removed_records", 0) > 0) {
      out += fmt::format("    {:<22} {}\n", "records removed",
                         e["removed_records"].get<size_t>());
    }
  }
  return out;
}

absl::StatusOr<std::pair<Dataset, LedgerEntry>> RunStep(
    const Dataset& original, const Dataset& current, const TransformStep& step,
    std::span<const std::string> quasi_set, const ReleasePolicy& policy,
    int tau, size_t index) {
  if (auto s = CheckStepAgainstSchema(step, current.schema()); !s.ok()) {
    return AtStep(index, s);
  }
  auto before = EvaluateDeclared(current, quasi_set, policy, tau);
  if (!before.ok()) return AtStep(index, before.status());
  auto applied = ApplyStep(current, step);
  if (!applied.ok()) return AtStep(index, applied.status());
  auto after = EvaluateDeclared(applied->dataset, quasi_set, policy, tau);
  if (!after.ok()) return AtStep(index, after.status());

  LedgerEntry entry;
  entry.index = index;
  entry.step = step;
  entry.description = DescribeStep(step);
  entry.before = *std::move(before);
  entry.after = *std::move(after);
  entry.utility_before = UtilityScore(current, original, quasi_set);
  entry.utility_after = UtilityScore(applied->dataset, original, quasi_set);
  entry.removed_records = applied->removed_records;
  entry.fingerprint_after = Fingerprint(applied->dataset);
  entry.timestamp = NowUtc();
  entry.committed = true;
  return std::make_pair(std::move(applied->dataset), std::move(entry));
}

PlanOutcome ApplyPlan(const Dataset& original, const AnonymizationPlan& plan) {
  PlanOutcome out{original, AuditLedger(), absl::OkStatus(), std::nullopt};
  if (auto s = ValidatePlan(plan, original.schema()); !s.ok()) {
    out.status = s;
    return out;
  }
  for (size_t i = 0; i < plan.steps.size(); ++i) {
    auto r = RunStep(original, out.dataset, plan.steps[i], plan.quasi_set,
                     plan.policy, plan.tau, i);
    if (!r.ok()) {
      LedgerEntry failed;
      failed.index = i;
      failed.step = plan.steps[i];
      failed.description = DescribeStep(plan.steps[i]);
      failed.timestamp = NowUtc();
      failed.error = internal::Message(r.status());
      out.ledger.Append(std::move(failed));
      out.status = r.status();
      out.failed_step = i;
      return out;
    }
    out.dataset = std::move(r->first);
    out.ledger.Append(std::move(r->second));
  }
  return out;
}

absl::StatusOr<Dataset> ReplayLedger(const Dataset& original,
                                     const AuditLedger& ledger) {
  Dataset current = original;
  for (const auto& e : ledger.entries()) {
    if (!e.committed) continue;
    auto next = ApplyStep(current, e.step);
    if (!next.ok()) return AtStep(e.index, next.status());
    if (Fingerprint(next->dataset) != e.fingerprint_after) {
      return absl::DataLossError(internal::StrCat(
          "step ", e.index, ": replay produced fingerprint ",
          Hex(Fingerprint(next->dataset)), ", ledger recorded ",
          Hex(e.fingerprint_after)));
    }
    current = std::move(next->dataset);
  }
  return current;
}

absl::StatusOr<WhatIfResult> WhatIf(const Dataset& original,
                                    const Dataset& current,
                                    const TransformStep& candidate,
                                    std::span<const std::string> quasi_set,
                                    const ReleasePolicy& policy, int tau) {
  auto r = RunStep(original, current, candidate, quasi_set, policy, tau, 0);
  if (!r.ok()) {
    return absl::Status(r.status().code(),
                        internal::StrCat("candidate rejected: ",
                                         internal::Message(r.status())));
  }
  LedgerEntry& e = r->second;
  WhatIfResult w{*e.before, *e.after, e.utility_before, e.utility_after, {},
                 e.removed_records};
  w.deltas = Deltas(w.before, w.after, w.utility_before, w.utility_after);
  return w;
}

nlohmann::json WhatIfToJson(const WhatIfResult& w) {
  return {{"before", RiskReportToJson(w.before)},
          {"after", RiskReportToJson(w.after)},
          {"utility_before", UtilityToJson(w.utility_before)},
          {"utility_after", UtilityToJson(w.utility_after)},
          {"removed_records", w.removed_records},
          {"deltas",
           {{"small_class_fraction", w.deltas.small_class_fraction},
            {"inverse_average", w.deltas.inverse_average},
            {"inverse_min", w.deltas.inverse_min},
            {"attribute_retention", w.deltas.attribute_retention},
            {"granularity", w.deltas.granularity},
            {"record_retention", w.deltas.record_retention}}}};
}

std::vector<Suggestion> SuggestNext(const Dataset& original,
                                    const Dataset& current,
                                    std::span<const TransformStep> candidates,
                                    std::span<const std::string> quasi_set,
                                    const ReleasePolicy& policy, int tau) {
  std::vector<Suggestion> out;
  for (size_t i = 0; i < candidates.size(); ++i) {
    auto w = WhatIf(original, current, candidates[i], quasi_set, policy, tau);
    if (!w.ok()) continue;
    out.push_back({i, candidates[i], *std::move(w)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Suggestion& a, const Suggestion& b) {
                     const bool pa = a.result.after.passed;
                     const bool pb = b.result.after.passed;
                     if (pa != pb) return pa;
                     if (pa) {
                       const double ua = a.result.utility_after.mean();
                       const double ub = b.result.utility_after.mean();
                       if (ua != ub) return ua > ub;
                     }
                     return a.result.after.metrics.inverse_min.value() <
                            b.result.after.metrics.inverse_min.value();
                   });
  return out;
}

nlohmann::json SuggestionsToJson(const std::vector<Suggestion>& s) {
  nlohmann::json out = nlohmann::json::array();
  for (size_t rank = 0; rank < s.size(); ++rank) {
    out.push_back({{"rank", rank + 1},
                   {"candidate_index", s[rank].candidate_index},
                   {"step", StepToJson(s[rank].step)},
                   {"description", DescribeStep(s[rank].step)},
                   {"passes_policy", s[rank].result.after.passed},
                   {"result", WhatIfToJson(s[rank].result)}});
  }
  return out;
}

}  // namespace sdc
