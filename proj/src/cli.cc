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

#include "sdc/cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "fmt/format.h"
#include "fmt/ostream.h"
#include "sdc/contingency_table.h"
#include "sdc/internal/str.h"
#include "sdc/narrative.h"
#include "sdc/pipeline.h"
#include "sdc/service.h"
#include "sdc/table_io.h"

namespace sdc {
namespace {

using nlohmann::json;

struct DataFlags {
  std::string data;
  std::string schema;
  std::string hierarchies;
  std::string policy;
  std::string quasi;
  int tau = kDefaultTau;
  bool tau_set = false;
};

void AddDataFlags(CLI::App* cmd, DataFlags& f, bool with_policy) {
  cmd->add_option("--data", f.data, "Delimited data file")->required();
  cmd->add_option("--schema", f.schema, "Schema JSON file")->required();
  cmd->add_option("--hierarchies", f.hierarchies, "Hierarchies JSON file");
  if (with_policy) {
    cmd->add_option("--policy", f.policy,
                    "Preset name, inline JSON or a policy JSON file");
    cmd->add_option("--quasi", f.quasi,
                    "Comma-separated quasi-identifiers (default: schema roles)");
    cmd->add_option("--tau", f.tau, "Small-class threshold")
        ->check(CLI::PositiveNumber)
        ->each([&f](const std::string&) { f.tau_set = true; });
  }
}

// A flag value that names an existing file is replaced by its contents.
absl::StatusOr<std::string> InlineOrFile(const std::string& value) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(value, ec)) return ReadFile(value);
  return value;
}

absl::StatusOr<json> ReadJsonFile(const std::string& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  json j = json::parse(*text, nullptr, false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(
        internal::StrCat(path, " is not valid JSON"));
  }
  return j;
}

absl::StatusOr<ResolvedInputs> LoadInputs(const DataFlags& f) {
  SessionInputs in;
  auto data = ReadFile(f.data);
  if (!data.ok()) return data.status();
  in.data = *std::move(data);
  auto schema = ReadFile(f.schema);
  if (!schema.ok()) return schema.status();
  in.schema = *std::move(schema);
  if (!f.hierarchies.empty()) {
    auto h = ReadFile(f.hierarchies);
    if (!h.ok()) return h.status();
    in.hierarchies = *std::move(h);
  }
  if (!f.policy.empty()) {
    auto p = InlineOrFile(f.policy);
    if (!p.ok()) return p.status();
    in.policy = *std::move(p);
  }
  if (!f.quasi.empty()) in.quasi_set = f.quasi;
  if (f.tau_set) in.tau = f.tau;
  return ResolveInputs(in);
}

int Fail(std::ostream& err, const absl::Status& s) {
  fmt::print(err, "error: {}\n", internal::Message(s));
  return kExitError;
}

std::string FormatReport(const RiskReport& r) {
  std::string out;
  auto line = [&out](std::string_view label, const std::string& value) {
    out += fmt::format("{:<30} {}\n", label, value);
  };
  auto ratio = [](const Ratio& x) {
    return fmt::format("{:.3f} ({})", x.value(), x.ToString());
  };
  line("records", std::to_string(r.record_count));
  line("quasi-identifiers", r.quasi_set.empty()
                                ? std::string("(none left)")
                                : fmt::format("{}", fmt::join(r.quasi_set, ", ")));
  line("equivalence classes", std::to_string(r.class_count));
  line("smallest class", std::to_string(r.k_anonymity.min_class_size));
  line(fmt::format("small_class_fraction (tau={})", r.metrics.tau),
       ratio(r.metrics.small_class_fraction));
  line("inverse_average", ratio(r.metrics.inverse_average));
  line("inverse_min", ratio(r.metrics.inverse_min));
  line(fmt::format("k-anonymity (k={})", r.k_anonymity.k),
       r.k_anonymity.passed
           ? std::string("pass")
           : fmt::format("FAIL ({} classes below k)",
                         r.k_anonymity.violators.size()));
  if (r.strict_average) {
    line("strict average",
         fmt::format("{} (min {}, average {:.2f})",
                     r.strict_average->passed ? "pass" : "FAIL",
                     r.strict_average->min_class_size,
                     r.strict_average->average_class_size));
  }
  for (const auto& c : r.l_diversity) {
    line(fmt::format("l-diversity ({})", c.sensitive),
         c.passed ? "pass" : "FAIL");
  }
  for (const auto& c : r.t_closeness) {
    line(fmt::format("t-closeness ({})", c.sensitive),
         c.passed ? "pass" : "FAIL");
  }
  line(fmt::format("policy {}", r.policy_name), r.passed ? "PASS" : "FAIL");
  return out;
}

int RunAssess(const DataFlags& f, bool as_json, std::optional<int> k,
              std::ostream& out, std::ostream& err) {
  auto in = LoadInputs(f);
  if (!in.ok()) return Fail(err, in.status());
  if (k) in->policy.thresholds.min_class_size = *k;
  auto report = Evaluate(in->dataset, in->quasi_set, in->policy, in->tau);
  if (!report.ok()) return Fail(err, report.status());
  if (as_json) {
    out << RiskReportToJson(*report).dump(2) << "\n";
  } else {
    out << FormatReport(*report);
  }
  return report->passed ? kExitOk : kExitPolicyFailed;
}

json SchemaDocument(const Schema& schema) {
  return {{"attributes", SchemaToJson(schema)},
          {"hierarchies", HierarchiesToJson(schema.hierarchies())["hierarchies"]}};
}

absl::StatusOr<AnonymizationPlan> LoadPlan(const std::string& path) {
  auto j = ReadJsonFile(path);
  if (!j.ok()) return j.status();
  return PlanFromJson(*j);
}

int RunApply(const DataFlags& f, const std::string& plan_path,
             const std::string& out_path, const std::string& out_schema,
             const std::string& ledger_path, std::ostream& out,
             std::ostream& err) {
  auto in = LoadInputs(f);
  if (!in.ok()) return Fail(err, in.status());
  auto plan = LoadPlan(plan_path);
  if (!plan.ok()) return Fail(err, plan.status());
  PlanOutcome r = ApplyPlan(in->dataset, *plan);
  const json ledger = LedgerToJson(r.ledger);
  if (!ledger_path.empty()) {
    if (auto s = WriteFile(ledger_path, ledger.dump(2) + "\n"); !s.ok()) {
      return Fail(err, s);
    }
  }
  out << FormatLedgerReport(ledger);
  if (!r.status.ok()) return Fail(err, r.status);
  if (!out_path.empty()) {
    if (auto s = WriteFile(out_path, SerializeDataset(r.dataset)); !s.ok()) {
      return Fail(err, s);
    }
  }
  if (!out_schema.empty()) {
    const std::string doc = SchemaDocument(r.dataset.schema()).dump(2) + "\n";
    if (auto s = WriteFile(out_schema, doc); !s.ok()) return Fail(err, s);
  }
  auto final_report =
      EvaluateDeclared(r.dataset, plan->quasi_set, plan->policy, plan->tau);
  if (!final_report.ok()) return Fail(err, final_report.status());
  out << "\n" << FormatReport(*final_report);
  return kExitOk;
}

int RunWhatIf(const DataFlags& f, const std::string& plan_path,
              const std::vector<std::string>& candidate_paths,
              std::ostream& out, std::ostream& err) {
  auto in = LoadInputs(f);
  if (!in.ok()) return Fail(err, in.status());
  Dataset current = in->dataset;
  std::vector<std::string> quasi = in->quasi_set;
  ReleasePolicy policy = in->policy;
  int tau = in->tau;
  if (!plan_path.empty()) {
    auto plan = LoadPlan(plan_path);
    if (!plan.ok()) return Fail(err, plan.status());
    PlanOutcome r = ApplyPlan(in->dataset, *plan);
    if (!r.status.ok()) return Fail(err, r.status);
    current = r.dataset;
    quasi = plan->quasi_set;
    policy = plan->policy;
    tau = plan->tau;
  }
  std::vector<TransformStep> candidates;
  for (const auto& path : candidate_paths) {
    auto j = ReadJsonFile(path);
    if (!j.ok()) return Fail(err, j.status());
    const json list = j->is_array() ? *j : json::array({*j});
    for (const auto& c : list) {
      auto step = StepFromJson(c);
      if (!step.ok()) return Fail(err, step.status());
      candidates.push_back(*std::move(step));
    }
  }
  if (candidates.size() == 1) {
    auto w = WhatIf(in->dataset, current, candidates[0], quasi, policy, tau);
    if (!w.ok()) return Fail(err, w.status());
    out << WhatIfToJson(*w).dump(2) << "\n";
    return kExitOk;
  }
  out << SuggestionsToJson(
             SuggestNext(in->dataset, current, candidates, quasi, policy, tau))
             .dump(2)
      << "\n";
  return kExitOk;
}

int RunNarrative(const std::string& input, const std::string& policy_path,
                 const std::string& hierarchies_path,
                 const std::string& log_path, std::ostream& out,
                 std::ostream& err) {
  auto nj = ReadJsonFile(input);
  if (!nj.ok()) return Fail(err, nj.status());
  auto narrative = NarrativeFromJson(*nj);
  if (!narrative.ok()) return Fail(err, narrative.status());
  auto pj = ReadJsonFile(policy_path);
  if (!pj.ok()) return Fail(err, pj.status());
  HierarchySet hierarchies;
  if (!hierarchies_path.empty()) {
    auto hj = ReadJsonFile(hierarchies_path);
    if (!hj.ok()) return Fail(err, hj.status());
    auto h = ParseHierarchies(*hj);
    if (!h.ok()) return Fail(err, h.status());
    hierarchies = *std::move(h);
  }
  auto policy = NarrativePolicyFromJson(*pj, std::move(hierarchies));
  if (!policy.ok()) return Fail(err, policy.status());
  auto result = ApplyNarrativePolicy(*narrative, *policy);
  if (!result.ok()) return Fail(err, result.status());
  out << result->text << "\n";
  if (!log_path.empty()) {
    const std::string log = NarrativeLogToJson(result->log).dump(2) + "\n";
    if (auto s = WriteFile(log_path, log); !s.ok()) return Fail(err, s);
  }
  return kExitOk;
}

absl::StatusOr<ContingencyTable> LoadTable(const std::string& path) {
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    auto j = ReadJsonFile(path);
    if (!j.ok()) return j.status();
    return TableFromJson(*j);
  }
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  const bool tab = path.size() >= 4 && path.compare(path.size() - 4, 4, ".tsv") == 0;
  return ParseTableDelimited(*text, tab ? '\t' : ',');
}

std::string FormatAudit(const ContingencyTable& t, const TableAudit& a) {
  std::string out = fmt::format("{} cell(s) flagged at threshold {}\n",
                                a.flags.size(), a.threshold);
  for (const auto& f : a.flags) {
    out += fmt::format("  ({}, {}) = {} [{}] {}\n", t.rows()[f.row],
                       t.columns()[f.column], f.count,
                       CellFlagReasonName(f.reason), f.note);
  }
  for (const auto& w : a.warnings) out += fmt::format("  warning: {}\n", w);
  return out;
}

int RunTableAudit(const std::string& table_path, int64_t threshold,
                  const std::string& merge_path, bool as_json,
                  std::ostream& out, std::ostream& err) {
  auto table = LoadTable(table_path);
  if (!table.ok()) return Fail(err, table.status());
  auto audit = AuditTable(*table, threshold);
  if (!audit.ok()) return Fail(err, audit.status());
  json result = {{"audit", TableAuditToJson(*table, *audit)}};
  std::string text = FormatAudit(*table, *audit);
  if (!merge_path.empty()) {
    auto gj = ReadJsonFile(merge_path);
    if (!gj.ok()) return Fail(err, gj.status());
    auto grouping = GroupingFromJson(*gj);
    if (!grouping.ok()) return Fail(err, grouping.status());
    auto merged = MergeTableCategories(*table, *grouping);
    if (!merged.ok()) return Fail(err, merged.status());
    auto after = AuditTable(*merged, threshold);
    if (!after.ok()) return Fail(err, after.status());
    result["merged"] = TableToJson(*merged);
    result["merged_audit"] = TableAuditToJson(*merged, *after);
    text += "\nmerged table:\n" + FormatTableDelimited(*merged) +
            "after merge: " + FormatAudit(*merged, *after);
  }
  out << (as_json ? result.dump(2) + "\n" : text);
  return kExitOk;
}

int RunReport(const std::string& ledger_path, const std::string& data,
              const std::string& schema, const std::string& hierarchies,
              std::ostream& out, std::ostream& err) {
  auto j = ReadJsonFile(ledger_path);
  if (!j.ok()) return Fail(err, j.status());
  out << FormatLedgerReport(*j);
  if (data.empty()) return kExitOk;
  DataFlags f;
  f.data = data;
  f.schema = schema;
  f.hierarchies = hierarchies;
  auto in = LoadInputs(f);
  if (!in.ok()) return Fail(err, in.status());
  auto ledger = LedgerFromJson(*j);
  if (!ledger.ok()) return Fail(err, ledger.status());
  auto replayed = ReplayLedger(in->dataset, *ledger);
  if (!replayed.ok()) return Fail(err, replayed.status());
  fmt::print(out, "\nreplay: {} committed step(s) reproduce the recorded data\n",
             ledger->committed_count());
  return kExitOk;
}

int RunServe(std::string host, int port, const std::string& export_dir,
             std::ostream& out, std::ostream& err) {
  ServiceOptions options;
  if (!export_dir.empty()) options.export_dir = export_dir;
  HttpService service(options);
  auto bound = service.Bind(host, port);
  if (!bound.ok()) return Fail(err, bound.status());
  fmt::print(out, "listening on http://{}:{}\n", host, *bound);
  out.flush();
  if (auto s = service.Serve(); !s.ok()) return Fail(err, s);
  return kExitOk;
}

std::string EnvOr(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v != nullptr && *v != '\0' ? std::string(v) : fallback;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Statistical disclosure control for clinical trial data",
               "sdctool"};
  app.require_subcommand(1);

  DataFlags assess_flags;
  bool assess_json = false;
  std::optional<int> assess_k;
  auto* assess = app.add_subcommand("assess", "Assess re-identification risk");
  AddDataFlags(assess, assess_flags, true);
  assess->add_flag("--json", assess_json, "Print the report as JSON");
  assess->add_option("--k", assess_k, "Override the minimum class size");

  DataFlags apply_flags;
  std::string apply_plan, apply_out, apply_out_schema, apply_ledger;
  auto* apply = app.add_subcommand("apply", "Apply an anonymization plan");
  AddDataFlags(apply, apply_flags, false);
  apply->add_option("--plan", apply_plan, "Plan JSON file")->required();
  apply->add_option("--out", apply_out, "Write the released dataset here");
  apply->add_option("--out-schema", apply_out_schema,
                    "Write the released schema here");
  apply->add_option("--ledger", apply_ledger, "Write the audit ledger here");

  DataFlags whatif_flags;
  std::string whatif_plan;
  std::vector<std::string> whatif_candidates;
  auto* whatif =
      app.add_subcommand("whatif", "Preview candidate steps without applying");
  AddDataFlags(whatif, whatif_flags, true);
  whatif->add_option("--plan", whatif_plan, "Plan applied before the preview");
  whatif->add_option("--candidate", whatif_candidates,
                     "Candidate step JSON file (repeat to rank several)")
      ->required();

  std::string narrative_in, narrative_policy, narrative_h, narrative_log;
  auto* narrative =
      app.add_subcommand("narrative", "Anonymize an annotated narrative");
  narrative->add_option("--input", narrative_in, "Annotated narrative JSON")
      ->required();
  narrative->add_option("--policy", narrative_policy, "Narrative policy JSON")
      ->required();
  narrative->add_option("--hierarchies", narrative_h, "Hierarchies JSON file");
  narrative->add_option("--log", narrative_log, "Write the action log here");

  std::string table_path, table_merge;
  int64_t table_threshold = 5;
  bool table_json = false;
  auto* table = app.add_subcommand("table-audit",
                                   "Flag small cells in a summary table");
  table->add_option("--table", table_path, "Table file (.csv, .tsv or .json)")
      ->required();
  table->add_option("--threshold", table_threshold, "Smallest safe count")
      ->check(CLI::PositiveNumber);
  table->add_option("--merge", table_merge, "Column grouping JSON to apply");
  table->add_flag("--json", table_json, "Print JSON");

  std::string report_ledger, report_data, report_schema, report_h;
  auto* report = app.add_subcommand("report", "Summarize an audit ledger");
  report->add_option("--ledger", report_ledger, "Ledger JSON file")->required();
  report->add_option("--data", report_data,
                     "Original data; replays the ledger to verify it");
  report->add_option("--schema", report_schema, "Schema for --data");
  report->add_option("--hierarchies", report_h, "Hierarchies for --data");

  std::string serve_host = EnvOr("SDC_BIND", "127.0.0.1");
  int serve_port = 8080;
  if (auto p = internal::ParseInt<int>(EnvOr("SDC_PORT", ""))) serve_port = *p;
  std::string serve_export;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", serve_host, "Bind address (env SDC_BIND)");
  serve->add_option("--port", serve_port, "Port, 0 for any (env SDC_PORT)");
  serve->add_option("--export-dir", serve_export,
                    "Allow dataset export into this directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  if (*assess) {
    return RunAssess(assess_flags, assess_json, assess_k, out, err);
  }
  if (*apply) {
    return RunApply(apply_flags, apply_plan, apply_out, apply_out_schema,
                    apply_ledger, out, err);
  }
  if (*whatif) {
    return RunWhatIf(whatif_flags, whatif_plan, whatif_candidates, out, err);
  }
  if (*narrative) {
    return RunNarrative(narrative_in, narrative_policy, narrative_h,
                        narrative_log, out, err);
  }
  if (*table) {
    return RunTableAudit(table_path, table_threshold, table_merge, table_json,
                         out, err);
  }
  if (*report) {
    if (!report_data.empty() && report_schema.empty()) {
      err << "error: --data needs --schema\n";
      return kExitError;
    }
    return RunReport(report_ledger, report_data, report_schema, report_h, out,
                     err);
  }
  if (*serve) {
    return RunServe(serve_host, serve_port, serve_export, out, err);
  }
  return kExitError;
}

}  // namespace sdc
