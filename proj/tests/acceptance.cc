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


// Acceptance run: one PASS or FAIL line per criterion, nonzero exit if any
// criterion fails. Usage: acceptance [path-to-property_test]

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "fmt/format.h"
#include "sdc/attack_model.h"
#include "sdc/cli.h"
#include "sdc/internal/str.h"
#include "sdc/contingency_table.h"
#include "sdc/narrative.h"
#include "sdc/partition.h"
#include "sdc/risk_report.h"
#include "testing/fixture_files.h"
#include "testing/fixtures.h"

namespace sdc {
namespace {

using ::sdc::testing::ValueOrDie;
using Clock = std::chrono::steady_clock;

// Collects failed expectations for one criterion.
class Checker {
 public:
  void Expect(bool ok, std::string what) {
    if (!ok) problems_.push_back(std::move(what));
  }
  template <typename A, typename B>
  void Equal(const A& actual, const B& expected, std::string_view what) {
    if (!(actual == expected)) {
      problems_.push_back(fmt::format("{}: got {}, want {}", what, actual, expected));
    }
  }
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

std::string Show(const Ratio& r) { return r.ToString(); }

void ExpectRatio(Checker& c, const Ratio& got, const Ratio& want, std::string_view what) {
  c.Expect(got == want, fmt::format("{}: got {}, want {}", what, Show(got), Show(want)));
  c.Expect(std::abs(got.value() - want.value()) <= 1e-12, std::string(what) + " value");
}

ReleasePolicy OpenRelease() {
  ReleasePolicy p;
  p.thresholds = OpenReleasePreset();
  return p;
}

double Millis(Clock::duration d) {
  return std::chrono::duration<double, std::milli>(d).count();
}

void GaainStepSix(Checker& c, const testing::TempDir& dir) {
  const auto start = Clock::now();
  std::ostringstream out, err;
  const int code = RunCli({"assess", "--json", "--data", dir.File("gaain_release.csv"),
                           "--schema", dir.File("gaain_release_schema.json"), "--quasi",
                           "Age,Gender", "--tau", "5", "--policy", "open-release"},
                          out, err);
  std::ostringstream text_out;
  RunCli({"assess", "--data", dir.File("gaain_release.csv"), "--schema",
          dir.File("gaain_release_schema.json"), "--quasi", "Age,Gender"},
         text_out, err);
  const double ms = Millis(Clock::now() - start);
  c.Equal(code, kExitOk, "assess exit code");
  if (code != kExitOk) {
    c.Expect(false, err.str());
    return;
  }
  const auto j = nlohmann::json::parse(out.str());
  const auto& m = j["metrics"];
  c.Equal(m["small_class_fraction"]["ratio"].get<std::string>(), std::string("0/242"),
          "small_class_fraction");
  c.Equal(m["inverse_average"]["ratio"].get<std::string>(), std::string("8/242"),
          "inverse_average");
  c.Equal(m["inverse_min"]["ratio"].get<std::string>(), std::string("1/18"), "inverse_min");
  c.Expect(std::abs(m["inverse_average"]["value"].get<double>() - 8.0 / 242) <= 1e-12,
           "inverse_average value");
  c.Expect(text_out.str().find("0.033 (8/242)") != std::string::npos,
           "human report shows 0.033 (8/242)");
  c.Expect(text_out.str().find("0.056 (1/18)") != std::string::npos,
           "human report shows 0.056 (1/18)");
  c.Expect(ms < 1000, fmt::format("runtime {:.1f} ms", ms));
}

void GaainStepFive(Checker& c) {
  const auto start = Clock::now();
  Dataset d = testing::GaainConfiguration(5);
  auto p = ValueOrDie(PartitionDeclared(d, testing::GaainQuasiSet()));
  std::vector<size_t> sizes = p.sizes();
  std::sort(sizes.rbegin(), sizes.rend());
  c.Expect(sizes == std::vector<size_t>({78, 66, 50, 48}), "class sizes {78,66,50,48}");
  auto m = ValueOrDie(ComputeRiskMetrics(p, 5));
  ExpectRatio(c, m.inverse_average, {4, 242}, "inverse_average");
  // The published step-5 row gives 0.03 (1/30), which no partition matching
  // the step-6 tabulation can produce once gender is dropped.
  ExpectRatio(c, m.inverse_min, {1, 48}, "inverse_min");
  const double ms = Millis(Clock::now() - start);
  c.Expect(ms < 1000, fmt::format("runtime {:.1f} ms", ms));
}

void TableRegroup(Checker& c) {
  const auto start = Clock::now();
  ContingencyTable t = testing::HistoryTable();
  TableAudit audit = ValueOrDie(AuditTable(t, 5));
  c.Equal(audit.flags.size(), size_t{3}, "flagged cells");
  bool zero_noted = false;
  for (const auto& f : audit.flags) {
    if (f.count == 0 && f.reason == CellFlagReason::kZeroComplement && !f.note.empty()) {
      zero_noted = true;
    }
  }
  c.Expect(zero_noted, "zero cell flagged with a complement note");
  ContingencyTable merged =
      ValueOrDie(MergeTableCategories(t, testing::HistoryPairwiseGrouping()));
  c.Expect(merged.counts() ==
               std::vector<std::vector<int64_t>>{{5, 38, 47, 16}, {6, 25, 29, 11}},
           "merged counts No=(5,38,47,16) Yes=(6,25,29,11)");
  c.Equal(ValueOrDie(AuditTable(merged, 5)).flags.size(), size_t{0}, "post-merge flags");
  const double ms = Millis(Clock::now() - start);
  c.Expect(ms < 100, fmt::format("runtime {:.2f} ms", ms));
}

void PolicyPreset(Checker& c) {
  c.Equal(OpenReleasePreset().min_class_size, 11, "open-release k");
  c.Equal(ValueOrDie(RequiredMinClassSize(0.09, ClassSizeConvention::kRegulatorPreset)), 11,
          "regulator convention at 0.09");
  c.Equal(ValueOrDie(RequiredMinClassSize(0.09, ClassSizeConvention::kGeneric)), 12,
          "generic convention at 0.09");
  auto six = ValueOrDie(
      Evaluate(testing::GaainConfiguration(6), testing::GaainQuasiSet(), OpenRelease()));
  c.Expect(six.passed && six.k_anonymity.passed, "step-6 release passes k=11");
  auto three = ValueOrDie(
      Evaluate(testing::GaainConfiguration(3), testing::GaainQuasiSet(), OpenRelease()));
  c.Expect(!three.passed && three.k_anonymity.min_class_size < 11,
           fmt::format("step-3 release fails with a class below 11 (smallest {})",
                       three.k_anonymity.min_class_size));
}

void ScenarioAB(Checker& c) {
  const AttackScenario a[] = {{"A", AttackType::kDeliberate, 1.0, 0.1}};
  const AttackScenario b[] = {{"B", AttackType::kDeliberate, 0.1, 1.0}};
  CombinedRisk ra = ValueOrDie(ComputeCombinedRisk(a));
  CombinedRisk rb = ValueOrDie(ComputeCombinedRisk(b));
  c.Expect(ra.total == 0.1, fmt::format("A total {}", ra.total));
  c.Expect(rb.total == 0.1, fmt::format("B total {}", rb.total));
  c.Expect(!ra.any_certain_disclosure, "A not certain disclosure");
  c.Expect(rb.any_certain_disclosure, "B certain disclosure");
}

EquivalencePartition WithSizes(const std::vector<size_t>& sizes) {
  std::vector<EquivalenceClass> classes;
  size_t row = 0;
  for (size_t i = 0; i < sizes.size(); ++i) {
    EquivalenceClass k;
    k.signature = {Value::Category("c" + std::to_string(i))};
    for (size_t n = 0; n < sizes[i]; ++n) k.rows.push_back(row++);
    classes.push_back(std::move(k));
  }
  return EquivalencePartition({"q"}, std::move(classes), row);
}

void StrictAverage(Checker& c) {
  auto table3 = ValueOrDie(CheckStrictAverage(
      ValueOrDie(PartitionDeclared(testing::GaainConfiguration(6), testing::GaainQuasiSet()))));
  c.Expect(table3.passed, "step-6 partition passes");
  c.Equal(table3.min_class_size, size_t{18}, "minimum class");
  c.Expect(std::abs(table3.average_class_size - 30.25) < 1e-12,
           fmt::format("average {}", table3.average_class_size));
  c.Expect(!ValueOrDie(CheckStrictAverage(WithSizes({2, 100}))).passed, "{2,100} fails");
  c.Expect(!ValueOrDie(CheckStrictAverage(WithSizes({5, 5}))).passed, "{5,5} fails");
}

void PropertySuite(Checker& c, const std::string& binary) {
  if (binary.empty()) {
    c.Expect(false, "property_test binary not given");
    return;
  }
  const auto start = Clock::now();
  const int status = std::system((binary + " > /dev/null 2>&1").c_str());
  const double ms = Millis(Clock::now() - start);
  c.Equal(status, 0, "property_test exit status");
  c.Expect(ms < 60000, fmt::format("runtime {:.0f} ms", ms));
}

std::vector<Date> DatesIn(const std::string& text) {
  static const std::regex kDate("[0-9]{2}/[A-Z][a-z]{2}/[0-9]{4}");
  std::vector<Date> out;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), kDate);
       it != std::sregex_iterator(); ++it) {
    out.push_back(*ParseDate(it->str()));
  }
  return out;
}

void NarrativeRound(Checker& c) {
  AnnotatedNarrative n = testing::AdverseEventNarrative();
  NarrativeResult r = ValueOrDie(ApplyNarrativePolicy(n, testing::BeyondRedactionPolicy()));
  c.Expect(r.text.find("000478") == std::string::npos, "original ID removed");
  c.Expect(std::regex_search(r.text, std::regex("Subject '[0-9]{6}'")), "ID recoded");
  c.Expect(r.text.find("aged 30-40") != std::string::npos, "age 30-40");
  c.Expect(r.text.find("South America") != std::string::npos, "location South America");
  c.Expect(r.text.find("[Skin and subcutaneous tissue disorders]") != std::string::npos,
           "event term generalized");

  std::vector<Date> original;
  for (const auto& s : n.spans) {
    if (s.category == SpanCategory::kDate) {
      original.push_back(*ParseDate(n.text.substr(s.start, s.end - s.start)));
    }
  }
  const std::vector<Date> shifted = DatesIn(r.text);
  c.Equal(shifted.size(), size_t{3}, "dates in output");
  if (shifted.size() == 3 && original.size() == 3) {
    const auto offset = shifted[0] - original[0];
    c.Expect(offset.count() != 0, "dates moved");
    for (size_t i = 1; i < 3; ++i) {
      c.Expect(shifted[i] - original[i] == offset,
               fmt::format("date {} shares the subject offset", i + 1));
      c.Expect(shifted[i] - shifted[0] == original[i] - original[0],
               fmt::format("day difference to date {} preserved", i + 1));
    }
  }

  // Repeated mentions of one subject get one pseudonym.
  AnnotatedNarrative twice;
  twice.text = "Subject 000478 met 000479; later 000478 withdrew.";
  size_t from = 0;
  for (std::string_view token : {"000478", "000479", "000478"}) {
    const size_t at = twice.text.find(token, from);
    twice.spans.push_back({at, at + token.size(), SpanCategory::kSubjectId});
    from = at + token.size();
  }
  NarrativeResult t = ValueOrDie(ApplyNarrativePolicy(twice, testing::BeyondRedactionPolicy()));
  std::vector<std::string> ids;
  static const std::regex kId("[0-9]{6}");
  for (auto it = std::sregex_iterator(t.text.begin(), t.text.end(), kId);
       it != std::sregex_iterator(); ++it) {
    ids.push_back(it->str());
  }
  c.Expect(ids.size() == 3 && ids[0] == ids[2] && ids[0] != ids[1],
           "recoded ID stable across mentions");
}

}  // namespace
}  // namespace sdc

int main(int argc, char** argv) {
  using sdc::Checker;
  const std::string property_binary = argc > 1 ? argv[1] : "";
  sdc::testing::TempDir dir;
  if (auto s = sdc::testing::WriteFixtureFiles(dir.path()); !s.ok()) {
    std::cerr << "cannot write fixtures: " << sdc::internal::Message(s) << "\n";
    return 2;
  }
  const std::vector<std::pair<std::string, std::function<void(Checker&)>>> criteria = {
      {"GAAIN released tabulation via assess",
       [&](Checker& c) { sdc::GaainStepSix(c, dir); }},
      {"GAAIN gender removed", sdc::GaainStepFive},
      {"contingency table audit and regroup", sdc::TableRegroup},
      {"open-release policy preset", sdc::PolicyPreset},
      {"attack scenarios A and B", sdc::ScenarioAB},
      {"strict average rule", sdc::StrictAverage},
      {"property suite", [&](Checker& c) { sdc::PropertySuite(c, property_binary); }},
      {"narrative beyond redaction", sdc::NarrativeRound},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Checker c;
    criteria[i].second(c);
    const bool ok = c.problems().empty();
    if (!ok) ++failed;
    std::cout << (ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first;
    for (const auto& p : c.problems()) std::cout << "\n       " << p;
    std::cout << "\n";
  }
  return failed == 0 ? 0 : 1;
}
