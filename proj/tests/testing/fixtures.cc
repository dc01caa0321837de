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

#include "testing/fixtures.h"

#include <array>
#include <random>
#include <utility>

#include "fmt/format.h"
#include "sdc/internal/hash.h"
#include "sdc/table_io.h"

namespace sdc::testing {
namespace {

using nlohmann::json;

// Subjects per single year of age, 30 to 54. Chosen so that the released
// configurations reproduce the published class sizes.
constexpr std::array<int, 25> kFemale = {11, 11, 11, 11, 11, 7, 7, 7, 7,
                                         8,  6,  6,  6,  6,  6, 6, 6, 6,
                                         5,  1,  2,  1,  1,  1, 1};
constexpr std::array<int, 25> kMale = {5, 5, 5, 8, 0, 6, 6, 6, 6, 6, 1, 2, 5,
                                       6, 6, 4, 3, 3, 3, 1, 1, 1, 1, 1, 0};
// The ten older subjects removed before any tabulation.
constexpr std::array<std::pair<int, char>, 10> kOlder = {{{55, 'F'},
                                                          {55, 'M'},
                                                          {56, 'F'},
                                                          {57, 'M'},
                                                          {57, 'F'},
                                                          {58, 'F'},
                                                          {59, 'M'},
                                                          {60, 'F'},
                                                          {60, 'M'},
                                                          {56, 'M'}}};

struct Subject {
  int age;
  char gender;
};

std::vector<Subject> Subjects() {
  std::vector<Subject> out;
  for (int i = 0; i < 25; ++i) {
    for (int n = 0; n < kFemale[i]; ++n) out.push_back({30 + i, 'F'});
    for (int n = 0; n < kMale[i]; ++n) out.push_back({30 + i, 'M'});
  }
  for (const auto& [age, gender] : kOlder) out.push_back({age, gender});
  std::mt19937_64 engine(internal::SplitMix64(20200731));
  for (size_t i = out.size() - 1; i > 0; --i) {
    std::swap(out[i], out[internal::UniformBelow(engine, i + 1)]);
  }
  return out;
}

}  // namespace

json GaainSchemaJson() {
  return json::array({
      {{"name", "Subject ID"}, {"role", "direct-identifier"}, {"kind", "categorical"}},
      {{"name", "Gender"},
       {"role", "quasi-identifier"},
       {"kind", "categorical"},
       {"domain", {"F", "M"}}},
      {{"name", "Race"}, {"role", "neutral"}, {"kind", "categorical"}, {"domain", {"OTHER"}}},
      {{"name", "Age"},
       {"role", "quasi-identifier"},
       {"kind", "integer"},
       {"domain", {{"min", 30}, {"max", 60}}}},
      {{"name", "Ethnicity"},
       {"role", "neutral"},
       {"kind", "categorical"},
       {"domain", {"HISPANIC OR LATINO"}}},
      {{"name", "Country"}, {"role", "neutral"}, {"kind", "categorical"}, {"domain", {"Colombia"}}},
      {{"name", "CDR Global"},
       {"role", "sensitive"},
       {"kind", "categorical"},
       {"domain", {"0", "0.5"}}},
      {{"name", "MMSE"},
       {"role", "sensitive"},
       {"kind", "integer"},
       {"domain", {{"min", 23}, {"max", 30}}}},
  });
}

Schema GaainSchema() { return ValueOrDie(ParseSchema(GaainSchemaJson())); }

std::string GaainCsv() {
  std::string out =
      "Subject ID,Gender,Race,Age,Ethnicity,Country,CDR Global,MMSE\n";
  const std::vector<Subject> subjects = Subjects();
  for (size_t i = 0; i < subjects.size(); ++i) {
    const Subject& s = subjects[i];
    // Already scrambled identifiers: an arbitrary bijection of the index.
    const uint64_t id = (i * 7919 + 104729) % 1000000;
    const char* cdr = (s.age + static_cast<int>(i)) % 7 == 0 ? "0.5" : "0";
    const int mmse = 23 + static_cast<int>((i * 5 + s.age) % 8);
    out += fmt::format("{:06},{},OTHER,{},HISPANIC OR LATINO,Colombia,{},{}\n",
                       id, s.gender, s.age, cdr, mmse);
  }
  return out;
}

Dataset GaainRaw() {
  return ValueOrDie(LoadDataset(GaainCsv(), GaainSchema(), "gaain-synthetic"));
}

std::vector<std::string> GaainQuasiSet() { return {"Age", "Gender"}; }

TransformStep SuppressOver54() {
  return TransformStep::Suppress(ValueOrDie(RecordPredicate::Parse("Age > 54")));
}

BandSpec TenYearBands() {
  BandSpec b;
  b.cuts = {30, 40, 50, 60};
  return b;
}

BandSpec FourBands() {
  BandSpec b;
  b.cuts = {30, 35, 40, 45};
  b.open_top = true;
  return b;
}

AnonymizationPlan GaainPlan(int configuration) {
  AnonymizationPlan plan;
  plan.quasi_set = GaainQuasiSet();
  plan.policy.thresholds = OpenReleasePreset();
  plan.tau = kDefaultTau;
  plan.steps.push_back(SuppressOver54());
  switch (configuration) {
    case 1:
      break;
    case 2:
      plan.steps.push_back(TransformStep::Remove("Gender"));
      break;
    case 3:
      plan.steps.push_back(TransformStep::Band("Age", TenYearBands()));
      break;
    case 4:
      plan.steps.push_back(TransformStep::Band("Age", TenYearBands()));
      plan.steps.push_back(TransformStep::Remove("Gender"));
      break;
    case 5:
      plan.steps.push_back(TransformStep::Band("Age", FourBands()));
      plan.steps.push_back(TransformStep::Remove("Gender"));
      break;
    case 6:
      plan.steps.push_back(TransformStep::Band("Age", FourBands()));
      break;
    default:
      fprintf(stderr, "no GAAIN configuration %d\n", configuration);
      abort();
  }
  return plan;
}

Dataset GaainConfiguration(int configuration) {
  PlanOutcome r = ApplyPlan(GaainRaw(), GaainPlan(configuration));
  if (!r.status.ok()) {
    fprintf(stderr, "fixture error: %s\n", internal::Message(r.status).c_str());
    abort();
  }
  return r.dataset;
}

ContingencyTable HistoryTable() {
  auto t = ValueOrDie(ContingencyTable::Create(
      {"No", "Yes"}, {"40-45", "45-50", "50-55", "55-60", "60-65", "65-70", ">70"},
      {{0, 5, 13, 25, 33, 14, 16}, {2, 4, 9, 16, 21, 8, 11}}));
  t.row_attribute = "History of specific medical condition";
  t.column_attribute = "Age Group";
  return t;
}

std::map<std::string, std::string> HistoryPairwiseGrouping() {
  return {{"40-45", "40-50"}, {"45-50", "40-50"}, {"50-55", "50-60"},
          {"55-60", "50-60"}, {"60-65", "60-70"}, {"65-70", "60-70"},
          {">70", ">70"}};
}

AnnotatedNarrative AdverseEventNarrative() {
  AnnotatedNarrative n;
  n.text =
      "Subject '000478' male, aged 35, from Argentina, re-started IP after "
      "recovery from the traffic accident on 16/Oct/2006 and developed a rash "
      "on his face on 17/Oct/2006. IP was stopped on 01/Nov/2006";
  size_t cursor = 0;
  auto mark = [&](std::string_view needle, SpanCategory c,
                  std::optional<ActionKind> action = std::nullopt) {
    const size_t at = n.text.find(needle, cursor);
    if (at == std::string::npos) abort();
    n.spans.push_back({at, at + needle.size(), c, std::nullopt, action});
    cursor = at + needle.size();
  };
  mark("000478", SpanCategory::kSubjectId);
  mark("male", SpanCategory::kGender);
  mark("35", SpanCategory::kAge);
  mark("Argentina", SpanCategory::kLocation);
  mark(" after recovery from the traffic accident", SpanCategory::kFreeText,
       ActionKind::kDrop);
  mark("16/Oct/2006", SpanCategory::kDate);
  mark("rash", SpanCategory::kEventTerm);
  mark("his", SpanCategory::kFreeText);
  mark("face", SpanCategory::kFreeText);
  mark("17/Oct/2006", SpanCategory::kDate);
  mark("01/Nov/2006", SpanCategory::kDate);
  return n;
}

HierarchySet ContinentHierarchy() {
  return ValueOrDie(ParseHierarchies(json::parse(R"({"hierarchies": [{
    "name": "continent",
    "domain": ["Argentina", "Brazil", "Chile", "Colombia", "Peru",
               "France", "Germany", "Spain", "Japan", "India"],
    "levels": [{"name": "continent", "map": {
      "Argentina": "South America", "Brazil": "South America",
      "Chile": "South America", "Colombia": "South America",
      "Peru": "South America", "France": "Europe", "Germany": "Europe",
      "Spain": "Europe", "Japan": "Asia", "India": "Asia"}}]
  }]})")));
}

json BeyondRedactionPolicyJson() {
  return json::parse(R"({
    "pseudonym_seed": 798,
    "offset": {"fixed_days": -396},
    "actions": {
      "subject-id": "recode",
      "gender": "redact",
      "age": {"kind": "generalize",
              "bands": {"cuts": [0, 10, 20, 30, 40, 50, 60, 70, 80, 90],
                        "open_top": true, "style": "boundary"}},
      "location": {"kind": "generalize", "hierarchy": "continent", "level": 1},
      "date": "offset-date",
      "event-term": {"kind": "generalize",
                     "term_map": {"rash": "Skin and subcutaneous tissue disorders"},
                     "term_format": "[{}]"},
      "free-text": "redact"
    }
  })");
}

NarrativePolicy BeyondRedactionPolicy() {
  return ValueOrDie(
      NarrativePolicyFromJson(BeyondRedactionPolicyJson(), ContinentHierarchy()));
}

}  // namespace sdc::testing
