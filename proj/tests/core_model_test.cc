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

#include <chrono>

#include "gtest/gtest.h"
#include "sdc/bands.h"
#include "sdc/dataset.h"
#include "sdc/hierarchy.h"
#include "sdc/predicate.h"
#include "sdc/schema.h"
#include "sdc/table_io.h"
#include "sdc/validation.h"
#include "sdc/value.h"
#include "testing/fixtures.h"

namespace sdc {
namespace {

using nlohmann::json;
using ::sdc::testing::ValueOrDie;
using namespace std::chrono;

TEST(ValueTest, DatesParseInBothFormats) {
  const Date want = sys_days(year(2006) / October / 16);
  EXPECT_EQ(ParseDate("2006-10-16"), want);
  EXPECT_EQ(ParseDate("16/Oct/2006"), want);
  EXPECT_EQ(ParseDate("16/oct/2006"), want);
  EXPECT_FALSE(ParseDate("2006-02-30").has_value());
  EXPECT_FALSE(ParseDate("31/Sep/2006").has_value());
  EXPECT_FALSE(ParseDate("yesterday").has_value());
  EXPECT_EQ(FormatDate(want), "2006-10-16");
  EXPECT_EQ(FormatDate(want, DateFormat::kDayMonthYear), "16/Oct/2006");
  EXPECT_EQ(DetectDateFormat("01/Nov/2006"), DateFormat::kDayMonthYear);
  EXPECT_EQ(DetectDateFormat("2006-11-01"), DateFormat::kIso);
}

TEST(ValueTest, EqualityIsTyped) {
  EXPECT_EQ(Value::Category("5"), Value::Category("5"));
  EXPECT_NE(Value::Category("5"), Value::Integer(5));
  EXPECT_NE(Value::Category("x"), Value::Text("x"));
  EXPECT_TRUE(Value::Missing().is_missing());
  EXPECT_EQ(Value::Integer(-3).ToString(), "-3");
}

TEST(HierarchyTest, GeneralizesAcrossLevels) {
  auto h = ValueOrDie(GeneralizationHierarchy::Build(
      "site", {"a", "b", "c"},
      {{"region", {{"a", "north"}, {"b", "north"}, {"c", "south"}}},
       {"all", {{"north", "*"}, {"south", "*"}}}}));
  EXPECT_EQ(h.height(), 2);
  EXPECT_EQ(ValueOrDie(h.Generalize("a", 0, 1)), "north");
  EXPECT_EQ(ValueOrDie(h.Generalize("c", 0, 2)), "*");
  EXPECT_EQ(ValueOrDie(h.Generalize("south", 1, 2)), "*");
  EXPECT_FALSE(h.Generalize("zzz", 0, 1).ok());
  EXPECT_FALSE(h.Generalize("a", 0, 3).ok());
  EXPECT_FALSE(h.Generalize("north", 1, 0).ok());
}

TEST(HierarchyTest, RejectsIncompleteMapping) {
  EXPECT_FALSE(GeneralizationHierarchy::Build(
                   "site", {"a", "b"}, {{"region", {{"a", "north"}}}})
                   .ok());
}

TEST(HierarchyTest, JsonRoundTrip) {
  HierarchySet set = testing::ContinentHierarchy();
  HierarchySet again = ValueOrDie(ParseHierarchies(HierarchiesToJson(set)));
  ASSERT_EQ(again.size(), 1u);
  EXPECT_EQ(ValueOrDie(again.at("continent")->Generalize("Peru", 0, 1)),
            "South America");
}

TEST(SchemaTest, ParsesRolesKindsAndDomains) {
  Schema s = testing::GaainSchema();
  ASSERT_EQ(s.size(), 8u);
  EXPECT_EQ(s.NamesWithRole(Role::kQuasiIdentifier),
            (std::vector<std::string>{"Gender", "Age"}));
  EXPECT_EQ(s.NamesWithRole(Role::kDirectIdentifier),
            std::vector<std::string>{"Subject ID"});
  const AttributeSchema* age = s.Find("Age");
  ASSERT_NE(age, nullptr);
  EXPECT_EQ(age->kind, Kind::kInteger);
  EXPECT_EQ(DomainSize(*age->domain), 31);
  EXPECT_EQ(ValueOrDie(ParseSchema(SchemaToJson(s))), s);
}

TEST(SchemaTest, RejectsBadDocuments) {
  EXPECT_FALSE(ParseSchema(json::object()).ok());
  EXPECT_FALSE(
      ParseSchema(json::parse(R"([{"name": "a", "role": "boss", "kind": "integer"}])"))
          .ok());
  EXPECT_FALSE(ParseSchema(json::parse(
                               R"([{"name": "a", "role": "neutral", "kind": "integer"},
                                   {"name": "a", "role": "neutral", "kind": "integer"}])"))
                   .ok());
  // A hierarchy that is not supplied.
  EXPECT_FALSE(ParseSchema(json::parse(R"([{"name": "a", "role": "quasi-identifier",
                                            "kind": "categorical", "hierarchy": "h"}])"))
                   .ok());
}

TEST(TableIoTest, QuotedFieldsRoundTrip) {
  DelimitedRecords records = {{"a", "b,c", "say \"hi\""}, {"1", "", "x\ny"}};
  auto parsed = ValueOrDie(ParseDelimited(FormatDelimited(records)));
  EXPECT_EQ(parsed, records);
  EXPECT_FALSE(ParseDelimited("a,\"b\n").ok());
}

TEST(TableIoTest, LoadsByHeaderName) {
  Schema s = ValueOrDie(ParseSchema(json::parse(
      R"([{"name": "age", "role": "quasi-identifier", "kind": "integer"},
          {"name": "when", "role": "neutral", "kind": "date"}])")));
  Dataset d = ValueOrDie(LoadDataset("when,age\n2001-02-03,41\n,\n", s));
  ASSERT_EQ(d.record_count(), 2u);
  EXPECT_EQ(d.row(0)[0], Value::Integer(41));
  EXPECT_EQ(d.row(0)[1], Value::FromDate(sys_days(year(2001) / 2 / 3)));
  EXPECT_TRUE(d.row(1)[0].is_missing());
  EXPECT_EQ(ValueOrDie(LoadDataset(SerializeDataset(d), s)).rows().size(), 2u);
}

TEST(TableIoTest, ReportsBadInput) {
  Schema s = ValueOrDie(ParseSchema(json::parse(
      R"([{"name": "age", "role": "quasi-identifier", "kind": "integer"}])")));
  EXPECT_FALSE(LoadDataset("", s).ok());
  EXPECT_FALSE(LoadDataset("height\n3\n", s).ok());
  EXPECT_FALSE(LoadDataset("age,extra\n3,4\n", s).ok());
  EXPECT_FALSE(LoadDataset("age\nforty\n", s).ok());
  EXPECT_FALSE(LoadDataset("age\n3,4\n", s).ok());
  EXPECT_FALSE(ReadFile("/nonexistent/file.csv").ok());
}

TEST(DatasetTest, FingerprintTracksContent) {
  Dataset a = testing::GaainRaw();
  Dataset b = testing::GaainRaw();
  EXPECT_EQ(Fingerprint(a), Fingerprint(b));
  Dataset c = ValueOrDie(LoadDataset(SerializeDataset(a), a.schema()));
  EXPECT_EQ(Fingerprint(a), Fingerprint(c));
  std::vector<Row> rows(a.rows().begin(), a.rows().end());
  rows[0][3] = Value::Integer(rows[0][3].integer() + 1);
  Dataset d = ValueOrDie(Dataset::Create(a.schema(), rows));
  EXPECT_NE(Fingerprint(a), Fingerprint(d));
}

TEST(DatasetTest, RejectsKindMismatch) {
  Schema s = ValueOrDie(ParseSchema(json::parse(
      R"([{"name": "age", "role": "quasi-identifier", "kind": "integer"}])")));
  EXPECT_FALSE(Dataset::Create(s, {{Value::Category("3")}}).ok());
  EXPECT_FALSE(Dataset::Create(s, {{Value::Integer(1), Value::Integer(2)}}).ok());
}

TEST(ValidationTest, ProfilesGaainCohort) {
  ValidationReport r = Validate(testing::GaainRaw());
  EXPECT_EQ(r.record_count, testing::kGaainRawRows);
  EXPECT_EQ(r.direct_identifiers_present, std::vector<std::string>{"Subject ID"});
  for (const auto& a : r.attributes) {
    if (a.name == "Race" || a.name == "Country" || a.name == "Ethnicity") {
      EXPECT_EQ(a.distinct_values, 1u) << a.name;
    }
    if (a.name == "Subject ID") {
      EXPECT_EQ(a.distinct_values, testing::kGaainRawRows);
    }
    if (a.name == "Gender") EXPECT_EQ(a.distinct_values, 2u);
    EXPECT_EQ(a.missing, 0u);
  }
}

TEST(BandsTest, InclusiveLabels) {
  BandSpec b = testing::FourBands();
  EXPECT_EQ(b.Labels(),
            (std::vector<std::string>{"30-34", "35-39", "40-44", ">=45"}));
  EXPECT_EQ(ValueOrDie(b.LabelFor(34)), "30-34");
  EXPECT_EQ(ValueOrDie(b.LabelFor(35)), "35-39");
  EXPECT_EQ(ValueOrDie(b.LabelFor(99)), ">=45");
  EXPECT_FALSE(b.LabelFor(29).ok());
}

TEST(BandsTest, BoundaryLabelsAndClosedTop) {
  BandSpec b;
  b.cuts = {0, 10, 20, 30, 40};
  b.style = BandLabelStyle::kBoundary;
  EXPECT_EQ(ValueOrDie(b.LabelFor(35)), "30-40");
  EXPECT_FALSE(b.LabelFor(40).ok());
  EXPECT_EQ(testing::TenYearBands().Labels(),
            (std::vector<std::string>{"30-39", "40-49", "50-59"}));
}

TEST(BandsTest, ValidationAndJson) {
  BandSpec bad;
  bad.cuts = {10, 5};
  EXPECT_FALSE(bad.Validate().ok());
  BandSpec one;
  one.cuts = {10};
  EXPECT_FALSE(one.Validate().ok());
  BandSpec labelled = testing::TenYearBands();
  labelled.labels = {"young", "mid"};
  EXPECT_FALSE(labelled.Validate().ok());
  BandSpec four = testing::FourBands();
  BandSpec back = ValueOrDie(BandSpecFromJson(BandSpecToJson(four)));
  EXPECT_EQ(back.Labels(), four.Labels());
}

TEST(PredicateTest, ParsesAndMatches) {
  Schema s = testing::GaainSchema();
  auto p = ValueOrDie(RecordPredicate::Parse("Age > 54 AND Gender = F"));
  ASSERT_EQ(p.clauses.size(), 2u);
  EXPECT_EQ(p.ToString(), "Age > 54 AND Gender = F");
  auto bound = ValueOrDie(BoundPredicate::Bind(p, s));
  Row row(8);
  row[1] = Value::Category("F");
  row[3] = Value::Integer(55);
  EXPECT_TRUE(bound.Matches(row));
  row[3] = Value::Integer(54);
  EXPECT_FALSE(bound.Matches(row));
  EXPECT_FALSE(RecordPredicate::Parse("").ok());
  EXPECT_FALSE(BoundPredicate::Bind(ValueOrDie(RecordPredicate::Parse("Height > 3")), s).ok());
  EXPECT_FALSE(BoundPredicate::Bind(ValueOrDie(RecordPredicate::Parse("Age > old")), s).ok());
}

}  // namespace
}  // namespace sdc
