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
#include <regex>

#include "gtest/gtest.h"
#include "sdc/contingency_table.h"
#include "sdc/narrative.h"
#include "testing/fixtures.h"

namespace sdc {
namespace {

using nlohmann::json;
using ::sdc::testing::ValueOrDie;

std::string Glyph() { return std::string(kDefaultRedactionGlyph); }

TEST(AuditTableTest, FlagsThreeCellsInHistoryTable) {
  ContingencyTable t = testing::HistoryTable();
  TableAudit audit = ValueOrDie(AuditTable(t, 5));
  ASSERT_EQ(audit.flags.size(), 3u);
  const CellFlag* zero = nullptr;
  std::set<int64_t> counts;
  for (const auto& f : audit.flags) {
    counts.insert(f.count);
    if (f.count == 0) zero = &f;
  }
  EXPECT_EQ(counts, (std::set<int64_t>{0, 2, 4}));
  ASSERT_NE(zero, nullptr);
  EXPECT_EQ(zero->reason, CellFlagReason::kZeroComplement);
  EXPECT_EQ(t.columns()[zero->column], "40-45");
  // The zero reveals that both 40-45 year olds had the condition.
  EXPECT_NE(zero->note.find("all 2"), std::string::npos) << zero->note;
  EXPECT_NE(zero->note.find("Yes"), std::string::npos) << zero->note;
  EXPECT_FALSE(audit.clean());
}

TEST(AuditTableTest, PairwiseMergeMatchesRegroupedTable) {
  ContingencyTable merged = ValueOrDie(
      MergeTableCategories(testing::HistoryTable(), testing::HistoryPairwiseGrouping()));
  EXPECT_EQ(merged.columns(),
            (std::vector<std::string>{"40-50", "50-60", "60-70", ">70"}));
  EXPECT_EQ(merged.counts(),
            (std::vector<std::vector<int64_t>>{{5, 38, 47, 16}, {6, 25, 29, 11}}));
  EXPECT_TRUE(ValueOrDie(AuditTable(merged, 5)).clean());
  EXPECT_EQ(merged.GrandTotal(), testing::HistoryTable().GrandTotal());
}

TEST(AuditTableTest, MergeRejectsBadGroupings) {
  ContingencyTable t = testing::HistoryTable();
  auto grouping = testing::HistoryPairwiseGrouping();
  grouping.erase(">70");
  EXPECT_FALSE(MergeTableCategories(t, grouping).ok());
  grouping = testing::HistoryPairwiseGrouping();
  grouping["nonsense"] = "x";
  EXPECT_FALSE(MergeTableCategories(t, grouping).ok());
  // 40-45 and 55-60 are not neighbours.
  grouping = testing::HistoryPairwiseGrouping();
  grouping["40-45"] = "50-60";
  EXPECT_EQ(MergeTableCategories(t, grouping).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(AuditTableTest, ZeroInWideDimensionOnlyWarns) {
  ContingencyTable t = ValueOrDie(ContingencyTable::Create(
      {"a", "b", "c"}, {"x", "y", "z"}, {{0, 9, 9}, {8, 9, 9}, {7, 9, 9}}));
  TableAudit audit = ValueOrDie(AuditTable(t, 5));
  // Both dimensions have three levels, so the zero pins nothing down.
  EXPECT_TRUE(audit.flags.empty());
  EXPECT_FALSE(audit.warnings.empty());
  // With two columns the same zero says every "a" is a "y".
  ContingencyTable two = ValueOrDie(ContingencyTable::Create(
      {"a", "b", "c"}, {"x", "y"}, {{0, 9}, {8, 9}, {7, 9}}));
  TableAudit flagged = ValueOrDie(AuditTable(two, 5));
  ASSERT_EQ(flagged.flags.size(), 1u);
  EXPECT_EQ(flagged.flags[0].reason, CellFlagReason::kZeroComplement);
}

TEST(AuditTableTest, SmallTablesAndErrors) {
  EXPECT_FALSE(ContingencyTable::Create({"a"}, {"x", "y"}, {{1}}).ok());
  EXPECT_FALSE(ContingencyTable::Create({"a"}, {"x"}, {{-1}}).ok());
  ContingencyTable t = ValueOrDie(ContingencyTable::Create({"a"}, {"x"}, {{1}}));
  EXPECT_FALSE(AuditTable(t, 0).ok());
  EXPECT_EQ(ValueOrDie(AuditTable(t, 1)).flags.size(), 0u);
  EXPECT_EQ(ValueOrDie(AuditTable(t, 2)).flags.size(), 1u);
}

TEST(AuditTableTest, DelimitedAndJsonRoundTrip) {
  ContingencyTable t = testing::HistoryTable();
  ContingencyTable csv = ValueOrDie(ParseTableDelimited(FormatTableDelimited(t)));
  EXPECT_EQ(csv.rows(), t.rows());
  EXPECT_EQ(csv.columns(), t.columns());
  EXPECT_EQ(csv.counts(), t.counts());
  ContingencyTable js = ValueOrDie(TableFromJson(TableToJson(t)));
  EXPECT_EQ(js.counts(), t.counts());
  EXPECT_EQ(ValueOrDie(GroupingFromJson(json(testing::HistoryPairwiseGrouping()))),
            testing::HistoryPairwiseGrouping());
  EXPECT_FALSE(ParseTableDelimited("h,a\nr,x\n").ok());
  json audit = TableAuditToJson(t, ValueOrDie(AuditTable(t, 5)));
  EXPECT_EQ(audit["flags"].size(), 3u);
}

TEST(NarrativeTest, RedactAllBlocksEverySpan) {
  AnnotatedNarrative n = testing::AdverseEventNarrative();
  NarrativeResult r = ValueOrDie(ApplyNarrativePolicy(n, NarrativePolicy::RedactAll()));
  for (const char* token : {"000478", "male", "35", "Argentina", "2006", "rash", "face"}) {
    EXPECT_EQ(r.text.find(token), std::string::npos) << token;
  }
  EXPECT_NE(r.text.find("Subject '" + Glyph() + "'"), std::string::npos) << r.text;
  EXPECT_EQ(r.log.size(), n.spans.size());
}

TEST(NarrativeTest, BeyondRedaction) {
  AnnotatedNarrative n = testing::AdverseEventNarrative();
  NarrativeResult r = ValueOrDie(ApplyNarrativePolicy(n, testing::BeyondRedactionPolicy()));
  const std::string g = Glyph();
  std::smatch m;
  ASSERT_TRUE(std::regex_search(r.text, m, std::regex("Subject '([0-9]{6})'"))) << r.text;
  const std::string pseudonym = m[1];
  EXPECT_NE(pseudonym, "000478");
  const std::string want =
      "Subject '" + pseudonym + "' " + g +
      ", aged 30-40, from South America, re-started IP on 15/Sep/2005 and "
      "developed a [Skin and subcutaneous tissue disorders] on " + g + " " + g +
      " on 16/Sep/2005. IP was stopped on 01/Oct/2005";
  EXPECT_EQ(r.text, want);
}

TEST(NarrativeTest, LogHoldsPositionsNotContent) {
  AnnotatedNarrative n = testing::AdverseEventNarrative();
  NarrativeResult r = ValueOrDie(ApplyNarrativePolicy(n, testing::BeyondRedactionPolicy()));
  const std::string log = NarrativeLogToJson(r.log).dump();
  for (const char* token : {"000478", "male", "Argentina", "16/Oct/2006", "rash"}) {
    EXPECT_EQ(log.find(token), std::string::npos) << token;
  }
  for (const auto& e : r.log) {
    EXPECT_LE(e.output_start, e.output_end);
    EXPECT_LE(e.output_end, r.text.size());
    if (e.action == ActionKind::kDrop) {
      EXPECT_EQ(e.output_start, e.output_end);
    }
  }
}

TEST(NarrativeTest, SubjectRecodeIsStableAcrossMentions) {
  AnnotatedNarrative n;
  n.text = "Subject 000478 met 000479; later 000478 withdrew.";
  auto add = [&n](std::string_view token, size_t from) {
    const size_t at = n.text.find(token, from);
    n.spans.push_back({at, at + token.size(), SpanCategory::kSubjectId});
    return at + token.size();
  };
  size_t next = add("000478", 0);
  next = add("000479", next);
  add("000478", next);
  NarrativeResult r = ValueOrDie(ApplyNarrativePolicy(n, testing::BeyondRedactionPolicy()));
  std::regex ids("[0-9]{6}");
  std::vector<std::string> found;
  for (auto it = std::sregex_iterator(r.text.begin(), r.text.end(), ids);
       it != std::sregex_iterator(); ++it) {
    found.push_back(it->str());
  }
  ASSERT_EQ(found.size(), 3u) << r.text;
  EXPECT_EQ(found[0], found[2]);
  EXPECT_NE(found[0], found[1]);
  EXPECT_EQ(r.text.find("000478"), std::string::npos);
}

TEST(NarrativeTest, SeededOffsetsAreSharedPerSubject) {
  json policy = testing::BeyondRedactionPolicyJson();
  policy["offset"] = {{"max_abs_days", 365}};
  policy["offset_seed"] = 5;
  NarrativePolicy p = ValueOrDie(NarrativePolicyFromJson(policy, testing::ContinentHierarchy()));
  AnnotatedNarrative n = testing::AdverseEventNarrative();
  NarrativeResult r = ValueOrDie(ApplyNarrativePolicy(n, p));
  std::regex dates("[0-9]{2}/[A-Z][a-z]{2}/[0-9]{4}");
  std::vector<Date> out;
  for (auto it = std::sregex_iterator(r.text.begin(), r.text.end(), dates);
       it != std::sregex_iterator(); ++it) {
    out.push_back(*ParseDate(it->str()));
  }
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ((out[1] - out[0]).count(), 1);
  EXPECT_EQ((out[2] - out[0]).count(), 16);
  EXPECT_NE(out[0], *ParseDate("16/Oct/2006"));
}

TEST(NarrativeTest, RejectsBadAnnotations) {
  AnnotatedNarrative n;
  n.text = "abc";
  n.spans = {{0, 5, SpanCategory::kFreeText}};
  EXPECT_FALSE(n.Validate().ok());
  n.spans = {{0, 2, SpanCategory::kFreeText}, {1, 3, SpanCategory::kFreeText}};
  EXPECT_FALSE(ApplyNarrativePolicy(n, NarrativePolicy::RedactAll()).ok());
  n.spans = {{0, 3, SpanCategory::kDate}};
  NarrativePolicy p = testing::BeyondRedactionPolicy();
  EXPECT_FALSE(ApplyNarrativePolicy(n, p).ok());
}

TEST(NarrativeTest, JsonRoundTrip) {
  AnnotatedNarrative n = testing::AdverseEventNarrative();
  AnnotatedNarrative back = ValueOrDie(NarrativeFromJson(NarrativeToJson(n)));
  EXPECT_EQ(back.text, n.text);
  ASSERT_EQ(back.spans.size(), n.spans.size());
  EXPECT_EQ(back.spans[4].action, ActionKind::kDrop);
  EXPECT_FALSE(NarrativeFromJson(json::parse(R"({"spans": []})")).ok());
  EXPECT_FALSE(NarrativePolicyFromJson(json::parse(R"({"actions": {"age": "dance"}})"), {})
                   .ok());
}

}  // namespace
}  // namespace sdc
