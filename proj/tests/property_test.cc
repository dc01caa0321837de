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

// Randomized checks against brute-force oracles. Each property runs
// kCases datasets drawn from a fixed seed.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "sdc/diversity.h"
#include "sdc/partition.h"
#include "sdc/risk_metrics.h"
#include "sdc/risk_report.h"
#include "sdc/table_io.h"
#include "sdc/transforms.h"
#include "testing/fixtures.h"
#include "testing/random_data.h"

namespace sdc {
namespace {

using ::sdc::testing::ValueOrDie;

constexpr int kCases = 250;

size_t Col(const Dataset& d, std::string_view name) { return *d.schema().IndexOf(name); }

std::string Key(const Dataset& d, size_t row, std::span<const std::string> names) {
  std::string key;
  for (const auto& n : names) {
    const auto c = d.schema().IndexOf(n);
    if (!c) continue;
    const Value& v = d.row(row)[*c];
    key += v.is_missing() ? std::string("\x01") : v.ToString();
    key += '\x1f';
  }
  return key;
}

// Rows grouped pairwise: the class of a row is the lowest row it matches.
std::vector<size_t> BruteForceClasses(const Dataset& d, std::span<const std::string> names) {
  std::vector<size_t> leader(d.record_count());
  for (size_t i = 0; i < d.record_count(); ++i) {
    leader[i] = i;
    for (size_t j = 0; j < i; ++j) {
      if (Key(d, i, names) == Key(d, j, names)) {
        leader[i] = leader[j];
        break;
      }
    }
  }
  return leader;
}

void ExpectNotIncreasing(const RiskMetrics& before, const RiskMetrics& after) {
  EXPECT_LE(after.small_class_fraction.value(), before.small_class_fraction.value() + 1e-12);
  EXPECT_LE(after.inverse_average.value(), before.inverse_average.value() + 1e-12);
  EXPECT_LE(after.inverse_min.value(), before.inverse_min.value() + 1e-12);
}

TEST(PartitionProperty, MatchesBruteForceAndSumsToTotal) {
  std::mt19937_64 engine(101);
  for (int i = 0; i < kCases; ++i) {
    Dataset d = testing::RandomDataset(engine);
    std::vector<std::string> q = testing::RandomQuasiSet();
    q.resize(testing::Uniform(engine, 1, 3));
    EquivalencePartition p = ValueOrDie(Partition(d, q));

    size_t sum = 0;
    std::set<size_t> seen;
    for (const auto& c : p.classes()) {
      ASSERT_GT(c.size(), 0u);
      sum += c.size();
      for (size_t r : c.rows) EXPECT_TRUE(seen.insert(r).second) << "row in two classes";
    }
    EXPECT_EQ(sum, d.record_count());
    EXPECT_EQ(p.total(), d.record_count());

    const std::vector<size_t> leader = BruteForceClasses(d, q);
    EXPECT_EQ(p.class_count(), std::set<size_t>(leader.begin(), leader.end()).size());
    for (const auto& c : p.classes()) {
      for (size_t r : c.rows) EXPECT_EQ(leader[r], leader[c.rows.front()]);
    }

    RiskMetrics m = ValueOrDie(ComputeRiskMetrics(p));
    size_t small = 0, smallest = d.record_count();
    for (const auto& c : p.classes()) {
      if (c.size() < static_cast<size_t>(kDefaultTau)) small += c.size();
      smallest = std::min(smallest, c.size());
    }
    EXPECT_EQ(m.small_class_fraction, (Ratio{static_cast<int64_t>(small),
                                             static_cast<int64_t>(d.record_count())}));
    EXPECT_EQ(m.inverse_average.numerator, static_cast<int64_t>(p.class_count()));
    EXPECT_EQ(m.inverse_min, (Ratio{1, static_cast<int64_t>(smallest)}));
  }
}

TEST(CoarseningProperty, MetricsAndUtilityNeverIncrease) {
  std::mt19937_64 engine(202);
  BandSpec bands;
  bands.cuts = {0, 30, 50, 70};
  bands.open_top = true;
  const auto& q = testing::RandomQuasiSet();
  for (int i = 0; i < kCases; ++i) {
    Dataset original = testing::RandomDataset(engine);
    // A random chain of coarsening steps, always ending fully coarsened.
    std::vector<Dataset> chain = {original};
    Dataset cur = original;
    std::vector<int> order = {0, 1, 2, 3};
    std::shuffle(order.begin(), order.end(), engine);
    for (int op : order) {
      switch (op) {
        case 0:
          if (!cur.schema().IndexOf("site")) break;
          cur = ValueOrDie(GeneralizeToLevel(cur, "site", 1));
          chain.push_back(cur);
          cur = ValueOrDie(GeneralizeToLevel(cur, "site", 2));
          break;
        case 1:
          cur = ValueOrDie(GeneralizeToBands(cur, "age", bands));
          break;
        case 2:
          cur = ValueOrDie(RemoveAttribute(cur, "sex"));
          break;
        case 3:
          cur = ValueOrDie(RemoveAttribute(cur, "site"));
          break;
      }
      chain.push_back(cur);
    }
    RiskMetrics prev = ValueOrDie(ComputeRiskMetrics(ValueOrDie(PartitionDeclared(chain[0], q))));
    UtilityProxies prev_u = UtilityScore(chain[0], original, q);
    EXPECT_DOUBLE_EQ(prev_u.granularity, 1.0);
    for (size_t s = 1; s < chain.size(); ++s) {
      RiskMetrics next =
          ValueOrDie(ComputeRiskMetrics(ValueOrDie(PartitionDeclared(chain[s], q))));
      ExpectNotIncreasing(prev, next);
      UtilityProxies u = UtilityScore(chain[s], original, q);
      EXPECT_LE(u.granularity, prev_u.granularity + 1e-12);
      EXPECT_LE(u.attribute_retention, prev_u.attribute_retention + 1e-12);
      EXPECT_DOUBLE_EQ(u.record_retention, 1.0);
      prev = next;
      prev_u = u;
    }
    // Suppression only lowers record retention.
    auto cut = ValueOrDie(SuppressRecords(
        original, ValueOrDie(RecordPredicate::Parse("age > 60"))));
    UtilityProxies u = UtilityScore(cut.dataset, original, q);
    EXPECT_LE(u.record_retention, 1.0);
    EXPECT_DOUBLE_EQ(u.record_retention,
                     static_cast<double>(cut.dataset.record_count()) / original.record_count());
  }
}

TEST(OffsetProperty, SubjectDateDifferencesArePreserved) {
  std::mt19937_64 engine(303);
  const std::vector<std::string> cols = {"visit", "event"};
  for (int i = 0; i < kCases; ++i) {
    Dataset d = testing::RandomDataset(engine);
    SeededOffset source{engine(), static_cast<int>(testing::Uniform(engine, 1, 400)), "subject"};
    Dataset out = ValueOrDie(OffsetDates(d, cols, source));
    const size_t subj = Col(d, "subject"), v = Col(d, "visit"), e = Col(d, "event");
    const size_t n = std::min<size_t>(d.record_count(), 60);
    for (size_t a = 0; a < n; ++a) {
      const int shift = (out.row(a)[v].date() - d.row(a)[v].date()).count();
      EXPECT_NE(shift, 0);
      EXPECT_LE(std::abs(shift), source.max_abs_days);
      EXPECT_EQ((out.row(a)[e].date() - d.row(a)[e].date()).count(), shift);
      for (size_t b = a + 1; b < n; ++b) {
        if (d.row(a)[subj] != d.row(b)[subj]) continue;
        for (size_t x : {v, e}) {
          for (size_t y : {v, e}) {
            EXPECT_EQ((out.row(a)[x].date() - out.row(b)[y].date()).count(),
                      (d.row(a)[x].date() - d.row(b)[y].date()).count());
          }
        }
      }
    }
  }
}

struct Oracle {
  std::map<std::string, std::vector<size_t>> classes;
};

Oracle GroupRows(const Dataset& d, std::span<const std::string> q) {
  Oracle o;
  for (size_t r = 0; r < d.record_count(); ++r) o.classes[Key(d, r, q)].push_back(r);
  return o;
}

TEST(DiversityProperty, LDiversityMatchesExhaustiveCount) {
  std::mt19937_64 engine(404);
  testing::RandomDatasetOptions opts;
  opts.max_rows = 12;
  for (int i = 0; i < kCases; ++i) {
    opts.outcome_levels = static_cast<int>(testing::Uniform(engine, 1, 4));
    Dataset d = testing::RandomDataset(engine, opts);
    const std::vector<std::string> q = {"sex"};
    const int l = static_cast<int>(testing::Uniform(engine, 1, 4));
    DiversityReport rep =
        ValueOrDie(CheckLDiversity(ValueOrDie(Partition(d, q)), d, "outcome", l));
    const size_t out = Col(d, "outcome");
    size_t failing = 0;
    for (const auto& [key, rows] : GroupRows(d, q).classes) {
      std::set<std::string> distinct;
      for (size_t r : rows) {
        if (!d.row(r)[out].is_missing()) distinct.insert(d.row(r)[out].ToString());
      }
      if (distinct.size() < static_cast<size_t>(l)) ++failing;
    }
    EXPECT_EQ(rep.failing_classes.size(), failing);
    EXPECT_EQ(rep.passed, failing == 0);
  }
}

TEST(DiversityProperty, TClosenessMatchesExhaustiveDistance) {
  std::mt19937_64 engine(505);
  testing::RandomDatasetOptions opts;
  opts.max_rows = 12;
  const std::vector<std::string> domain = {"o0", "o1", "o2", "o3"};
  for (int i = 0; i < kCases; ++i) {
    Dataset d = testing::RandomDataset(engine, opts);
    const std::vector<std::string> q = {"sex"};
    const double t = testing::Uniform(engine, 0, 100) / 100.0;
    EquivalencePartition p = ValueOrDie(Partition(d, q));
    ClosenessReport tv =
        ValueOrDie(CheckTCloseness(p, d, "outcome", t, DistanceKind::kTotalVariation));
    ClosenessReport emd =
        ValueOrDie(CheckTCloseness(p, d, "outcome", t, DistanceKind::kOrderedEarthMover));
    const size_t out = Col(d, "outcome");

    auto distribution = [&](std::span<const size_t> rows) {
      std::map<std::string, double> f;
      double n = 0;
      for (size_t r : rows) {
        if (d.row(r)[out].is_missing()) continue;
        f[d.row(r)[out].ToString()] += 1;
        n += 1;
      }
      for (auto& [k, v] : f) v /= n;
      return f;
    };
    std::vector<size_t> all(d.record_count());
    std::iota(all.begin(), all.end(), 0);
    auto global = distribution(all);

    ASSERT_EQ(tv.per_class_distance.size(), p.class_count());
    size_t tv_fail = 0, emd_fail = 0;
    bool tv_boundary = false, emd_boundary = false;
    for (size_t c = 0; c < p.class_count(); ++c) {
      auto local = distribution(p.classes()[c].rows);
      double want_tv = 0, want_emd = 0, cum = 0;
      for (size_t k = 0; k < domain.size(); ++k) {
        const double diff = local[domain[k]] - global[domain[k]];
        want_tv += std::abs(diff) / 2;
        cum += diff;
        if (k + 1 < domain.size()) want_emd += std::abs(cum) / (domain.size() - 1);
      }
      EXPECT_NEAR(tv.per_class_distance[c].value, want_tv, 1e-12);
      EXPECT_NEAR(emd.per_class_distance[c].value, want_emd, 1e-12);
      tv_boundary |= std::abs(want_tv - t) < 1e-9;
      emd_boundary |= std::abs(want_emd - t) < 1e-9;
      if (want_tv > t) ++tv_fail;
      if (want_emd > t) ++emd_fail;
    }
    if (!tv_boundary) EXPECT_EQ(tv.failing_classes.size(), tv_fail);
    if (!emd_boundary) EXPECT_EQ(emd.failing_classes.size(), emd_fail);
  }
}

TEST(PseudonymProperty, BijectiveAndLeavesNoOriginals) {
  std::mt19937_64 engine(606);
  for (int i = 0; i < kCases; ++i) {
    Dataset d = testing::RandomDataset(engine);
    Dataset out = ValueOrDie(Pseudonymize(d, "id", engine()));
    const size_t c = Col(d, "id");
    std::map<std::string, std::string> forward, backward;
    for (size_t r = 0; r < d.record_count(); ++r) {
      const std::string a = d.row(r)[c].ToString(), b = out.row(r)[c].ToString();
      EXPECT_TRUE(forward.emplace(a, b).first->second == b);
      EXPECT_TRUE(backward.emplace(b, a).first->second == a);
    }
    EXPECT_EQ(forward.size(), backward.size());
    const std::string text = SerializeDataset(out);
    for (const auto& [original, pseudonym] : forward) {
      EXPECT_EQ(text.find(original), std::string::npos) << original;
    }
  }
}

}  // namespace
}  // namespace sdc
