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

#include <atomic>
#include <thread>

#include "gtest/gtest.h"
#include "sdc/session.h"
#include "testing/fixtures.h"

namespace sdc {
namespace {

using ::sdc::testing::ValueOrDie;

std::shared_ptr<Session> NewSession(SessionStore& store) {
  ReleasePolicy policy;
  policy.thresholds = OpenReleasePreset();
  return ValueOrDie(store.Create(testing::GaainConfiguration(1), testing::GaainQuasiSet(),
                                 policy, 5));
}

TEST(SessionStoreTest, CreateFindErase) {
  SessionStore store;
  auto a = NewSession(store);
  auto b = NewSession(store);
  EXPECT_NE(a->id(), b->id());
  EXPECT_EQ(store.Find(a->id()), a);
  EXPECT_EQ(store.size(), 2u);
  EXPECT_TRUE(store.Erase(a->id()));
  EXPECT_EQ(store.Find(a->id()), nullptr);
  EXPECT_FALSE(store.Erase(a->id()));
}

TEST(SessionStoreTest, RejectsUnknownQuasiIdentifier) {
  SessionStore store;
  EXPECT_FALSE(store.Create(testing::GaainRaw(), {"Height"}, ReleasePolicy(), 5).ok());
  EXPECT_FALSE(store.Create(testing::GaainRaw(), testing::GaainQuasiSet(), ReleasePolicy(), 0)
                   .ok());
}

TEST(SessionTest, CommitAdvancesVersionAndLedger) {
  SessionStore store;
  auto s = NewSession(store);
  EXPECT_EQ(s->version(), 0u);
  EXPECT_FALSE(ValueOrDie(s->Report()).passed);
  auto c = ValueOrDie(s->Commit(TransformStep::Band("Age", testing::FourBands()), 0));
  EXPECT_EQ(c.version, 1u);
  EXPECT_EQ(s->version(), 1u);
  EXPECT_TRUE(c.entry.committed);
  RiskReport r = ValueOrDie(s->Report());
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.metrics.inverse_min, (Ratio{1, 18}));
  EXPECT_EQ(s->LedgerJson().size(), 1u);
}

TEST(SessionTest, StaleVersionIsAborted) {
  SessionStore store;
  auto s = NewSession(store);
  ASSERT_TRUE(s->Commit(TransformStep::Band("Age", testing::FourBands()), 0).ok());
  auto stale = s->Commit(TransformStep::Remove("Gender"), 0);
  EXPECT_EQ(stale.status().code(), absl::StatusCode::kAborted);
  EXPECT_EQ(s->version(), 1u);
  EXPECT_EQ(s->LedgerJson().size(), 1u);
}

TEST(SessionTest, FailedStepLeavesStateAlone) {
  SessionStore store;
  auto s = NewSession(store);
  EXPECT_FALSE(s->Commit(TransformStep::Remove("Height")).ok());
  EXPECT_EQ(s->version(), 0u);
  EXPECT_EQ(s->LedgerJson().size(), 0u);
}

TEST(SessionTest, ConcurrentCommitsOnSameVersionAdmitOne) {
  for (int round = 0; round < 20; ++round) {
    SessionStore store;
    auto s = NewSession(store);
    std::atomic<int> ok{0}, aborted{0};
    std::vector<std::thread> threads;
    for (int i = 0; i < 4; ++i) {
      threads.emplace_back([&] {
        auto r = s->Commit(TransformStep::Band("Age", testing::FourBands()), 0);
        if (r.ok()) {
          ++ok;
        } else if (r.status().code() == absl::StatusCode::kAborted) {
          ++aborted;
        }
      });
    }
    for (auto& t : threads) t.join();
    EXPECT_EQ(ok.load(), 1);
    EXPECT_EQ(aborted.load(), 3);
    EXPECT_EQ(s->version(), 1u);
    EXPECT_EQ(s->LedgerJson().size(), 1u);
  }
}

TEST(SessionTest, ReportOverrides) {
  SessionStore store;
  auto s = NewSession(store);
  ASSERT_TRUE(s->Commit(TransformStep::Band("Age", testing::FourBands())).ok());
  RiskReport strict = ValueOrDie(s->Report(std::nullopt, 20));
  EXPECT_FALSE(strict.passed);
  EXPECT_EQ(strict.k_anonymity.k, 20);
  RiskReport wide = ValueOrDie(s->Report(100));
  EXPECT_EQ(wide.metrics.small_class_fraction, (Ratio{242, 242}));
  EXPECT_EQ(ValueOrDie(s->Report()).metrics.small_class_fraction, (Ratio{0, 242}));
}

TEST(SessionTest, WhatIfAndSuggestDoNotCommit) {
  SessionStore store;
  auto s = NewSession(store);
  const uint64_t before = Fingerprint(s->current());
  ASSERT_TRUE(s->WhatIf(TransformStep::Remove("Gender")).ok());
  const std::vector<TransformStep> c = {TransformStep::Remove("Gender"),
                                        TransformStep::Band("Age", testing::FourBands())};
  EXPECT_EQ(s->Suggest(c).size(), 2u);
  EXPECT_EQ(Fingerprint(s->current()), before);
  EXPECT_EQ(s->version(), 0u);
  auto hist = ValueOrDie(s->Histogram());
  size_t records = 0;
  for (const auto& [size, n] : hist) records += size * n;
  EXPECT_EQ(records, testing::kGaainReleasedRows);
  EXPECT_DOUBLE_EQ(s->Utility().record_retention, 1.0);
}

}  // namespace
}  // namespace sdc
