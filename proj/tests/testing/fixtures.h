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

// Shared test data: the synthetic GAAIN cohort, the medical-history table and
// the adverse-event narrative.

#ifndef SDC_TESTS_TESTING_FIXTURES_H_
#define SDC_TESTS_TESTING_FIXTURES_H_

#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdc/contingency_table.h"
#include "sdc/dataset.h"
#include "sdc/internal/str.h"
#include "sdc/narrative.h"
#include "sdc/pipeline.h"

namespace sdc::testing {

// Dies with the status message. Test data is expected to be valid.
template <typename T>
T ValueOrDie(absl::StatusOr<T> v) {
  if (!v.ok()) {
    fprintf(stderr, "fixture error: %s\n", internal::Message(v.status()).c_str());
    abort();
  }
  return *std::move(v);
}

inline constexpr size_t kGaainRawRows = 252;
inline constexpr size_t kGaainReleasedRows = 242;

// Subject ID, Gender, Race, Age, Ethnicity, Country, CDR Global, MMSE.
nlohmann::json GaainSchemaJson();
Schema GaainSchema();
// The raw 252-row cohort in a fixed shuffled order.
std::string GaainCsv();
Dataset GaainRaw();
std::vector<std::string> GaainQuasiSet();

TransformStep SuppressOver54();
// 30-39, 40-49, 50-59.
BandSpec TenYearBands();
// 30-34, 35-39, 40-44, >=45.
BandSpec FourBands();

// The numbered configurations of the worked GAAIN example. Every plan
// suppresses ages over 54 first; 1 is the raw data, 6 the shared release.
AnonymizationPlan GaainPlan(int configuration);
Dataset GaainConfiguration(int configuration);

// Medical history by age group, with a zero for "No" at 40-45.
ContingencyTable HistoryTable();
std::map<std::string, std::string> HistoryPairwiseGrouping();

// The adverse-event narrative with its annotations.
AnnotatedNarrative AdverseEventNarrative();
HierarchySet ContinentHierarchy();
nlohmann::json BeyondRedactionPolicyJson();
NarrativePolicy BeyondRedactionPolicy();

}  // namespace sdc::testing

#endif  // SDC_TESTS_TESTING_FIXTURES_H_
