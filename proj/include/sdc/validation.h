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

#ifndef SDC_VALIDATION_H_
#define SDC_VALIDATION_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "sdc/dataset.h"

namespace sdc {

struct AttributeProfile {
  std::string name;
  Role role;
  Kind kind;
  size_t distinct_values = 0;  // missing is not counted as a value
  size_t missing = 0;
};

struct ValidationReport {
  size_t record_count = 0;
  std::vector<AttributeProfile> attributes;
  // Direct identifiers that are still present (and not all missing).
  std::vector<std::string> direct_identifiers_present;
};

ValidationReport Validate(const Dataset& dataset);
nlohmann::json ValidationReportToJson(const ValidationReport& report);

}  // namespace sdc

#endif  // SDC_VALIDATION_H_
