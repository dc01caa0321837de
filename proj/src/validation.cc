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

#include "sdc/validation.h"

#include <set>

namespace sdc {

ValidationReport Validate(const Dataset& dataset) {
  ValidationReport report;
  report.record_count = dataset.record_count();
  const Schema& schema = dataset.schema();
  for (size_t c = 0; c < schema.size(); ++c) {
    const AttributeSchema& a = schema.at(c);
    AttributeProfile p{a.name, a.role, a.kind};
    std::set<Value> distinct;
    for (const auto& row : dataset.rows()) {
      if (row[c].is_missing()) {
        ++p.missing;
      } else {
        distinct.insert(row[c]);
      }
    }
    p.distinct_values = distinct.size();
    if (a.role == Role::kDirectIdentifier && p.distinct_values > 0) {
      report.direct_identifiers_present.push_back(a.name);
    }
    report.attributes.push_back(std::move(p));
  }
  return report;
}

nlohmann::json ValidationReportToJson(const ValidationReport& report) {
  nlohmann::json attrs = nlohmann::json::array();
  for (const auto& p : report.attributes) {
    attrs.push_back({{"name", p.name},
                     {"role", std::string(RoleName(p.role))},
                     {"kind", std::string(KindName(p.kind))},
                     {"distinct_values", p.distinct_values},
                     {"missing", p.missing}});
  }
  return {{"record_count", report.record_count},
          {"attributes", attrs},
          {"direct_identifiers_present", report.direct_identifiers_present}};
}

}  // namespace sdc
