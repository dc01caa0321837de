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

#ifndef SDC_INTERNAL_JSON_H_
#define SDC_INTERNAL_JSON_H_

#include "json.hpp"

namespace sdc::internal {

// Parsed documents store non-negative integers as unsigned, values assigned in
// code as signed. Accept both.
inline bool IsNonNegativeInteger(const nlohmann::json& j) {
  return j.is_number_unsigned() ||
         (j.is_number_integer() && j.get<int64_t>() >= 0);
}

}  // namespace sdc::internal

#endif  // SDC_INTERNAL_JSON_H_
