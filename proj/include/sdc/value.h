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

#ifndef SDC_VALUE_H_
#define SDC_VALUE_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace sdc {

using Date = std::chrono::sys_days;

enum class ValueType { kMissing, kCategory, kInteger, kDate, kText };

// A single cell. Missing is a distinct state, never an empty category token.
class Value {
 public:
  Value() = default;

  static Value Missing() { return Value(); }
  static Value Category(std::string token);
  static Value Integer(int64_t v);
  static Value FromDate(Date d);
  static Value Text(std::string text);

  ValueType type() const { return static_cast<ValueType>(v_.index()); }
  bool is_missing() const { return type() == ValueType::kMissing; }

  // Token for kCategory and kText values.
  const std::string& token() const;
  int64_t integer() const { return std::get<int64_t>(v_); }
  Date date() const { return std::get<Date>(v_); }

  // Cell rendering: missing renders as "", dates as ISO-8601.
  std::string ToString() const;

  friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
  // Orders by type first, then by payload.
  friend bool operator<(const Value& a, const Value& b) { return a.v_ < b.v_; }

 private:
  struct CategoryToken {
    std::string token;
    friend bool operator==(const CategoryToken&, const CategoryToken&) = default;
    friend bool operator<(const CategoryToken& a, const CategoryToken& b) {
      return a.token < b.token;
    }
  };
  struct TextToken {
    std::string token;
    friend bool operator==(const TextToken&, const TextToken&) = default;
    friend bool operator<(const TextToken& a, const TextToken& b) {
      return a.token < b.token;
    }
  };

  std::variant<std::monostate, CategoryToken, int64_t, Date, TextToken> v_;
};

enum class DateFormat { kIso, kDayMonthYear };

// Accepts "2006-10-16" and "16/Oct/2006" (month name case-insensitive).
std::optional<Date> ParseDate(std::string_view text);
// Reports which of the two accepted formats `text` is written in.
std::optional<DateFormat> DetectDateFormat(std::string_view text);
std::string FormatDate(Date d, DateFormat format = DateFormat::kIso);

}  // namespace sdc

#endif  // SDC_VALUE_H_
