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

#include "sdc/value.h"

#include <array>
#include <cctype>

#include "fmt/format.h"
#include "sdc/internal/str.h"

namespace sdc {
namespace {

constexpr std::array<std::string_view, 12> kMonthNames = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

int Digits(std::string_view s) { return *internal::ParseInt<int>(s); }

std::optional<Date> MakeDate(int y, unsigned m, unsigned d) {
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                  std::chrono::day{d}};
  if (!ymd.ok()) return std::nullopt;
  return Date{ymd};
}

std::optional<Date> ParseIso(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  if (!AllDigits(s.substr(0, 4)) || !AllDigits(s.substr(5, 2)) ||
      !AllDigits(s.substr(8, 2))) {
    return std::nullopt;
  }
  return MakeDate(Digits(s.substr(0, 4)), Digits(s.substr(5, 2)),
                  Digits(s.substr(8, 2)));
}

std::optional<Date> ParseDayMonthYear(std::string_view s) {
  // dd/Mon/yyyy
  if (s.size() != 11 || s[2] != '/' || s[6] != '/') return std::nullopt;
  if (!AllDigits(s.substr(0, 2)) || !AllDigits(s.substr(7, 4))) {
    return std::nullopt;
  }
  const int y = Digits(s.substr(7, 4));
  const int d = Digits(s.substr(0, 2));
  std::string month = internal::ToLower(s.substr(3, 3));
  for (size_t i = 0; i < kMonthNames.size(); ++i) {
    if (internal::ToLower(kMonthNames[i]) == month) {
      return MakeDate(y, static_cast<unsigned>(i + 1), d);
    }
  }
  return std::nullopt;
}

}  // namespace

Value Value::Category(std::string token) {
  Value v;
  v.v_ = CategoryToken{std::move(token)};
  return v;
}

Value Value::Integer(int64_t i) {
  Value v;
  v.v_ = i;
  return v;
}

Value Value::FromDate(Date d) {
  Value v;
  v.v_ = d;
  return v;
}

Value Value::Text(std::string text) {
  Value v;
  v.v_ = TextToken{std::move(text)};
  return v;
}

const std::string& Value::token() const {
  if (const auto* c = std::get_if<CategoryToken>(&v_)) return c->token;
  return std::get<TextToken>(v_).token;
}

std::string Value::ToString() const {
  switch (type()) {
    case ValueType::kMissing:
      return "";
    case ValueType::kCategory:
    case ValueType::kText:
      return token();
    case ValueType::kInteger:
      return std::to_string(integer());
    case ValueType::kDate:
      return FormatDate(date());
  }
  return "";
}

std::optional<Date> ParseDate(std::string_view text) {
  if (auto d = ParseIso(text)) return d;
  return ParseDayMonthYear(text);
}

std::optional<DateFormat> DetectDateFormat(std::string_view text) {
  if (ParseIso(text)) return DateFormat::kIso;
  if (ParseDayMonthYear(text)) return DateFormat::kDayMonthYear;
  return std::nullopt;
}

std::string FormatDate(Date d, DateFormat format) {
  std::chrono::year_month_day ymd{d};
  int y = static_cast<int>(ymd.year());
  unsigned m = static_cast<unsigned>(ymd.month());
  unsigned day = static_cast<unsigned>(ymd.day());
  if (format == DateFormat::kDayMonthYear) {
    return fmt::format("{:02}/{}/{:04}", day, kMonthNames[m - 1], y);
  }
  return fmt::format("{:04}-{:02}-{:02}", y, m, day);
}

}  // namespace sdc
