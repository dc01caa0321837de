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

#include "sdc/diversity.h"

#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>

#include "absl/status/status.h"
#include "sdc/internal/str.h"
#include "boost/math/special_functions/gamma.hpp"

namespace sdc {
namespace {

absl::StatusOr<size_t> SensitiveColumn(const Dataset& dataset,
                                       std::string_view sensitive) {
  auto idx = dataset.schema().IndexOf(sensitive);
  if (!idx) {
    return absl::InvalidArgumentError(
        internal::StrCat("unknown sensitive attribute '", sensitive, "'"));
  }
  return *idx;
}

nlohmann::json SignatureList(const std::vector<Signature>& sigs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : sigs) out.push_back(FormatSignature(s));
  return out;
}

// Maps each non-missing sensitive value to a category index. For ordered
// distances the index is the rank position.
absl::StatusOr<std::map<Value, size_t>> CategoryIndex(
    const Dataset& dataset, size_t column, DistanceKind kind) {
  const AttributeSchema& a = dataset.schema().at(column);
  std::map<Value, size_t> index;
  if (kind == DistanceKind::kOrderedEarthMover) {
    if (a.kind == Kind::kCategorical && a.domain &&
        std::holds_alternative<std::vector<std::string>>(*a.domain)) {
      for (const auto& token : std::get<std::vector<std::string>>(*a.domain)) {
        index.emplace(Value::Category(token), index.size());
      }
      for (const auto& row : dataset.rows()) {
        if (!row[column].is_missing() && index.count(row[column]) == 0) {
          return absl::InvalidArgumentError(internal::StrCat(
              "value '", row[column].ToString(), "' of '", a.name,
              "' is not in its declared domain"));
        }
      }
      return index;
    }
    if (a.kind != Kind::kInteger) {
      return absl::InvalidArgumentError(internal::StrCat(
          "ordered earth mover's distance needs an integer attribute or a "
          "categorical attribute with an enumerated domain; '",
          a.name, "' is ", KindName(a.kind)));
    }
  } else if (a.kind != Kind::kCategorical) {
    return absl::InvalidArgumentError(
        internal::StrCat(DistanceKindName(kind), " needs a categorical sensitive ",
                     "attribute; '", a.name, "' is ", KindName(a.kind)));
  }
  std::set<Value> values;
  for (const auto& row : dataset.rows()) {
    if (!row[column].is_missing()) values.insert(row[column]);
  }
  for (const auto& v : values) index.emplace(v, index.size());
  return index;
}

// Chi-squared upper tail for the class-versus-rest 2 x m table.
double ClassVersusRestPValue(const std::vector<int64_t>& in_class,
                             const std::vector<int64_t>& global) {
  int64_t n_class = 0, n_all = 0;
  for (size_t i = 0; i < global.size(); ++i) {
    n_class += in_class[i];
    n_all += global[i];
  }
  const int64_t n_rest = n_all - n_class;
  if (n_class == 0 || n_rest == 0) return 1.0;
  double statistic = 0.0;
  int categories = 0;
  for (size_t i = 0; i < global.size(); ++i) {
    if (global[i] == 0) continue;
    ++categories;
    const double col = static_cast<double>(global[i]);
    const double e1 = col * static_cast<double>(n_class) / n_all;
    const double e2 = col * static_cast<double>(n_rest) / n_all;
    const double o1 = static_cast<double>(in_class[i]);
    const double o2 = static_cast<double>(global[i] - in_class[i]);
    statistic += (o1 - e1) * (o1 - e1) / e1 + (o2 - e2) * (o2 - e2) / e2;
  }
  if (categories < 2) return 1.0;
  const double df = categories - 1;
  return boost::math::gamma_q(df / 2.0, statistic / 2.0);
}

}  // namespace

absl::StatusOr<DiversityReport> CheckLDiversity(
    const EquivalencePartition& partition, const Dataset& dataset,
    std::string_view sensitive, int l) {
  auto column = SensitiveColumn(dataset, sensitive);
  if (!column.ok()) return column.status();
  const AttributeSchema& a = dataset.schema().at(*column);
  if (a.kind != Kind::kCategorical) {
    return absl::InvalidArgumentError(internal::StrCat(
        "l-diversity needs a categorical sensitive attribute; '", a.name,
        "' is ", KindName(a.kind)));
  }
  DiversityReport report;
  report.sensitive = a.name;
  report.l = l;
  for (const auto& c : partition.classes()) {
    std::set<Value> distinct;
    for (size_t r : c.rows) {
      const Value& v = dataset.row(r)[*column];
      if (!v.is_missing()) distinct.insert(v);
    }
    if (distinct.size() < static_cast<size_t>(l < 0 ? 0 : l)) {
      report.failing_classes.push_back(c.signature);
    }
  }
  report.passed = report.failing_classes.empty();
  return report;
}

absl::StatusOr<ClosenessReport> CheckTCloseness(
    const EquivalencePartition& partition, const Dataset& dataset,
    std::string_view sensitive, double t, DistanceKind kind,
    ClosenessOptions options) {
  if (t < 0) {
    return absl::InvalidArgumentError(
        internal::StrCat("t must be non-negative, got ", t));
  }
  auto column = SensitiveColumn(dataset, sensitive);
  if (!column.ok()) return column.status();
  auto index = CategoryIndex(dataset, *column, kind);
  if (!index.ok()) return index.status();
  const size_t m = index->size();

  std::vector<int64_t> global(m, 0);
  for (const auto& row : dataset.rows()) {
    const Value& v = row[*column];
    if (!v.is_missing()) ++global[index->at(v)];
  }
  int64_t n_all = 0;
  for (int64_t g : global) n_all += g;

  ClosenessReport report;
  report.sensitive = dataset.schema().at(*column).name;
  report.t = t;
  report.distance_kind = kind;
  report.significance_level = options.significance_level;

  for (const auto& c : partition.classes()) {
    std::vector<int64_t> counts(m, 0);
    int64_t n_class = 0;
    for (size_t r : c.rows) {
      const Value& v = dataset.row(r)[*column];
      if (v.is_missing()) continue;
      ++counts[index->at(v)];
      ++n_class;
    }
    double value = 0.0;
    bool fails = false;
    if (kind == DistanceKind::kChiSquaredTest) {
      value = ClassVersusRestPValue(counts, global);
      fails = value < options.significance_level;
    } else {
      if (n_class > 0 && n_all > 0) {
        // Work on c_i * J - g_i * n_c so identical distributions give exactly
        // zero.
        int64_t numerator = 0;
        int64_t running = 0;
        for (size_t i = 0; i < m; ++i) {
          const int64_t diff = counts[i] * n_all - global[i] * n_class;
          if (kind == DistanceKind::kTotalVariation) {
            numerator += std::llabs(diff);
          } else {
            running += diff;
            if (i + 1 < m) numerator += std::llabs(running);
          }
        }
        const double scale = static_cast<double>(n_class) *
                             static_cast<double>(n_all);
        if (kind == DistanceKind::kTotalVariation) {
          value = static_cast<double>(numerator) / (2.0 * scale);
        } else if (m > 1) {
          value = static_cast<double>(numerator) /
                  (scale * static_cast<double>(m - 1));
        }
      }
      fails = value > t;
    }
    report.per_class_distance.push_back({c.signature, value});
    if (fails) report.failing_classes.push_back(c.signature);
  }
  report.passed = report.failing_classes.empty();
  return report;
}

std::string_view DistanceKindName(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::kTotalVariation:
      return "total-variation";
    case DistanceKind::kOrderedEarthMover:
      return "ordered-earth-mover";
    case DistanceKind::kChiSquaredTest:
      return "chi-squared-test";
  }
  return "total-variation";
}

absl::StatusOr<DistanceKind> ParseDistanceKind(std::string_view name) {
  for (auto k : {DistanceKind::kTotalVariation, DistanceKind::kOrderedEarthMover,
                 DistanceKind::kChiSquaredTest}) {
    if (DistanceKindName(k) == name) return k;
  }
  return absl::InvalidArgumentError(
      internal::StrCat("unknown distance kind '", name, "'"));
}

nlohmann::json DiversityReportToJson(const DiversityReport& report) {
  return {{"sensitive", report.sensitive},
          {"l", report.l},
          {"passed", report.passed},
          {"failing_classes", SignatureList(report.failing_classes)}};
}

nlohmann::json ClosenessReportToJson(const ClosenessReport& report) {
  nlohmann::json per_class = nlohmann::json::array();
  for (const auto& d : report.per_class_distance) {
    per_class.push_back(
        {{"signature", FormatSignature(d.signature)}, {"value", d.value}});
  }
  nlohmann::json out = {
      {"sensitive", report.sensitive},
      {"t", report.t},
      {"distance_kind", std::string(DistanceKindName(report.distance_kind))},
      {"passed", report.passed},
      {"per_class_distance", per_class},
      {"failing_classes", SignatureList(report.failing_classes)}};
  if (report.distance_kind == DistanceKind::kChiSquaredTest) {
    out["significance_level"] = report.significance_level;
  }
  return out;
}

}  // namespace sdc
