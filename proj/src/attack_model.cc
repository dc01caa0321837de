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

#include "sdc/attack_model.h"

#include <cmath>
#include <set>
#include <utility>

#include "sdc/internal/str.h"

namespace sdc {
namespace {

constexpr std::pair<AttackType, std::string_view> kAttackNames[] = {
    {AttackType::kDeliberate, "deliberate"},
    {AttackType::kInadvertent, "inadvertent"},
    {AttackType::kBreach, "breach"},
    {AttackType::kDemonstration, "demonstration"},
    {AttackType::kNosyNeighbour, "nosy-neighbour"},
};

// Risk threshold -> minimum class size as used by EMA Policy 0070 guidance and
// Health Canada.
constexpr std::pair<double, int> kRegulatorTable[] = {
    {0.5, 2}, {0.33, 3}, {0.2, 5}, {0.1, 10}, {0.09, 11}, {0.05, 20},
};

constexpr double kTolerance = 1e-9;

bool IsProbability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

std::string_view AttackTypeName(AttackType type) {
  for (const auto& [t, name] : kAttackNames) {
    if (t == type) return name;
  }
  return "deliberate";
}

absl::StatusOr<AttackType> ParseAttackType(std::string_view name) {
  const std::string lower = internal::ToLower(name);
  for (const auto& [t, n] : kAttackNames) {
    if (n == lower) return t;
  }
  if (lower == "nosy-neighbor") return AttackType::kNosyNeighbour;
  return absl::InvalidArgumentError(
      internal::StrCat("unknown attack type '", name, "'"));
}

absl::StatusOr<CombinedRisk> ComputeCombinedRisk(
    std::span<const AttackScenario> scenarios) {
  CombinedRisk out;
  std::set<std::string, std::less<>> labels;
  for (const auto& s : scenarios) {
    if (!labels.insert(s.label).second) {
      return absl::InvalidArgumentError(
          internal::StrCat("duplicate scenario label '", s.label, "'"));
    }
    if (!IsProbability(s.p_attack) || !IsProbability(s.p_reid_given_attack)) {
      return absl::InvalidArgumentError(internal::StrCat(
          "scenario '", s.label, "': probabilities must lie in [0, 1], got p=",
          s.p_attack, " q=", s.p_reid_given_attack));
    }
    ScenarioTerm term;
    term.label = s.label;
    term.attack_type = s.attack_type;
    term.p_attack = s.p_attack;
    term.p_reid_given_attack = s.p_reid_given_attack;
    term.term = s.p_attack * s.p_reid_given_attack;
    term.certain_disclosure = s.certain_disclosure();
    out.total += term.term;
    out.any_certain_disclosure |= term.certain_disclosure;
    out.breakdown.push_back(std::move(term));
  }
  return out;
}

std::string_view ClassSizeConventionName(ClassSizeConvention c) {
  return c == ClassSizeConvention::kGeneric ? "generic" : "regulator-preset";
}

absl::StatusOr<ClassSizeConvention> ParseClassSizeConvention(
    std::string_view name) {
  if (name == "generic") return ClassSizeConvention::kGeneric;
  if (name == "regulator-preset" || name == "regulator") {
    return ClassSizeConvention::kRegulatorPreset;
  }
  return absl::InvalidArgumentError(
      internal::StrCat("unknown class-size convention '", name, "'"));
}

absl::StatusOr<int> RequiredMinClassSize(double threshold,
                                         ClassSizeConvention convention) {
  if (!(threshold > 0.0) || threshold > 1.0) {
    return absl::InvalidArgumentError(internal::StrCat(
        "risk threshold must lie in (0, 1], got ", threshold));
  }
  if (convention == ClassSizeConvention::kRegulatorPreset) {
    for (const auto& [t, k] : kRegulatorTable) {
      if (std::abs(t - threshold) < kTolerance) return k;
    }
    return absl::NotFoundError(internal::StrCat(
        "no regulator convention for threshold ", threshold,
        "; use the generic convention"));
  }
  // The tolerance keeps 1/0.2 from rounding up to 6.
  return std::max(1, static_cast<int>(std::ceil(1.0 / threshold - kTolerance)));
}

std::string_view EnvironmentName(Environment e) {
  return e == Environment::kOpenRelease ? "open-release" : "controlled";
}

const PolicyThresholds& OpenReleasePreset() {
  static const PolicyThresholds kPreset{"open-release", 0.09, 11, 1.0,
                                        Environment::kOpenRelease};
  return kPreset;
}

const PolicyThresholds& ControlledPreset() {
  static const PolicyThresholds kPreset{"controlled", 0.2, 5, 0.05,
                                        Environment::kControlled};
  return kPreset;
}

absl::StatusOr<PolicyThresholds> PresetByName(std::string_view name) {
  const std::string lower = internal::ToLower(name);
  if (lower == "open-release") return OpenReleasePreset();
  if (lower == "controlled") return ControlledPreset();
  return absl::NotFoundError(internal::StrCat(
      "unknown policy preset '", name, "' (expected open-release or controlled)"));
}

absl::Status ValidateThresholds(const PolicyThresholds& p) {
  if (!(p.risk_threshold > 0.0) || p.risk_threshold > 1.0) {
    return absl::InvalidArgumentError(internal::StrCat(
        "risk_threshold must lie in (0, 1], got ", p.risk_threshold));
  }
  if (p.min_class_size < 1) {
    return absl::InvalidArgumentError(internal::StrCat(
        "min_class_size must be at least 1, got ", p.min_class_size));
  }
  if (!IsProbability(p.assumed_p_attack)) {
    return absl::InvalidArgumentError(internal::StrCat(
        "assumed_p_attack must lie in [0, 1], got ", p.assumed_p_attack));
  }
  return absl::OkStatus();
}

PolicyThresholds ClassifyEnvironment(const EnvironmentControls& controls) {
  return controls.all() ? ControlledPreset() : OpenReleasePreset();
}

absl::StatusOr<ReciprocalEstimate> NaiveReciprocalEstimate(
    const EquivalencePartition& partition) {
  if (partition.empty()) {
    return absl::FailedPreconditionError("partition has no records");
  }
  ReciprocalEstimate out;
  out.max_q = 1.0 / static_cast<double>(partition.min_size());
  out.mean_q = static_cast<double>(partition.class_count()) /
               static_cast<double>(partition.total());
  return out;
}

nlohmann::json CombinedRiskToJson(const CombinedRisk& risk) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : risk.breakdown) {
    terms.push_back({{"label", t.label},
                     {"attack_type", std::string(AttackTypeName(t.attack_type))},
                     {"p_attack", t.p_attack},
                     {"p_reid_given_attack", t.p_reid_given_attack},
                     {"term", t.term},
                     {"certain_disclosure", t.certain_disclosure}});
  }
  return {{"total", risk.total},
          {"any_certain_disclosure", risk.any_certain_disclosure},
          {"breakdown", terms}};
}

nlohmann::json PolicyThresholdsToJson(const PolicyThresholds& p) {
  return {{"name", p.name},
          {"risk_threshold", p.risk_threshold},
          {"min_class_size", p.min_class_size},
          {"assumed_p_attack", p.assumed_p_attack},
          {"environment", std::string(EnvironmentName(p.environment))}};
}

absl::StatusOr<PolicyThresholds> PolicyThresholdsFromJson(
    const nlohmann::json& j) {
  if (j.is_string()) return PresetByName(j.get<std::string>());
  if (!j.is_object()) {
    return absl::InvalidArgumentError(
        "policy must be a preset name or an object");
  }
  auto base = PresetByName(j.value("preset", std::string("open-release")));
  if (!base.ok()) return base.status();
  PolicyThresholds p = *base;
  try {
    if (j.contains("name")) p.name = j["name"].get<std::string>();
    if (j.contains("risk_threshold")) {
      p.risk_threshold = j["risk_threshold"].get<double>();
      // Without an explicit k, use the regulator table, else the generic rule.
      if (!j.contains("min_class_size")) {
        auto k = RequiredMinClassSize(p.risk_threshold,
                                      ClassSizeConvention::kRegulatorPreset);
        if (!k.ok()) {
          k = RequiredMinClassSize(p.risk_threshold,
                                   ClassSizeConvention::kGeneric);
        }
        if (!k.ok()) return k.status();
        p.min_class_size = *k;
      }
    }
    if (j.contains("min_class_size")) {
      p.min_class_size = j["min_class_size"].get<int>();
    }
    if (j.contains("assumed_p_attack")) {
      p.assumed_p_attack = j["assumed_p_attack"].get<double>();
    }
    if (j.contains("environment")) {
      const auto env = j["environment"].get<std::string>();
      if (env == "open-release") {
        p.environment = Environment::kOpenRelease;
      } else if (env == "controlled") {
        p.environment = Environment::kControlled;
      } else {
        return absl::InvalidArgumentError(
            internal::StrCat("unknown environment '", env, "'"));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        internal::StrCat("malformed policy: ", e.what()));
  }
  if (auto s = ValidateThresholds(p); !s.ok()) return s;
  return p;
}

absl::StatusOr<std::vector<AttackScenario>> ScenariosFromJson(
    const nlohmann::json& j) {
  const nlohmann::json& list =
      j.is_object() && j.contains("scenarios") ? j["scenarios"] : j;
  if (!list.is_array()) {
    return absl::InvalidArgumentError("expected an array of scenarios");
  }
  std::vector<AttackScenario> out;
  for (size_t i = 0; i < list.size(); ++i) {
    const auto& s = list[i];
    if (!s.is_object() || !s.contains("p_attack") ||
        !s.contains("p_reid_given_attack") || !s["p_attack"].is_number() ||
        !s["p_reid_given_attack"].is_number()) {
      return absl::InvalidArgumentError(internal::StrCat(
          "scenario ", i, " needs numeric p_attack and p_reid_given_attack"));
    }
    AttackScenario a;
    if ((s.contains("label") && !s["label"].is_string()) ||
        (s.contains("attack_type") && !s["attack_type"].is_string())) {
      return absl::InvalidArgumentError(internal::StrCat(
          "scenario ", i, ": label and attack_type must be strings"));
    }
    a.label = s.value("label", internal::StrCat("scenario-", i));
    if (s.contains("attack_type")) {
      auto t = ParseAttackType(s["attack_type"].get<std::string>());
      if (!t.ok()) return t.status();
      a.attack_type = *t;
    }
    a.p_attack = s["p_attack"].get<double>();
    a.p_reid_given_attack = s["p_reid_given_attack"].get<double>();
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace sdc
