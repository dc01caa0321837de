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

#ifndef SDC_ATTACK_MODEL_H_
#define SDC_ATTACK_MODEL_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sdc/partition.h"

namespace sdc {

enum class AttackType {
  kDeliberate,
  kInadvertent,
  kBreach,
  kDemonstration,
  kNosyNeighbour,
};

std::string_view AttackTypeName(AttackType type);
absl::StatusOr<AttackType> ParseAttackType(std::string_view name);

struct AttackScenario {
  std::string label;
  AttackType attack_type = AttackType::kDeliberate;
  double p_attack = 1.0;
  double p_reid_given_attack = 0.0;

  bool certain_disclosure() const { return p_reid_given_attack == 1.0; }
};

struct ScenarioTerm {
  std::string label;
  AttackType attack_type = AttackType::kDeliberate;
  double p_attack = 0.0;
  double p_reid_given_attack = 0.0;
  double term = 0.0;
  bool certain_disclosure = false;
};

// The total is never reported alone: two scenario sets with the same total can
// differ in whether any attack would certainly succeed.
struct CombinedRisk {
  double total = 0.0;
  std::vector<ScenarioTerm> breakdown;
  bool any_certain_disclosure = false;
};

absl::StatusOr<CombinedRisk> ComputeCombinedRisk(
    std::span<const AttackScenario> scenarios);

enum class ClassSizeConvention { kGeneric, kRegulatorPreset };

std::string_view ClassSizeConventionName(ClassSizeConvention c);
absl::StatusOr<ClassSizeConvention> ParseClassSizeConvention(
    std::string_view name);

// Generic: the smallest k with 1/k <= threshold. Regulator preset: the
// published table (0.09 -> 11); thresholds absent from it are an error.
absl::StatusOr<int> RequiredMinClassSize(double threshold,
                                         ClassSizeConvention convention);

enum class Environment { kOpenRelease, kControlled };

std::string_view EnvironmentName(Environment e);

struct PolicyThresholds {
  std::string name;
  double risk_threshold = 0.09;
  int min_class_size = 11;
  double assumed_p_attack = 1.0;
  Environment environment = Environment::kOpenRelease;
};

const PolicyThresholds& OpenReleasePreset();
const PolicyThresholds& ControlledPreset();

// Looks up a preset by name ("open-release", "controlled").
absl::StatusOr<PolicyThresholds> PresetByName(std::string_view name);

absl::Status ValidateThresholds(const PolicyThresholds& p);

struct EnvironmentControls {
  bool data_use_agreement = false;
  bool secure_enclave = false;
  bool download_blocked = false;
  bool identity_verified = false;

  bool all() const {
    return data_use_agreement && secure_enclave && download_blocked &&
           identity_verified;
  }
};

// Only a fully controlled environment earns the relaxed preset.
PolicyThresholds ClassifyEnvironment(const EnvironmentControls& controls);

// The "naive-reciprocal" estimator q = 1/f for the record's class: assumes the
// attacker picks uniformly within a class. Opt-in only.
struct ReciprocalEstimate {
  std::string estimator = "naive-reciprocal";
  double max_q = 0.0;   // 1 / smallest class
  double mean_q = 0.0;  // classes / records
};

absl::StatusOr<ReciprocalEstimate> NaiveReciprocalEstimate(
    const EquivalencePartition& partition);

nlohmann::json CombinedRiskToJson(const CombinedRisk& risk);
nlohmann::json PolicyThresholdsToJson(const PolicyThresholds& p);

// Accepts a preset name string or an object. Object fields override the
// preset named by "preset" (default open-release).
absl::StatusOr<PolicyThresholds> PolicyThresholdsFromJson(
    const nlohmann::json& j);

// {"scenarios": [{label, attack_type, p_attack, p_reid_given_attack}]} or a
// bare array.
absl::StatusOr<std::vector<AttackScenario>> ScenariosFromJson(
    const nlohmann::json& j);

}  // namespace sdc

#endif  // SDC_ATTACK_MODEL_H_
