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

#include "sdc/transform_step.h"

#include "fmt/format.h"
#include "sdc/internal/json.h"
#include "sdc/internal/str.h"
#include "sdc/transforms.h"

namespace sdc {
namespace {

constexpr std::pair<StepKind, std::string_view> kKindNames[] = {
    {StepKind::kRemoveAttribute, "remove-attribute"},
    {StepKind::kGeneralize, "generalize"},
    {StepKind::kBandNumeric, "band-numeric"},
    {StepKind::kSuppressRecords, "suppress-records"},
    {StepKind::kPseudonymize, "pseudonymize"},
    {StepKind::kOffsetDates, "offset-dates"},
    {StepKind::kRelativeDays, "relative-days"},
};

absl::Status NeedTargets(const TransformStep& step, size_t exactly) {
  if (exactly > 0 && step.target.size() != exactly) {
    return absl::InvalidArgumentError(
        internal::StrCat(StepKindName(step.kind), " takes exactly ", exactly,
                         " target attribute(s), got ", step.target.size()));
  }
  if (exactly == 0 && step.target.empty()) {
    return absl::InvalidArgumentError(internal::StrCat(
        StepKindName(step.kind), " needs at least one target attribute"));
  }
  return absl::OkStatus();
}

template <typename T>
absl::Status NeedParams(const TransformStep& step) {
  if (!std::holds_alternative<T>(step.params)) {
    return absl::InvalidArgumentError(internal::StrCat(
        StepKindName(step.kind), " step has missing or mistyped params"));
  }
  return absl::OkStatus();
}

}  // namespace

std::string_view StepKindName(StepKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "remove-attribute";
}

absl::StatusOr<StepKind> ParseStepKind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return absl::InvalidArgumentError(
      internal::StrCat("unknown transform kind '", name, "'"));
}

TransformStep TransformStep::Remove(std::string attribute) {
  return {StepKind::kRemoveAttribute, {std::move(attribute)}, std::monostate{}};
}

TransformStep TransformStep::Generalize(std::string attribute, int level) {
  return {StepKind::kGeneralize, {std::move(attribute)}, HierarchyLevel{level}};
}

TransformStep TransformStep::Band(std::string attribute, BandSpec bands) {
  return {StepKind::kBandNumeric, {std::move(attribute)}, std::move(bands)};
}

TransformStep TransformStep::Suppress(RecordPredicate predicate) {
  return {StepKind::kSuppressRecords, {}, std::move(predicate)};
}

TransformStep TransformStep::PseudonymizeIds(std::string attribute,
                                             uint64_t seed) {
  return {StepKind::kPseudonymize, {std::move(attribute)}, std::monostate{},
          seed};
}

TransformStep TransformStep::Offset(std::vector<std::string> attributes,
                                    OffsetSource source) {
  uint64_t seed = 0;
  if (const auto* s = std::get_if<SeededOffset>(&source)) seed = s->seed;
  return {StepKind::kOffsetDates, std::move(attributes), std::move(source),
          seed};
}

TransformStep TransformStep::Relative(std::vector<std::string> attributes,
                                      std::string anchor) {
  return {StepKind::kRelativeDays, std::move(attributes),
          AnchorAttribute{std::move(anchor)}};
}

absl::Status ValidateStep(const TransformStep& step) {
  switch (step.kind) {
    case StepKind::kRemoveAttribute:
    case StepKind::kPseudonymize:
      return NeedTargets(step, 1);
    case StepKind::kGeneralize: {
      if (auto s = NeedTargets(step, 1); !s.ok()) return s;
      if (auto s = NeedParams<HierarchyLevel>(step); !s.ok()) return s;
      if (std::get<HierarchyLevel>(step.params).level < 1) {
        return absl::InvalidArgumentError("generalize level must be >= 1");
      }
      return absl::OkStatus();
    }
    case StepKind::kBandNumeric: {
      if (auto s = NeedTargets(step, 1); !s.ok()) return s;
      if (auto s = NeedParams<BandSpec>(step); !s.ok()) return s;
      return std::get<BandSpec>(step.params).Validate();
    }
    case StepKind::kSuppressRecords: {
      if (auto s = NeedParams<RecordPredicate>(step); !s.ok()) return s;
      if (std::get<RecordPredicate>(step.params).clauses.empty()) {
        return absl::InvalidArgumentError("suppression predicate is empty");
      }
      return absl::OkStatus();
    }
    case StepKind::kOffsetDates: {
      if (auto s = NeedTargets(step, 0); !s.ok()) return s;
      return NeedParams<OffsetSource>(step);
    }
    case StepKind::kRelativeDays: {
      if (auto s = NeedTargets(step, 0); !s.ok()) return s;
      return NeedParams<AnchorAttribute>(step);
    }
  }
  return absl::InternalError("unhandled step kind");
}

std::vector<std::string> ReferencedAttributes(const TransformStep& step) {
  std::vector<std::string> out = step.target;
  if (const auto* p = std::get_if<RecordPredicate>(&step.params)) {
    for (const auto& c : p->clauses) out.push_back(c.attribute);
  }
  if (const auto* a = std::get_if<AnchorAttribute>(&step.params)) {
    out.push_back(a->anchor);
  }
  if (const auto* o = std::get_if<OffsetSource>(&step.params)) {
    if (const auto* s = std::get_if<SeededOffset>(o);
        s != nullptr && s->subject_attribute) {
      out.push_back(*s->subject_attribute);
    }
  }
  return out;
}

absl::Status CheckStepAgainstSchema(const TransformStep& step,
                                    const Schema& schema) {
  if (auto s = ValidateStep(step); !s.ok()) return s;
  for (const auto& name : ReferencedAttributes(step)) {
    if (!schema.IndexOf(name)) {
      return absl::NotFoundError(internal::StrCat(
          StepKindName(step.kind), " references attribute '", name,
          "', which is not in the schema at this point"));
    }
  }
  const AttributeSchema* first =
      step.target.empty() ? nullptr : schema.Find(step.target.front());
  switch (step.kind) {
    case StepKind::kPseudonymize:
      if (first->role != Role::kDirectIdentifier) {
        return absl::FailedPreconditionError(internal::StrCat(
            "'", first->name, "' is not a direct identifier"));
      }
      break;
    case StepKind::kGeneralize:
      if (schema.HierarchyFor(*first) == nullptr) {
        return absl::FailedPreconditionError(
            internal::StrCat("'", first->name, "' has no hierarchy"));
      }
      break;
    case StepKind::kBandNumeric:
      if (first->kind != Kind::kInteger) {
        return absl::FailedPreconditionError(
            internal::StrCat("'", first->name, "' is not an integer"));
      }
      break;
    case StepKind::kOffsetDates:
    case StepKind::kRelativeDays:
      for (const auto& name : step.target) {
        if (schema.Find(name)->kind != Kind::kDate) {
          return absl::FailedPreconditionError(
              internal::StrCat("'", name, "' is not a date"));
        }
      }
      break;
    default:
      break;
  }
  return absl::OkStatus();
}

std::string DescribeStep(const TransformStep& step) {
  const std::string targets = fmt::format("{}", fmt::join(step.target, ", "));
  switch (step.kind) {
    case StepKind::kRemoveAttribute:
      return internal::StrCat("remove ", targets);
    case StepKind::kGeneralize:
      return internal::StrCat("generalize ", targets, " to level ",
                              std::get<HierarchyLevel>(step.params).level);
    case StepKind::kBandNumeric: {
      const auto labels = std::get<BandSpec>(step.params).Labels();
      return fmt::format("band {} into {} bands ({})", targets, labels.size(),
                         fmt::join(labels, ", "));
    }
    case StepKind::kSuppressRecords:
      return internal::StrCat("suppress records where ",
                              std::get<RecordPredicate>(step.params).ToString());
    case StepKind::kPseudonymize:
      return internal::StrCat("pseudonymize ", targets);
    case StepKind::kOffsetDates: {
      const auto& src = std::get<OffsetSource>(step.params);
      if (const auto* f = std::get_if<FixedOffset>(&src)) {
        return internal::StrCat("offset ", targets, " by ", f->days, " days");
      }
      return internal::StrCat("offset ", targets,
                              " by a per-subject seeded draw");
    }
    case StepKind::kRelativeDays:
      return internal::StrCat("express ", targets, " as days from ",
                              std::get<AnchorAttribute>(step.params).anchor);
  }
  return "unknown step";
}

absl::StatusOr<StepOutcome> ApplyStep(const Dataset& dataset,
                                      const TransformStep& step) {
  if (auto s = ValidateStep(step); !s.ok()) return s;
  auto wrap = [](absl::StatusOr<Dataset> d) -> absl::StatusOr<StepOutcome> {
    if (!d.ok()) return d.status();
    return StepOutcome{*std::move(d), 0};
  };
  switch (step.kind) {
    case StepKind::kRemoveAttribute:
      return wrap(RemoveAttribute(dataset, step.target.front()));
    case StepKind::kGeneralize:
      return wrap(GeneralizeToLevel(dataset, step.target.front(),
                                    std::get<HierarchyLevel>(step.params).level));
    case StepKind::kBandNumeric:
      return wrap(GeneralizeToBands(dataset, step.target.front(),
                                    std::get<BandSpec>(step.params)));
    case StepKind::kSuppressRecords: {
      auto r = SuppressRecords(dataset, std::get<RecordPredicate>(step.params));
      if (!r.ok()) return r.status();
      return StepOutcome{std::move(r->dataset), r->removed};
    }
    case StepKind::kPseudonymize:
      return wrap(Pseudonymize(dataset, step.target.front(), step.seed));
    case StepKind::kOffsetDates:
      return wrap(OffsetDates(dataset, step.target,
                              std::get<OffsetSource>(step.params)));
    case StepKind::kRelativeDays:
      return wrap(RelativeDays(dataset, step.target,
                               std::get<AnchorAttribute>(step.params).anchor));
  }
  return absl::InternalError("unhandled step kind");
}

nlohmann::json StepToJson(const TransformStep& step) {
  nlohmann::json params = nlohmann::json::object();
  if (const auto* l = std::get_if<HierarchyLevel>(&step.params)) {
    params["level"] = l->level;
  } else if (const auto* b = std::get_if<BandSpec>(&step.params)) {
    params = BandSpecToJson(*b);
  } else if (const auto* p = std::get_if<RecordPredicate>(&step.params)) {
    params["predicate"] = p->ToString();
  } else if (const auto* o = std::get_if<OffsetSource>(&step.params)) {
    params = OffsetSourceToJson(*o);
  } else if (const auto* a = std::get_if<AnchorAttribute>(&step.params)) {
    params["anchor"] = a->anchor;
  }
  return {{"kind", std::string(StepKindName(step.kind))},
          {"target", step.target},
          {"params", params},
          {"seed", step.seed}};
}

absl::StatusOr<TransformStep> StepFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    return absl::InvalidArgumentError("step must be an object with a 'kind'");
  }
  auto kind = ParseStepKind(j["kind"].get<std::string>());
  if (!kind.ok()) return kind.status();
  TransformStep step;
  step.kind = *kind;
  if (j.contains("target")) {
    if (j["target"].is_string()) {
      step.target.push_back(j["target"].get<std::string>());
    } else if (j["target"].is_array()) {
      for (const auto& t : j["target"]) {
        if (!t.is_string()) {
          return absl::InvalidArgumentError("step targets must be strings");
        }
        step.target.push_back(t.get<std::string>());
      }
    } else {
      return absl::InvalidArgumentError(
          "'target' must be a string or an array of strings");
    }
  }
  if (j.contains("seed")) {
    if (!internal::IsNonNegativeInteger(j["seed"])) {
      return absl::InvalidArgumentError("'seed' must be a non-negative integer");
    }
    step.seed = j["seed"].get<uint64_t>();
  }
  const nlohmann::json params =
      j.contains("params") ? j["params"] : nlohmann::json::object();
  if (!params.is_object()) {
    return absl::InvalidArgumentError("'params' must be an object");
  }
  switch (step.kind) {
    case StepKind::kRemoveAttribute:
    case StepKind::kPseudonymize:
      break;
    case StepKind::kGeneralize:
      if (!params.contains("level") || !params["level"].is_number_integer()) {
        return absl::InvalidArgumentError(
            "generalize needs an integer params.level");
      }
      step.params = HierarchyLevel{params["level"].get<int>()};
      break;
    case StepKind::kBandNumeric: {
      auto bands = BandSpecFromJson(params);
      if (!bands.ok()) return bands.status();
      step.params = *std::move(bands);
      break;
    }
    case StepKind::kSuppressRecords: {
      if (!params.contains("predicate") || !params["predicate"].is_string()) {
        return absl::InvalidArgumentError(
            "suppress-records needs a string params.predicate");
      }
      auto predicate =
          RecordPredicate::Parse(params["predicate"].get<std::string>());
      if (!predicate.ok()) return predicate.status();
      step.params = *std::move(predicate);
      break;
    }
    case StepKind::kOffsetDates: {
      auto source = OffsetSourceFromJson(params, step.seed);
      if (!source.ok()) return source.status();
      step.params = *std::move(source);
      break;
    }
    case StepKind::kRelativeDays:
      if (!params.contains("anchor") || !params["anchor"].is_string()) {
        return absl::InvalidArgumentError(
            "relative-days needs a string params.anchor");
      }
      step.params = AnchorAttribute{params["anchor"].get<std::string>()};
      break;
  }
  if (auto s = ValidateStep(step); !s.ok()) return s;
  return step;
}

}  // namespace sdc
