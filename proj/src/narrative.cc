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

#include "sdc/narrative.h"

#include <utility>

#include "fmt/format.h"
#include "sdc/internal/json.h"
#include "sdc/internal/str.h"
#include "sdc/value.h"

namespace sdc {
namespace {

constexpr std::pair<SpanCategory, std::string_view> kCategoryNames[] = {
    {SpanCategory::kSubjectId, "subject-id"},
    {SpanCategory::kGender, "gender"},
    {SpanCategory::kAge, "age"},
    {SpanCategory::kLocation, "location"},
    {SpanCategory::kDate, "date"},
    {SpanCategory::kEventTerm, "event-term"},
    {SpanCategory::kFreeText, "free-text"},
};

constexpr std::pair<ActionKind, std::string_view> kActionNames[] = {
    {ActionKind::kRetain, "retain"},
    {ActionKind::kRedact, "redact"},
    {ActionKind::kRecode, "recode"},
    {ActionKind::kGeneralize, "generalize"},
    {ActionKind::kOffsetDate, "offset-date"},
    {ActionKind::kDrop, "drop"},
};

std::string SpanSource(const AnnotatedNarrative& n, const NarrativeSpan& s) {
  if (s.value) return *s.value;
  return n.text.substr(s.start, s.end - s.start);
}

absl::Status SpanError(size_t index, const NarrativeSpan& span,
                       std::string_view what) {
  return absl::InvalidArgumentError(internal::StrCat(
      "span ", index, " (", SpanCategoryName(span.category), " at ",
      span.start, "-", span.end, "): ", what));
}

absl::StatusOr<std::string> MapTerm(const CategoryAction& action,
                                    std::string_view term, bool formatted) {
  const std::string key = internal::ToLower(term);
  for (const auto& [from, to] : action.term_map) {
    if (internal::ToLower(from) == key) {
      if (!formatted) return to;
      try {
        return fmt::format(fmt::runtime(action.term_format), to);
      } catch (const fmt::format_error& e) {
        return absl::InvalidArgumentError(
            internal::StrCat("bad term_format: ", e.what()));
      }
    }
  }
  return absl::NotFoundError("term has no entry in the term map");
}

class Rewriter {
 public:
  Rewriter(const AnnotatedNarrative& narrative, const NarrativePolicy& policy)
      : narrative_(narrative), policy_(policy) {}

  absl::Status Prepare() {
    std::vector<std::string> ids;
    for (const auto& s : narrative_.spans) {
      if (s.category == SpanCategory::kSubjectId) {
        ids.push_back(SpanSource(narrative_, s));
      }
    }
    if (!ids.empty()) first_subject_ = ids.front();
    if (policy_.pseudonyms) {
      pseudonyms_ = policy_.pseudonyms;
    } else {
      pseudonyms_ = std::make_shared<const PseudonymTable>(
          PseudonymTable::Create(policy_.pseudonym_seed, ids));
    }
    return absl::OkStatus();
  }

  absl::StatusOr<NarrativeResult> Run() {
    NarrativeResult out;
    size_t cursor = 0;
    std::optional<std::string> subject;
    for (size_t i = 0; i < narrative_.spans.size(); ++i) {
      const NarrativeSpan& span = narrative_.spans[i];
      if (span.category == SpanCategory::kSubjectId) {
        subject = SpanSource(narrative_, span);
      }
      out.text.append(narrative_.text, cursor, span.start - cursor);
      const ActionKind kind =
          span.action.value_or(policy_.ActionFor(span.category).kind);
      auto replacement = Rewrite(i, span, kind, subject.value_or(first_subject_));
      if (!replacement.ok()) return replacement.status();
      NarrativeLogEntry entry;
      entry.span_index = i;
      entry.category = span.category;
      entry.action = kind;
      entry.input_start = span.start;
      entry.input_end = span.end;
      entry.output_start = out.text.size();
      out.text += *replacement;
      entry.output_end = out.text.size();
      out.log.push_back(entry);
      cursor = span.end;
    }
    out.text.append(narrative_.text, cursor);
    return out;
  }

 private:
  absl::StatusOr<std::string> Rewrite(size_t index, const NarrativeSpan& span,
                                      ActionKind kind,
                                      const std::string& subject) {
    const std::string original =
        narrative_.text.substr(span.start, span.end - span.start);
    const std::string source = SpanSource(narrative_, span);
    const CategoryAction& action = policy_.ActionFor(span.category);
    switch (kind) {
      case ActionKind::kRetain:
        return original;
      case ActionKind::kRedact:
        return policy_.glyph;
      case ActionKind::kDrop:
        return std::string();
      case ActionKind::kRecode: {
        if (span.category == SpanCategory::kSubjectId) {
          auto p = pseudonyms_->Lookup(source);
          if (!p.ok()) return SpanError(index, span, "subject id has no pseudonym");
          return *p;
        }
        auto mapped = MapTerm(action, source, /*formatted=*/false);
        if (!mapped.ok()) {
          return SpanError(index, span, internal::Message(mapped.status()));
        }
        return *mapped;
      }
      case ActionKind::kGeneralize:
        return Generalize(index, span, action, source);
      case ActionKind::kOffsetDate: {
        if (span.category != SpanCategory::kDate) {
          return SpanError(index, span, "offset-date applies to dates only");
        }
        const auto date = ParseDate(source);
        if (!date) {
          return SpanError(index, span, "date has no parseable value");
        }
        const DateFormat format =
            DetectDateFormat(original).value_or(DateFormat::kIso);
        const int offset = OffsetDaysFor(policy_.offsets, subject);
        return FormatDate(*date + std::chrono::days{offset}, format);
      }
    }
    return absl::InternalError("unhandled action");
  }

  absl::StatusOr<std::string> Generalize(size_t index, const NarrativeSpan& span,
                                         const CategoryAction& action,
                                         const std::string& source) {
    if (action.bands) {
      auto value = internal::ParseInt<int64_t>(source);
      if (!value) return SpanError(index, span, "value is not an integer");
      auto label = action.bands->LabelFor(*value);
      if (!label.ok()) {
        return SpanError(index, span, internal::Message(label.status()));
      }
      return *label;
    }
    if (action.hierarchy) {
      auto it = policy_.hierarchies.find(*action.hierarchy);
      if (it == policy_.hierarchies.end()) {
        return SpanError(index, span,
                         internal::StrCat("unknown hierarchy '",
                                          *action.hierarchy, "'"));
      }
      auto token = it->second->Generalize(source, 0, action.level);
      if (!token.ok()) {
        return SpanError(index, span, internal::Message(token.status()));
      }
      return *token;
    }
    if (!action.term_map.empty()) {
      auto mapped = MapTerm(action, source, /*formatted=*/true);
      if (!mapped.ok()) {
        return SpanError(index, span, internal::Message(mapped.status()));
      }
      return *mapped;
    }
    return SpanError(index, span,
                     "generalize needs bands, a hierarchy or a term map");
  }

  const AnnotatedNarrative& narrative_;
  const NarrativePolicy& policy_;
  std::shared_ptr<const PseudonymTable> pseudonyms_;
  std::string first_subject_;
};

absl::StatusOr<CategoryAction> ActionFromJson(const nlohmann::json& j) {
  CategoryAction a;
  if (j.is_string()) {
    auto kind = ParseActionKind(j.get<std::string>());
    if (!kind.ok()) return kind.status();
    a.kind = *kind;
    return a;
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    return absl::InvalidArgumentError(
        "an action is a kind string or an object with a 'kind'");
  }
  auto kind = ParseActionKind(j["kind"].get<std::string>());
  if (!kind.ok()) return kind.status();
  a.kind = *kind;
  try {
    if (j.contains("bands")) {
      auto bands = BandSpecFromJson(j["bands"]);
      if (!bands.ok()) return bands.status();
      a.bands = *std::move(bands);
    }
    if (j.contains("hierarchy")) a.hierarchy = j["hierarchy"].get<std::string>();
    if (j.contains("level")) a.level = j["level"].get<int>();
    if (j.contains("term_map")) {
      a.term_map = j["term_map"].get<std::map<std::string, std::string>>();
    }
    if (j.contains("term_format")) {
      a.term_format = j["term_format"].get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        internal::StrCat("malformed action: ", e.what()));
  }
  return a;
}

}  // namespace

std::string_view SpanCategoryName(SpanCategory c) {
  for (const auto& [k, name] : kCategoryNames) {
    if (k == c) return name;
  }
  return "free-text";
}

absl::StatusOr<SpanCategory> ParseSpanCategory(std::string_view name) {
  for (const auto& [k, n] : kCategoryNames) {
    if (n == name) return k;
  }
  return absl::InvalidArgumentError(
      internal::StrCat("unknown span category '", name, "'"));
}

std::string_view ActionKindName(ActionKind a) {
  for (const auto& [k, name] : kActionNames) {
    if (k == a) return name;
  }
  return "redact";
}

absl::StatusOr<ActionKind> ParseActionKind(std::string_view name) {
  for (const auto& [k, n] : kActionNames) {
    if (n == name) return k;
  }
  return absl::InvalidArgumentError(
      internal::StrCat("unknown narrative action '", name, "'"));
}

absl::Status AnnotatedNarrative::Validate() const {
  size_t previous_end = 0;
  for (size_t i = 0; i < spans.size(); ++i) {
    const auto& s = spans[i];
    if (s.start >= s.end || s.end > text.size()) {
      return absl::InvalidArgumentError(internal::StrCat(
          "span ", i, " [", s.start, ", ", s.end, ") is empty or outside the ",
          text.size(), "-byte text"));
    }
    if (s.start < previous_end) {
      return absl::InvalidArgumentError(internal::StrCat(
          "span ", i, " starts at ", s.start,
          " before the previous span ends at ", previous_end));
    }
    previous_end = s.end;
  }
  return absl::OkStatus();
}

NarrativePolicy NarrativePolicy::RedactAll() {
  NarrativePolicy p;
  for (SpanCategory c : kAllSpanCategories) p.actions[c] = CategoryAction{};
  return p;
}

const CategoryAction& NarrativePolicy::ActionFor(SpanCategory c) const {
  static const CategoryAction kRedact{};
  auto it = actions.find(c);
  return it == actions.end() ? kRedact : it->second;
}

absl::StatusOr<NarrativeResult> ApplyNarrativePolicy(
    const AnnotatedNarrative& narrative, const NarrativePolicy& policy) {
  if (auto s = narrative.Validate(); !s.ok()) return s;
  Rewriter rewriter(narrative, policy);
  if (auto s = rewriter.Prepare(); !s.ok()) return s;
  return rewriter.Run();
}

absl::StatusOr<AnnotatedNarrative> NarrativeFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("text") || !j["text"].is_string()) {
    return absl::InvalidArgumentError("narrative needs a string 'text'");
  }
  AnnotatedNarrative n;
  n.text = j["text"].get<std::string>();
  if (j.contains("spans")) {
    if (!j["spans"].is_array()) {
      return absl::InvalidArgumentError("'spans' must be an array");
    }
    for (const auto& s : j["spans"]) {
      if (!s.is_object() || !s.contains("start") || !s.contains("end") ||
          !s.contains("category") || !internal::IsNonNegativeInteger(s["start"]) ||
          !internal::IsNonNegativeInteger(s["end"]) || !s["category"].is_string()) {
        return absl::InvalidArgumentError(
            "each span needs non-negative start, end and a category");
      }
      NarrativeSpan span;
      span.start = s["start"].get<size_t>();
      span.end = s["end"].get<size_t>();
      auto category = ParseSpanCategory(s["category"].get<std::string>());
      if (!category.ok()) return category.status();
      span.category = *category;
      if (s.contains("value")) {
        if (s["value"].is_string()) {
          span.value = s["value"].get<std::string>();
        } else if (s["value"].is_number_integer()) {
          span.value = std::to_string(s["value"].get<int64_t>());
        } else {
          return absl::InvalidArgumentError(
              "span value must be a string or integer");
        }
      }
      if (s.contains("action")) {
        if (!s["action"].is_string()) {
          return absl::InvalidArgumentError("span action must be a string");
        }
        auto action = ParseActionKind(s["action"].get<std::string>());
        if (!action.ok()) return action.status();
        span.action = *action;
      }
      n.spans.push_back(std::move(span));
    }
  }
  if (auto s = n.Validate(); !s.ok()) return s;
  return n;
}

nlohmann::json NarrativeToJson(const AnnotatedNarrative& narrative) {
  nlohmann::json spans = nlohmann::json::array();
  for (const auto& s : narrative.spans) {
    nlohmann::json j = {{"start", s.start},
                        {"end", s.end},
                        {"category", std::string(SpanCategoryName(s.category))}};
    if (s.value) j["value"] = *s.value;
    if (s.action) j["action"] = std::string(ActionKindName(*s.action));
    spans.push_back(std::move(j));
  }
  return {{"text", narrative.text}, {"spans", spans}};
}

absl::StatusOr<NarrativePolicy> NarrativePolicyFromJson(
    const nlohmann::json& j, HierarchySet hierarchies) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("narrative policy must be an object");
  }
  NarrativePolicy p = NarrativePolicy::RedactAll();
  p.hierarchies = std::move(hierarchies);
  try {
    if (j.contains("glyph")) p.glyph = j["glyph"].get<std::string>();
    if (j.contains("pseudonym_seed")) {
      if (!internal::IsNonNegativeInteger(j["pseudonym_seed"])) {
        return absl::InvalidArgumentError(
            "'pseudonym_seed' must be a non-negative integer");
      }
      p.pseudonym_seed = j["pseudonym_seed"].get<uint64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        internal::StrCat("malformed narrative policy: ", e.what()));
  }
  if (j.contains("offset")) {
    uint64_t seed = 0;
    if (j.contains("offset_seed")) {
      if (!internal::IsNonNegativeInteger(j["offset_seed"])) {
        return absl::InvalidArgumentError("'offset_seed' must be a non-negative integer");
      }
      seed = j["offset_seed"].get<uint64_t>();
    }
    auto source = OffsetSourceFromJson(j["offset"], seed);
    if (!source.ok()) return source.status();
    p.offsets = *source;
  }
  if (j.contains("actions")) {
    if (!j["actions"].is_object()) {
      return absl::InvalidArgumentError("'actions' must map category to action");
    }
    for (const auto& [name, value] : j["actions"].items()) {
      auto category = ParseSpanCategory(name);
      if (!category.ok()) return category.status();
      auto action = ActionFromJson(value);
      if (!action.ok()) return action.status();
      p.actions[*category] = *std::move(action);
    }
  }
  return p;
}

nlohmann::json NarrativeLogToJson(const std::vector<NarrativeLogEntry>& log) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : log) {
    out.push_back({{"span", e.span_index},
                   {"category", std::string(SpanCategoryName(e.category))},
                   {"action", std::string(ActionKindName(e.action))},
                   {"input", {e.input_start, e.input_end}},
                   {"output", {e.output_start, e.output_end}}});
  }
  return out;
}

}  // namespace sdc
