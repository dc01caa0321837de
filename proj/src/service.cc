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

#include "sdc/service.h"

#include <filesystem>

#include "httplib.h"
#include "sdc/internal/json.h"
#include "sdc/internal/str.h"
#include "sdc/table_io.h"

namespace sdc {
namespace {

using nlohmann::json;

int HttpCode(const absl::Status& s) {
  switch (s.code()) {
    case absl::StatusCode::kAborted:
      return 409;
    case absl::StatusCode::kInternal:
    case absl::StatusCode::kUnknown:
    case absl::StatusCode::kDataLoss:
      return 500;
    default:
      return 400;
  }
}

void Reply(httplib::Response& res, int code, const json& body) {
  res.status = code;
  res.set_content(body.dump(2), "application/json");
}

void ReplyError(httplib::Response& res, int code, std::string_view message) {
  Reply(res, code, {{"error", std::string(message)}, {"status", code}});
}

void ReplyStatus(httplib::Response& res, const absl::Status& s) {
  ReplyError(res, HttpCode(s), internal::Message(s));
}

absl::StatusOr<json> ParseBody(const httplib::Request& req) {
  json j = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError("request body is not valid JSON");
  }
  return j;
}

absl::StatusOr<std::optional<int>> IntParam(const httplib::Request& req,
                                            const char* name) {
  if (!req.has_param(name)) return std::optional<int>();
  auto v = internal::ParseInt<int>(req.get_param_value(name));
  if (!v) {
    return absl::InvalidArgumentError(
        internal::StrCat("query parameter '", name, "' must be an integer"));
  }
  return std::optional<int>(*v);
}

// Step from either the bare step object or {"step": ..., ...}.
absl::StatusOr<TransformStep> StepFromBody(const json& body) {
  if (body.is_object() && body.contains("step")) return StepFromJson(body["step"]);
  return StepFromJson(body);
}

json HistogramJson(const std::map<size_t, size_t>& h) {
  json bins = json::array();
  size_t classes = 0;
  for (const auto& [size, count] : h) {
    bins.push_back({{"size", size}, {"count", count}});
    classes += count;
  }
  return {{"bins", bins}, {"class_count", classes}};
}

json SessionSummary(const Session& s) {
  const Dataset d = s.current();
  return {{"id", s.id()},
          {"version", s.version()},
          {"record_count", d.record_count()},
          {"attributes", d.schema().Names()},
          {"quasi_set", s.quasi_set()},
          {"tau", s.tau()},
          {"policy", ReleasePolicyToJson(s.policy())}};
}

std::string FieldText(const httplib::Request& req, const char* name) {
  return req.get_file_value(name).content;
}

}  // namespace

absl::StatusOr<std::vector<std::string>> ParseQuasiSet(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  std::vector<std::string> out;
  if (!j.is_discarded() && j.is_array()) {
    for (const auto& e : j) {
      if (!e.is_string()) {
        return absl::InvalidArgumentError("quasi set entries must be strings");
      }
      out.push_back(e.get<std::string>());
    }
    return out;
  }
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view name = text.substr(start, comma - start);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    if (!name.empty()) out.emplace_back(name);
    start = comma + 1;
  }
  return out;
}

absl::StatusOr<ReleasePolicy> ParsePolicyText(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) return ReleasePolicyFromJson(json(std::string(text)));
  return ReleasePolicyFromJson(j);
}

absl::StatusOr<ResolvedInputs> ResolveInputs(const SessionInputs& in) {
  json schema_doc = json::parse(in.schema, nullptr, false);
  if (schema_doc.is_discarded()) {
    return absl::InvalidArgumentError("schema is not valid JSON");
  }
  std::optional<json> hierarchies_doc;
  if (in.hierarchies) {
    hierarchies_doc = json::parse(*in.hierarchies, nullptr, false);
    if (hierarchies_doc->is_discarded()) {
      return absl::InvalidArgumentError("hierarchies are not valid JSON");
    }
  }
  auto schema = SchemaFromDocuments(
      schema_doc, hierarchies_doc ? &*hierarchies_doc : nullptr);
  if (!schema.ok()) return schema.status();
  auto dataset = LoadDataset(in.data, *schema);
  if (!dataset.ok()) return dataset.status();

  std::vector<std::string> quasi;
  if (in.quasi_set) {
    auto q = ParseQuasiSet(*in.quasi_set);
    if (!q.ok()) return q.status();
    quasi = *std::move(q);
  } else {
    quasi = dataset->schema().NamesWithRole(Role::kQuasiIdentifier);
  }
  ReleasePolicy policy;
  if (in.policy) {
    auto p = ParsePolicyText(*in.policy);
    if (!p.ok()) return p.status();
    policy = *std::move(p);
  }
  return ResolvedInputs{*std::move(dataset), std::move(quasi),
                        std::move(policy), in.tau.value_or(kDefaultTau)};
}

struct HttpService::Impl {
  ServiceOptions options;
  SessionStore store;
  httplib::Server server;
  std::atomic<bool> bound{false};

  std::shared_ptr<Session> Lookup(const httplib::Request& req,
                                  httplib::Response& res) {
    auto s = store.Find(req.matches[1]);
    if (!s) {
      ReplyError(res, 404,
                 internal::StrCat("unknown session '",
                                  std::string(req.matches[1]), "'"));
    }
    return s;
  }

  void CreateSession(const httplib::Request& req, httplib::Response& res) {
    SessionInputs in;
    if (req.is_multipart_form_data()) {
      if (!req.has_file("data") || !req.has_file("schema")) {
        ReplyError(res, 400, "multipart upload needs 'data' and 'schema' parts");
        return;
      }
      in.data = FieldText(req, "data");
      in.schema = FieldText(req, "schema");
      if (req.has_file("hierarchies")) in.hierarchies = FieldText(req, "hierarchies");
      if (req.has_file("quasi_set")) in.quasi_set = FieldText(req, "quasi_set");
      if (req.has_file("policy")) in.policy = FieldText(req, "policy");
      if (req.has_file("tau")) {
        auto tau = internal::ParseInt<int>(FieldText(req, "tau"));
        if (!tau) {
          ReplyError(res, 400, "'tau' must be an integer");
          return;
        }
        in.tau = *tau;
      }
    } else {
      auto body = ParseBody(req);
      if (!body.ok()) return ReplyStatus(res, body.status());
      const json& j = *body;
      if (!j.is_object() || !j.contains("data") || !j["data"].is_string() ||
          !j.contains("schema")) {
        ReplyError(res, 400,
                   "body needs 'data' (delimited text) and 'schema' (JSON)");
        return;
      }
      in.data = j["data"].get<std::string>();
      in.schema = j["schema"].dump();
      if (j.contains("hierarchies")) in.hierarchies = j["hierarchies"].dump();
      if (j.contains("quasi_set")) in.quasi_set = j["quasi_set"].dump();
      if (j.contains("policy")) {
        in.policy = j["policy"].is_string() ? j["policy"].get<std::string>()
                                            : j["policy"].dump();
      }
      if (j.contains("tau")) {
        if (!j["tau"].is_number_integer()) {
          ReplyError(res, 400, "'tau' must be an integer");
          return;
        }
        in.tau = j["tau"].get<int>();
      }
    }
    auto resolved = ResolveInputs(in);
    if (!resolved.ok()) return ReplyStatus(res, resolved.status());
    auto session = store.Create(std::move(resolved->dataset),
                                std::move(resolved->quasi_set),
                                std::move(resolved->policy), resolved->tau);
    if (!session.ok()) return ReplyStatus(res, session.status());
    auto report = (*session)->Report();
    if (!report.ok()) return ReplyStatus(res, report.status());
    json body = SessionSummary(**session);
    body["report"] = RiskReportToJson(*report);
    Reply(res, 201, body);
  }

  void Install() {
    server.set_default_headers(
        {{"Access-Control-Allow-Origin", "*"},
         {"Access-Control-Expose-Headers", "X-Session-Version"}});
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });
    server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      Reply(res, 200, {{"status", "ok"}});
    });
    server.Post("/sessions",
                [this](const httplib::Request& req, httplib::Response& res) {
                  CreateSession(req, res);
                });
    server.Get(R"(/sessions/([^/]+))",
               [this](const httplib::Request& req, httplib::Response& res) {
                 if (auto s = Lookup(req, res)) Reply(res, 200, SessionSummary(*s));
               });
    server.Delete(R"(/sessions/([^/]+))",
                  [this](const httplib::Request& req, httplib::Response& res) {
                    if (!store.Erase(req.matches[1])) {
                      ReplyError(res, 404, "unknown session");
                      return;
                    }
                    res.status = 204;
                  });
    server.Get(R"(/sessions/([^/]+)/report)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 auto s = Lookup(req, res);
                 if (!s) return;
                 auto tau = IntParam(req, "tau");
                 if (!tau.ok()) return ReplyStatus(res, tau.status());
                 auto k = IntParam(req, "k");
                 if (!k.ok()) return ReplyStatus(res, k.status());
                 auto report = s->Report(*tau, *k);
                 if (!report.ok()) return ReplyStatus(res, report.status());
                 res.set_header("X-Session-Version",
                                std::to_string(s->version()));
                 Reply(res, 200, RiskReportToJson(*report));
               });
    server.Get(R"(/sessions/([^/]+)/histogram)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 auto s = Lookup(req, res);
                 if (!s) return;
                 auto h = s->Histogram();
                 if (!h.ok()) return ReplyStatus(res, h.status());
                 Reply(res, 200, HistogramJson(*h));
               });
    server.Get(R"(/sessions/([^/]+)/utility)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 if (auto s = Lookup(req, res)) {
                   Reply(res, 200, UtilityToJson(s->Utility()));
                 }
               });
    server.Get(R"(/sessions/([^/]+)/ledger)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 if (auto s = Lookup(req, res)) Reply(res, 200, s->LedgerJson());
               });
    server.Post(R"(/sessions/([^/]+)/whatif)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  auto s = Lookup(req, res);
                  if (!s) return;
                  auto body = ParseBody(req);
                  if (!body.ok()) return ReplyStatus(res, body.status());
                  auto step = StepFromBody(*body);
                  if (!step.ok()) return ReplyStatus(res, step.status());
                  auto w = s->WhatIf(*step);
                  if (!w.ok()) return ReplyStatus(res, w.status());
                  Reply(res, 200, WhatIfToJson(*w));
                });
    server.Post(R"(/sessions/([^/]+)/suggest)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  auto s = Lookup(req, res);
                  if (!s) return;
                  auto body = ParseBody(req);
                  if (!body.ok()) return ReplyStatus(res, body.status());
                  const json& list = body->is_object() && body->contains("candidates")
                                         ? (*body)["candidates"]
                                         : *body;
                  if (!list.is_array() || list.empty()) {
                    ReplyError(res, 400, "expected a non-empty candidate array");
                    return;
                  }
                  std::vector<TransformStep> candidates;
                  for (const auto& c : list) {
                    auto step = StepFromJson(c);
                    if (!step.ok()) return ReplyStatus(res, step.status());
                    candidates.push_back(*std::move(step));
                  }
                  Reply(res, 200, SuggestionsToJson(s->Suggest(candidates)));
                });
    server.Post(R"(/sessions/([^/]+)/commit)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  auto s = Lookup(req, res);
                  if (!s) return;
                  auto body = ParseBody(req);
                  if (!body.ok()) return ReplyStatus(res, body.status());
                  auto step = StepFromBody(*body);
                  if (!step.ok()) return ReplyStatus(res, step.status());
                  std::optional<size_t> expected;
                  if (body->is_object() && body->contains("expected_version")) {
                    if (!internal::IsNonNegativeInteger((*body)["expected_version"])) {
                      ReplyError(res, 400, "'expected_version' must be a non-negative integer");
                      return;
                    }
                    expected = (*body)["expected_version"].get<size_t>();
                  }
                  auto r = s->Commit(*step, expected);
                  if (!r.ok()) return ReplyStatus(res, r.status());
                  json out = {{"version", r->version},
                              {"entry", LedgerEntryToJson(r->entry)}};
                  out["report"] = r->entry.after
                                      ? RiskReportToJson(*r->entry.after)
                                      : json();
                  Reply(res, 200, out);
                });
    server.Post(R"(/sessions/([^/]+)/export)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  auto s = Lookup(req, res);
                  if (!s) return;
                  if (!options.export_dir) {
                    ReplyError(res, 403, "export is disabled on this server");
                    return;
                  }
                  const auto path =
                      std::filesystem::path(*options.export_dir) /
                      internal::StrCat(s->id(), "-v", s->version(), ".csv");
                  auto w = WriteFile(path.string(), SerializeDataset(s->current()));
                  if (!w.ok()) return ReplyError(res, 500, internal::Message(w));
                  Reply(res, 200, {{"path", path.string()}});
                });
    server.set_exception_handler([](const httplib::Request&,
                                    httplib::Response& res,
                                    std::exception_ptr ep) {
      std::string what = "internal error";
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        what = e.what();
      } catch (...) {
      }
      ReplyError(res, 500, what);
    });
  }
};

HttpService::HttpService(ServiceOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  impl_->Install();
}

HttpService::~HttpService() { Stop(); }

absl::StatusOr<int> HttpService::Bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) {
      return absl::UnavailableError(
          internal::StrCat("cannot bind to ", host, " on any port"));
    }
  } else if (!impl_->server.bind_to_port(host, port)) {
    return absl::UnavailableError(
        internal::StrCat("cannot bind to ", host, ":", port));
  }
  impl_->bound = true;
  return bound;
}

absl::Status HttpService::Serve() {
  if (!impl_->bound) return absl::FailedPreconditionError("call Bind first");
  if (!impl_->server.listen_after_bind()) {
    return absl::UnavailableError("server stopped with an error");
  }
  return absl::OkStatus();
}

void HttpService::Stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void HttpService::WaitUntilReady() const { impl_->server.wait_until_ready(); }

SessionStore& HttpService::store() { return impl_->store; }

}  // namespace sdc
