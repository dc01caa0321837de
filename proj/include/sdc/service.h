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

#ifndef SDC_SERVICE_H_
#define SDC_SERVICE_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sdc/session.h"

namespace sdc {

// Inputs shared by the CLI and the HTTP API. `quasi_set` and `policy` accept
// either JSON or plain text (comma-separated names, a preset name).
struct SessionInputs {
  std::string data;
  std::string schema;
  std::optional<std::string> hierarchies;
  std::optional<std::string> quasi_set;
  std::optional<std::string> policy;
  std::optional<int> tau;
};

struct ResolvedInputs {
  Dataset dataset;
  std::vector<std::string> quasi_set;
  ReleasePolicy policy;
  int tau = kDefaultTau;
};

// An absent quasi set means every attribute with the quasi-identifier role.
absl::StatusOr<ResolvedInputs> ResolveInputs(const SessionInputs& in);

absl::StatusOr<std::vector<std::string>> ParseQuasiSet(std::string_view text);
absl::StatusOr<ReleasePolicy> ParsePolicyText(std::string_view text);

struct ServiceOptions {
  // Datasets are written to disk only when this is set.
  std::optional<std::string> export_dir;
};

// JSON HTTP API over an in-memory SessionStore.
class HttpService {
 public:
  explicit HttpService(ServiceOptions options = {});
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Port 0 picks a free port. Returns the bound port.
  absl::StatusOr<int> Bind(const std::string& host, int port);
  // Blocks until Stop().
  absl::Status Serve();
  void Stop();
  void WaitUntilReady() const;

  SessionStore& store();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sdc

#endif  // SDC_SERVICE_H_
