// Copyright 2026 The valrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON-over-HTTP front end.
//
//   POST /recommend  {targetField, context[], options?} -> {recommendations[]}
//   GET  /health                                     -> {status}
//   GET  /rules?field=<label>[&fieldType=<uri>]      -> {rules[]}
//   GET  /templates                                  -> {templates[]}
//   POST /reload                                     -> {status, rules}
//
// The handlers are plain functions over an EngineState so they can be
// exercised without a socket; HttpService binds them to a listener.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "valrec/engine.hpp"

namespace valrec {

struct HttpResult {
  int status = 200;
  std::string body;
};

HttpResult handle_recommend(const EngineState& state, const std::string& body);
HttpResult handle_health(const EngineState& state);
HttpResult handle_rules(const EngineState& state, const std::string& field_label,
                        const std::optional<std::string>& field_type);
HttpResult handle_templates(const EngineState& state);

// Returns a freshly built state for POST /reload; absent disables the endpoint.
using StateLoader = std::function<std::shared_ptr<const EngineState>()>;

class HttpService {
 public:
  HttpService(Engine& engine, StateLoader loader = {});
  ~HttpService();

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Binds to host:port (port 0 picks a free one) and returns the bound port.
  // Throws IoError.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen();
  // Blocks until a listen() running on another thread accepts connections.
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// "host:port" -> (host, port). Throws InvalidParams.
std::pair<std::string, int> parse_bind_address(const std::string& address);

}  // namespace valrec
