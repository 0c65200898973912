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

#include "valrec/service.hpp"

#include <sstream>

#include <httplib.h>

#include "valrec/io.hpp"

namespace valrec {

namespace {

using ojson = nlohmann::ordered_json;
constexpr const char* kJson = "application/json";

HttpResult json_result(int status, const ojson& body) {
  return {status, body.dump()};
}

HttpResult error_result(int status, const std::string& message) {
  return json_result(status, ojson{{"error", message}});
}

struct RecommendRequest {
  FieldSlot target;
  Context context;
  RecommendOptions options;
};

RecommendRequest parse_recommend_request(const std::string& body) {
  const auto j = nlohmann::json::parse(body);
  RecommendRequest req;
  req.target = slot_from_json(j.at("targetField"));
  if (auto it = j.find("context"); it != j.end() && !it->is_null()) {
    for (const auto& entry : *it) {
      FieldValuePair pair = pair_from_json(entry);
      if (normalize_label(pair.field.label).empty()) throw InvalidSlot("context field label is empty");
      if (normalize_label(pair.value.label).empty()) continue;
      req.context.pairs.push_back(std::move(pair));
    }
  }
  if (auto it = j.find("options"); it != j.end() && !it->is_null()) {
    if (it->contains("scoreCutoff") && !it->at("scoreCutoff").is_null()) {
      const double cutoff = it->at("scoreCutoff").get<double>();
      if (!(cutoff >= 0.0 && cutoff <= 1.0)) throw InvalidParams("scoreCutoff must be in [0, 1]");
      req.options.score_cutoff = cutoff;
    }
    if (it->contains("maxResults") && !it->at("maxResults").is_null()) {
      const auto max = it->at("maxResults").get<long long>();
      if (max < 1) throw InvalidParams("maxResults must be >= 1");
      req.options.max_results = static_cast<std::size_t>(max);
    }
  }
  return req;
}

}  // namespace

HttpResult handle_recommend(const EngineState& state, const std::string& body) {
  RecommendRequest req;
  std::vector<Recommendation> recs;
  try {
    req = parse_recommend_request(body);
    recs = recommend(state, req.context, req.target, req.options);
  } catch (const nlohmann::json::exception& e) {
    return error_result(400, std::string("malformed request: ") + e.what());
  } catch (const TargetInContext& e) {
    return error_result(400, e.what());
  } catch (const DuplicateField& e) {
    return error_result(400, e.what());
  } catch (const InvalidTerm& e) {
    return error_result(400, e.what());
  } catch (const InvalidSlot& e) {
    return error_result(400, e.what());
  } catch (const InvalidParams& e) {
    return error_result(400, e.what());
  } catch (const Error& e) {
    return error_result(500, e.what());
  }

  ojson out;
  out["targetField"] = slot_to_json(req.target);
  out["recommendations"] = ojson::array();
  for (const auto& r : recs) {
    ojson rj;
    rj["valueLabel"] = r.value.label;
    rj["valueType"] = r.value.type ? ojson(r.value.type->uri()) : ojson(nullptr);
    rj["score"] = r.score;
    rj["percent"] = format_percent(r.score);
    rj["support"] = r.support;
    rj["rank"] = r.rank;
    out["recommendations"].push_back(std::move(rj));
  }
  return json_result(200, out);
}

HttpResult handle_health(const EngineState& state) {
  return json_result(200, ojson{{"status", "ok"}, {"rules", state.index->rules().size()}});
}

HttpResult handle_rules(const EngineState& state, const std::string& field_label,
                        const std::optional<std::string>& field_type) {
  FieldSlot target;
  try {
    if (normalize_label(field_label).empty()) throw InvalidSlot("query parameter 'field' is required");
    target = {field_label, field_type ? parse_optional_term(*field_type) : std::nullopt};
  } catch (const Error& e) {
    return error_result(400, e.what());
  }

  std::vector<AssociationRule> selected;
  for (const auto* rule : select_rules(*state.index, target)) selected.push_back(*rule);
  std::ostringstream lines;
  save_rules(lines, selected, state.mappings());

  ojson out;
  out["field"] = slot_to_json(target);
  out["rules"] = ojson::array();
  std::istringstream in(lines.str());
  for (std::string line; std::getline(in, line);) out["rules"].push_back(ojson::parse(line));
  return json_result(200, out);
}

HttpResult handle_templates(const EngineState& state) {
  ojson out;
  out["templates"] = ojson::array();
  for (const auto& t : state.templates) {
    ojson tj;
    tj["templateId"] = t.template_id;
    tj["trainCount"] = t.train_count;
    tj["fields"] = ojson::array();
    for (const auto& f : t.fields) tj["fields"].push_back(slot_to_json(f));
    out["templates"].push_back(std::move(tj));
  }
  return json_result(200, out);
}

struct HttpService::Impl {
  Engine& engine;
  StateLoader loader;
  httplib::Server server;

  Impl(Engine& e, StateLoader l) : engine(e), loader(std::move(l)) {
    // Small JSON replies otherwise wait on delayed ACKs.
    server.set_tcp_nodelay(true);

    auto reply = [](httplib::Response& res, const HttpResult& r) {
      res.status = r.status;
      res.set_content(r.body, kJson);
    };

    server.Post("/recommend", [this, reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, handle_recommend(*engine.snapshot(), req.body));
    });
    server.Get("/health", [this, reply](const httplib::Request&, httplib::Response& res) {
      reply(res, handle_health(*engine.snapshot()));
    });
    server.Get("/rules", [this, reply](const httplib::Request& req, httplib::Response& res) {
      std::optional<std::string> type;
      if (req.has_param("fieldType")) type = req.get_param_value("fieldType");
      reply(res, handle_rules(*engine.snapshot(), req.get_param_value("field"), type));
    });
    server.Get("/templates", [this, reply](const httplib::Request&, httplib::Response& res) {
      reply(res, handle_templates(*engine.snapshot()));
    });
    server.Post("/reload", [this, reply](const httplib::Request&, httplib::Response& res) {
      if (!loader) {
        reply(res, error_result(404, "reload is not configured"));
        return;
      }
      try {
        auto next = loader();
        const std::size_t n = next->index->rules().size();
        engine.swap(std::move(next));
        reply(res, json_result(200, ojson{{"status", "reloaded"}, {"rules", n}}));
      } catch (const Error& err) {
        reply(res, error_result(500, err.what()));
      }
    });
  }
};

HttpService::HttpService(Engine& engine, StateLoader loader)
    : impl_(std::make_unique<Impl>(engine, std::move(loader))) {}

HttpService::~HttpService() {
  impl_->server.stop();
}

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw IoError("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw IoError("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpService::listen() {
  impl_->server.listen_after_bind();
}

void HttpService::wait_until_ready() const {
  impl_->server.wait_until_ready();
}

void HttpService::stop() {
  impl_->server.stop();
}

std::pair<std::string, int> parse_bind_address(const std::string& address) {
  const auto colon = address.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == address.size()) {
    throw InvalidParams("bind address must look like host:port, got '" + address + "'");
  }
  int port = 0;
  try {
    std::size_t used = 0;
    port = std::stoi(address.substr(colon + 1), &used);
    if (used != address.size() - colon - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw InvalidParams("invalid port in '" + address + "'");
  }
  if (port < 0 || port > 65535) throw InvalidParams("port out of range in '" + address + "'");
  return {address.substr(0, colon), port};
}

}  // namespace valrec
