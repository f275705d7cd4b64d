/*
 * Copyright 2026 The vrstars Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "vrstars/service.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include <spdlog/spdlog.h>

#include "httplib.h"
#include "vrstars/error.h"
#include "vrstars/explain.h"
#include "vrstars/io.h"
#include "vrstars/suggest.h"

namespace vrstars {
namespace {

using ojson = nlohmann::ordered_json;

HttpResponse json_response(int status, const ojson& j) {
  return {status, j.dump()};
}

HttpResponse error_response(int status, const std::string& message) {
  ojson j;
  j["error"] = message;
  return json_response(status, j);
}

ojson probs_json(const ClassifierProbs& p) {
  ojson arr = ojson::array();
  for (double v : p) arr.push_back(v);
  return arr;
}

ojson rating_json(const OrdinalModel& model, std::span<const double> x) {
  const ClassifierProbs p = model.probabilities(x);
  ojson j;
  j["rating"] = consistent_label(p, model.thresholds()).value();
  j["probabilities"] = probs_json(p);
  return j;
}

nlohmann::json parse_body(const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON body: ") + e.what());
  }
  if (!j.is_object()) throw InputError("request body must be a JSON object");
  return j;
}

std::vector<double> request_features(const nlohmann::json& body,
                                     const FeatureSchema& schema) {
  if (!body.contains("features")) {
    throw InputError("request body needs a \"features\" object");
  }
  return parse_feature_map(body["features"], schema);
}

}  // namespace

std::vector<double> parse_feature_map(const nlohmann::json& features,
                                      const FeatureSchema& schema) {
  if (!features.is_object()) throw InputError("\"features\" must be an object");
  std::vector<double> x(schema.size(), 0.0);
  std::vector<bool> seen(schema.size(), false);
  for (const auto& [name, value] : features.items()) {
    const auto id = schema.find(name);
    if (!id) throw InputError("unknown feature \"" + name + "\"");
    if (!value.is_number()) {
      throw InputError("feature \"" + name + "\" must be a number");
    }
    const double v = value.get<double>();
    if (!std::isfinite(v)) {
      throw SchemaMismatch("feature \"" + name + "\" is not finite");
    }
    if (schema[*id].kind == FeatureKind::kBinary && v != 0.0 && v != 1.0) {
      throw SchemaMismatch("binary feature \"" + name + "\" must be 0 or 1");
    }
    x[*id] = v;
    seen[*id] = true;
  }
  for (std::size_t f = 0; f < schema.size(); ++f) {
    if (!seen[f] && schema[f].kind == FeatureKind::kNumeric) {
      throw SchemaMismatch("missing numeric feature \"" + schema[f].name +
                           "\"");
    }
  }
  return x;
}

RatingService::RatingService(std::filesystem::path model_path)
    : model_path_(std::move(model_path)) {
  model_ = std::make_shared<const OrdinalModel>(
      OrdinalModel::parse(read_text_file(model_path_)));
}

RatingService::RatingService(OrdinalModel model)
    : model_(std::make_shared<const OrdinalModel>(std::move(model))) {}

RatingService::~RatingService() { stop(); }

std::shared_ptr<const OrdinalModel> RatingService::model() const {
  std::lock_guard<std::mutex> lock(mu_);
  return model_;
}

void RatingService::reload() {
  if (model_path_.empty()) throw Error("service has no model file to reload");
  auto fresh = std::make_shared<const OrdinalModel>(
      OrdinalModel::parse(read_text_file(model_path_)));
  {
    std::lock_guard<std::mutex> lock(mu_);
    model_ = std::move(fresh);
  }
  spdlog::info("reloaded model from {}", model_path_.string());
}

HttpResponse RatingService::handle(std::string_view method,
                                   std::string_view path,
                                   std::string_view body) {
  try {
    return route(method, path, std::string(body));
  } catch (const SchemaMismatch& e) {
    return error_response(422, e.what());
  } catch (const InputError& e) {
    return error_response(400, e.what());
  } catch (const nlohmann::json::exception& e) {
    return error_response(400, e.what());
  } catch (const std::exception& e) {
    spdlog::error("request {} {} failed: {}", method, path, e.what());
    return error_response(500, e.what());
  }
}

HttpResponse RatingService::route(std::string_view method,
                                  std::string_view path,
                                  const std::string& body) {
  static const std::vector<std::string_view> kPostRoutes = {
      "/v1/rate", "/v1/explain", "/v1/suggest", "/v1/whatif", "/v1/reload"};
  const bool is_post_route =
      std::find(kPostRoutes.begin(), kPostRoutes.end(), path) !=
      kPostRoutes.end();
  if (path == "/v1/schema") {
    if (method != "GET") return error_response(405, "use GET");
  } else if (is_post_route) {
    if (method != "POST") return error_response(405, "use POST");
  } else {
    return error_response(404, "no route " + std::string(path));
  }

  if (path == "/v1/reload") {
    try {
      reload();
    } catch (const Error& e) {
      return error_response(409, std::string("reload failed: ") + e.what());
    }
    ojson j;
    j["status"] = "reloaded";
    return json_response(200, j);
  }

  // One snapshot per request.
  const std::shared_ptr<const OrdinalModel> model = this->model();
  const FeatureSchema& schema = model->schema();

  if (path == "/v1/schema") return json_response(200, schema_to_json(schema));

  const nlohmann::json req = parse_body(body);
  const std::vector<double> x = request_features(req, schema);

  if (path == "/v1/rate") return json_response(200, rating_json(*model, x));

  if (path == "/v1/explain") {
    const Explanation e = compute_explanation(*model, x, model->rate(x));
    return json_response(200, e.to_json());
  }

  if (path == "/v1/suggest") {
    const Rating rating = model->rate(x);
    ojson j = suggestions_to_json(req.value("id", ""), rating,
                                  compute_suggestions(*model, x, rating));
    if (!req.contains("id")) j.erase("id");
    return json_response(200, j);
  }

  // /v1/whatif
  std::vector<double> after = x;
  if (req.contains("flips")) {
    const auto& flips = req["flips"];
    if (!flips.is_array()) throw InputError("\"flips\" must be an array");
    for (const auto& f : flips) {
      if (!f.is_string()) throw InputError("flip names must be strings");
      const std::string name = f.get<std::string>();
      const auto id = schema.find(name);
      if (!id) throw InputError("unknown feature \"" + name + "\"");
      if (schema[*id].kind != FeatureKind::kBinary) {
        throw SchemaMismatch("cannot flip numeric feature \"" + name + "\"");
      }
      after[*id] = after[*id] == 0.0 ? 1.0 : 0.0;
    }
  }
  const ClassifierProbs p0 = model->probabilities(x);
  const ClassifierProbs p1 = model->probabilities(after);
  ojson j;
  j["before"] = rating_json(*model, x);
  j["after"] = rating_json(*model, after);
  ojson delta = ojson::array();
  for (std::size_t k = 0; k < p0.size(); ++k) delta.push_back(p1[k] - p0[k]);
  j["delta_per_classifier"] = std::move(delta);
  return json_response(200, j);
}

int RatingService::bind(const std::string& host, int port) {
  server_ = std::make_unique<httplib::Server>();
  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    const HttpResponse r = handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server_->Get(R"(/.*)", dispatch);
  server_->Post(R"(/.*)", dispatch);
  server_->Put(R"(/.*)", dispatch);
  server_->Delete(R"(/.*)", dispatch);
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (!server_->bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) {
    throw Error("cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

void RatingService::listen() {
  if (!server_) throw Error("listen() before bind()");
  server_->listen_after_bind();
}

void RatingService::wait_until_ready() const {
  if (server_) server_->wait_until_ready();
}

void RatingService::stop() {
  if (server_) server_->stop();
}

}  // namespace vrstars
