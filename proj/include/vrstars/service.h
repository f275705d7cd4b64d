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

#ifndef VRSTARS_SERVICE_H_
#define VRSTARS_SERVICE_H_

#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "vrstars/ordinal.h"

namespace httplib {
class Server;
}

namespace vrstars {

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON
};

// Dense vector from a {name: number} map. Absent binary features are 0.
// Throws InputError (400) for unknown names or non-numeric values and
// SchemaMismatch (422) for absent numerics or invalid binary values.
std::vector<double> parse_feature_map(const nlohmann::json& features,
                                      const FeatureSchema& schema);

// JSON-over-HTTP scoring service around one immutable model. Reloading swaps
// the whole model at once; a request sees either the old or the new model.
class RatingService {
 public:
  // Loads and validates the model file; reload() re-reads the same path.
  explicit RatingService(std::filesystem::path model_path);
  // In-memory model; reload() throws.
  explicit RatingService(OrdinalModel model);
  ~RatingService();

  RatingService(const RatingService&) = delete;
  RatingService& operator=(const RatingService&) = delete;

  std::shared_ptr<const OrdinalModel> model() const;

  // Re-reads the model file. On failure the current model stays and Error
  // is thrown.
  void reload();

  // Transport-independent request handling; thread safe.
  HttpResponse handle(std::string_view method, std::string_view path,
                      std::string_view body);

  // Binds the listening socket; port 0 picks a free port. Returns the port.
  int bind(const std::string& host, int port);
  // Serves until stop(); requires bind().
  void listen();
  // Blocks until listen() accepts connections.
  void wait_until_ready() const;
  void stop();

 private:
  HttpResponse route(std::string_view method, std::string_view path,
                     const std::string& body);

  std::filesystem::path model_path_;
  mutable std::mutex mu_;
  std::shared_ptr<const OrdinalModel> model_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace vrstars

#endif  // VRSTARS_SERVICE_H_
