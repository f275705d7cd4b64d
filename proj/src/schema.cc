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

#include "vrstars/schema.h"

#include <cmath>

#include "vrstars/error.h"

namespace vrstars {

FeatureSchema::FeatureSchema(std::vector<FeatureSpec> features)
    : features_(std::move(features)) {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    const FeatureSpec& f = features_[i];
    if (f.id != i) {
      throw Error("feature ids must be contiguous from 0; '" + f.name +
                  "' has id " + std::to_string(f.id) + " at position " +
                  std::to_string(i));
    }
    if (f.name.empty()) throw Error("feature name must be nonempty");
    if (f.monotone != 0 && f.monotone != 1) {
      throw Error("feature '" + f.name + "': monotone must be 0 or 1");
    }
    if (f.suggestible &&
        (f.kind != FeatureKind::kBinary || f.monotone != 1)) {
      throw Error("feature '" + f.name +
                  "': suggestible requires a binary feature with monotone 1");
    }
    if (!by_name_.emplace(f.name, i).second) {
      throw Error("duplicate feature name '" + f.name + "'");
    }
  }
}

std::optional<std::size_t> FeatureSchema::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

void FeatureSchema::check_vector(std::span<const double> x) const {
  if (x.size() != features_.size()) {
    throw SchemaMismatch("feature vector has " + std::to_string(x.size()) +
                         " entries, schema has " +
                         std::to_string(features_.size()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw SchemaMismatch("feature '" + features_[i].name +
                           "' is not finite");
    }
    if (features_[i].kind == FeatureKind::kBinary && x[i] != 0.0 &&
        x[i] != 1.0) {
      throw SchemaMismatch("binary feature '" + features_[i].name +
                           "' must be 0 or 1");
    }
  }
}

nlohmann::ordered_json schema_to_json(const FeatureSchema& schema) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const FeatureSpec& f : schema.features()) {
    out.push_back({
        {"name", f.name},
        {"kind", f.kind == FeatureKind::kBinary ? "binary" : "numeric"},
        {"monotone", f.monotone},
        {"suggestible", f.suggestible},
    });
  }
  return out;
}

FeatureSchema schema_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InputError("schema must be a JSON array");
  std::vector<FeatureSpec> features;
  features.reserve(j.size());
  for (const auto& item : j) {
    if (!item.is_object()) throw InputError("schema entries must be objects");
    FeatureSpec f;
    f.id = features.size();
    try {
      f.name = item.at("name").get<std::string>();
      const std::string kind = item.at("kind").get<std::string>();
      if (kind == "binary") {
        f.kind = FeatureKind::kBinary;
      } else if (kind == "numeric") {
        f.kind = FeatureKind::kNumeric;
      } else {
        throw InputError("feature '" + f.name + "': unknown kind '" + kind +
                         "'");
      }
      f.monotone = item.value("monotone", 0);
      f.suggestible = item.value("suggestible", false);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("bad schema entry: ") + e.what());
    }
    features.push_back(std::move(f));
  }
  return FeatureSchema(std::move(features));
}

}  // namespace vrstars
