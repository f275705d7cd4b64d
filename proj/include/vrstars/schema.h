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

#ifndef VRSTARS_SCHEMA_H_
#define VRSTARS_SCHEMA_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace vrstars {

enum class FeatureKind { kBinary, kNumeric };

struct FeatureSpec {
  std::size_t id = 0;
  std::string name;
  FeatureKind kind = FeatureKind::kBinary;
  // +1: presence (or larger value) may never lower a model margin. 0: free.
  int monotone = 0;
  // Eligible for improvement suggestions. Implies binary and monotone +1.
  bool suggestible = false;

  bool operator==(const FeatureSpec&) const = default;
};

// Ordered feature catalog. Ids are the positions 0..n-1; names are unique.
class FeatureSchema {
 public:
  FeatureSchema() = default;
  // Throws Error when ids are not contiguous, names repeat, or a suggestible
  // feature is not a monotone binary one.
  explicit FeatureSchema(std::vector<FeatureSpec> features);

  std::size_t size() const { return features_.size(); }
  bool empty() const { return features_.empty(); }
  const FeatureSpec& operator[](std::size_t i) const { return features_[i]; }
  std::span<const FeatureSpec> features() const { return features_; }

  std::optional<std::size_t> find(std::string_view name) const;

  // Validates a dense vector against the schema: length, finiteness, and
  // binary positions in {0, 1}. Throws SchemaMismatch.
  void check_vector(std::span<const double> x) const;

  bool operator==(const FeatureSchema& other) const {
    return features_ == other.features_;
  }

 private:
  std::vector<FeatureSpec> features_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

// schema.json: ordered array of {"name", "kind", "monotone", "suggestible"}.
nlohmann::ordered_json schema_to_json(const FeatureSchema& schema);
FeatureSchema schema_from_json(const nlohmann::json& j);

}  // namespace vrstars

#endif  // VRSTARS_SCHEMA_H_
