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

#include "vrstars/scorer.h"

#include <limits>

#include "vrstars/error.h"
#include "vrstars/logit.h"

namespace vrstars {

BinaryScorer::Kind BinaryScorer::kind() const {
  if (gbt()) return Kind::kGbt;
  if (logistic()) return Kind::kLogistic;
  return Kind::kConstant;
}

double BinaryScorer::margin(std::span<const double> x) const {
  if (const auto* m = gbt()) return m->margin_unchecked(x);
  if (const auto* m = logistic()) return m->margin(x);
  return constant()->positive ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();
}

double BinaryScorer::probability(std::span<const double> x) const {
  if (const auto* c = constant()) return c->positive ? 1.0 : 0.0;
  return sigmoid(margin(x));
}

nlohmann::ordered_json BinaryScorer::to_json() const {
  if (const auto* m = gbt()) return m->to_json();
  if (const auto* m = logistic()) return m->to_json();
  nlohmann::ordered_json j;
  j["base_margin"] = 0.0;
  j["trees"] = nlohmann::ordered_json::array();
  j["constant"] = constant()->positive ? 1 : 0;
  return j;
}

BinaryScorer BinaryScorer::from_json(const nlohmann::json& j, BaseKind base,
                                     const FeatureSchema& schema,
                                     const GbtConfig& config) {
  if (!j.is_object()) throw Error("classifier must be an object");
  if (j.contains("constant")) {
    const auto& c = j["constant"];
    if (!c.is_number_integer() || (c.get<int>() != 0 && c.get<int>() != 1)) {
      throw Error("\"constant\" must be 0 or 1");
    }
    return ConstantScorer{c.get<int>() == 1};
  }
  if (base == BaseKind::kLogistic) {
    return LogisticModel::from_json(j, schema.size());
  }
  return BoostedClassifier::from_json(j, schema, config);
}

}  // namespace vrstars
