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

#ifndef VRSTARS_SCORER_H_
#define VRSTARS_SCORER_H_

#include <span>
#include <variant>

#include "json.hpp"
#include "vrstars/gbt.h"
#include "vrstars/logistic.h"

namespace vrstars {

// Scorer for a degenerate binary problem whose training labels were all
// positive or all negative. Probability is exactly 1 or 0; the margin is
// +/- infinity.
struct ConstantScorer {
  bool positive = false;
};

enum class BaseKind { kGbt, kLogistic };

// Binary probabilistic classifier behind one ordinal threshold.
class BinaryScorer {
 public:
  enum class Kind { kGbt, kLogistic, kConstant };

  BinaryScorer() : impl_(ConstantScorer{}) {}
  BinaryScorer(BoostedClassifier m) : impl_(std::move(m)) {}
  BinaryScorer(LogisticModel m) : impl_(std::move(m)) {}
  BinaryScorer(ConstantScorer m) : impl_(m) {}

  Kind kind() const;
  // No input validation; OrdinalModel checks vectors once per call.
  double margin(std::span<const double> x) const;
  double probability(std::span<const double> x) const;

  const BoostedClassifier* gbt() const {
    return std::get_if<BoostedClassifier>(&impl_);
  }
  const LogisticModel* logistic() const {
    return std::get_if<LogisticModel>(&impl_);
  }
  const ConstantScorer* constant() const {
    return std::get_if<ConstantScorer>(&impl_);
  }

  // {"base_margin", "trees"} for GBT; logistic adds "coefficients", "means",
  // "scales"; constant scorers carry "constant": 0|1 with empty trees.
  nlohmann::ordered_json to_json() const;
  static BinaryScorer from_json(const nlohmann::json& j, BaseKind base,
                                const FeatureSchema& schema,
                                const GbtConfig& config);

 private:
  std::variant<BoostedClassifier, LogisticModel, ConstantScorer> impl_;
};

}  // namespace vrstars

#endif  // VRSTARS_SCORER_H_
