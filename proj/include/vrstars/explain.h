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

#ifndef VRSTARS_EXPLAIN_H_
#define VRSTARS_EXPLAIN_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "vrstars/gbt.h"
#include "vrstars/ordinal.h"

namespace vrstars {

struct ShapValues {
  // Expected margin under the cover-weighted path distribution.
  double base_value = 0.0;
  // One attribution per schema feature, in margin units.
  std::vector<double> phi;
};

// Path-dependent TreeSHAP (polynomial time). base_value + sum(phi) equals
// model.margin(x). Throws Error when a node has zero cover.
ShapValues tree_shap(const BoostedClassifier& model, std::span<const double> x);

// Exact Shapley values by subset enumeration, conditioning on a subset by
// routing and marginalizing the rest by cover. Exponential; refuses more
// than kMaxBruteForceFeatures features.
inline constexpr std::size_t kMaxBruteForceFeatures = 15;
std::vector<double> brute_force_shap(const BoostedClassifier& model,
                                     std::span<const double> x);

struct Attribution {
  std::size_t feature = 0;
  std::string name;
  double value = 0.0;
};

enum class ExplanationMethod { kTreeShap, kLinear, kConstant };

struct Explanation {
  Rating rating{1};
  ClassifierIndex responsible{1};
  ExplanationMethod method = ExplanationMethod::kTreeShap;
  double base_value = 0.0;
  // Full attribution vector indexed by feature id.
  std::vector<double> shap;
  // Positive attributions by value descending, then negative ones by
  // magnitude descending; ties by feature id; zeros omitted.
  std::vector<Attribution> ranked;
  // Probability of the responsible classifier at x.
  double probability = 0.0;

  // Presentation cut of `ranked`: the first `top_positive` positive and
  // `top_negative` negative items.
  std::vector<Attribution> top(std::size_t top_positive = 5,
                               std::size_t top_negative = 3) const;
  // {"rating", "responsible_k", "base_value", "items", "probability",
  // "method"}; base_value is null for constant classifiers.
  nlohmann::ordered_json to_json(std::size_t top_positive = 5,
                                 std::size_t top_negative = 3) const;
};

// Attributions from classifier r(rating). Throws Error when `rating` is not
// the model's rating for x.
Explanation compute_explanation(const OrdinalModel& model,
                                std::span<const double> x, Rating rating);

}  // namespace vrstars

#endif  // VRSTARS_EXPLAIN_H_
