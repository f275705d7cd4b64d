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

#ifndef VRSTARS_LOGISTIC_H_
#define VRSTARS_LOGISTIC_H_

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "vrstars/dataset.h"

namespace vrstars {

struct LogisticConfig {
  double l2 = 1e-4;
  int epochs = 400;
  double learning_rate = 1.0;
  // Recorded for reproducibility; full-batch descent draws no randomness.
  std::uint64_t seed = 0;
};

// L2-regularized logistic regression on standardized features:
// margin(x) = intercept + sum_j coef_j * (x_j - mean_j) / scale_j.
class LogisticModel {
 public:
  LogisticModel() = default;
  LogisticModel(double intercept, std::vector<double> coef,
                std::vector<double> mean, std::vector<double> scale);

  double margin(std::span<const double> x) const;
  double probability(std::span<const double> x) const;
  // coef_j * standardized x_j; sums with intercept() to margin(x).
  std::vector<double> contributions(std::span<const double> x) const;

  double intercept() const { return intercept_; }
  const std::vector<double>& coefficients() const { return coef_; }
  std::size_t size() const { return coef_.size(); }

  nlohmann::ordered_json to_json() const;
  static LogisticModel from_json(const nlohmann::json& j,
                                 std::size_t n_features);

 private:
  double intercept_ = 0.0;
  std::vector<double> coef_;
  std::vector<double> mean_;
  std::vector<double> scale_;
};

// Full-batch gradient descent on mean log-loss + l2/2 * |coef|^2 (intercept
// unpenalized), starting from zero weights. Throws Error on empty input or
// single-class labels.
LogisticModel train_logistic(const FeatureMatrix& x,
                             std::span<const std::uint8_t> labels,
                             const LogisticConfig& cfg);

}  // namespace vrstars

#endif  // VRSTARS_LOGISTIC_H_
