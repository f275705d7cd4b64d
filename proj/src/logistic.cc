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

#include "vrstars/logistic.h"

#include <cmath>

#include "vrstars/error.h"
#include "vrstars/logit.h"

namespace vrstars {

LogisticModel::LogisticModel(double intercept, std::vector<double> coef,
                             std::vector<double> mean,
                             std::vector<double> scale)
    : intercept_(intercept),
      coef_(std::move(coef)),
      mean_(std::move(mean)),
      scale_(std::move(scale)) {
  if (coef_.size() != mean_.size() || coef_.size() != scale_.size()) {
    throw Error("logistic model vectors differ in length");
  }
  for (double s : scale_) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error("logistic model scale must be positive");
    }
  }
}

double LogisticModel::margin(std::span<const double> x) const {
  if (x.size() != coef_.size()) {
    throw SchemaMismatch("feature vector length differs from model");
  }
  double m = intercept_;
  for (std::size_t j = 0; j < coef_.size(); ++j) {
    m += coef_[j] * (x[j] - mean_[j]) / scale_[j];
  }
  return m;
}

double LogisticModel::probability(std::span<const double> x) const {
  return sigmoid(margin(x));
}

std::vector<double> LogisticModel::contributions(
    std::span<const double> x) const {
  if (x.size() != coef_.size()) {
    throw SchemaMismatch("feature vector length differs from model");
  }
  std::vector<double> out(coef_.size());
  for (std::size_t j = 0; j < coef_.size(); ++j) {
    out[j] = coef_[j] * (x[j] - mean_[j]) / scale_[j];
  }
  return out;
}

nlohmann::ordered_json LogisticModel::to_json() const {
  nlohmann::ordered_json j;
  j["base_margin"] = intercept_;
  j["trees"] = nlohmann::ordered_json::array();
  j["coefficients"] = coef_;
  j["means"] = mean_;
  j["scales"] = scale_;
  return j;
}

LogisticModel LogisticModel::from_json(const nlohmann::json& j,
                                       std::size_t n_features) {
  try {
    LogisticModel m(j.at("base_margin").get<double>(),
                    j.at("coefficients").get<std::vector<double>>(),
                    j.at("means").get<std::vector<double>>(),
                    j.at("scales").get<std::vector<double>>());
    if (m.size() != n_features) {
      throw Error("logistic model width differs from schema");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed logistic classifier: ") + e.what());
  }
}

LogisticModel train_logistic(const FeatureMatrix& x,
                             std::span<const std::uint8_t> labels,
                             const LogisticConfig& cfg) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  if (n == 0) throw Error("cannot train on an empty dataset");
  if (labels.size() != n) throw Error("label count differs from row count");
  std::size_t positives = 0;
  for (std::uint8_t y : labels) positives += y;
  if (positives == 0 || positives == n) {
    throw Error("training labels contain a single class");
  }
  if (cfg.epochs < 0 || !(cfg.learning_rate > 0.0) || !(cfg.l2 >= 0.0)) {
    throw Error("invalid logistic configuration");
  }

  std::vector<double> mean(d, 0.0);
  std::vector<double> scale(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += x(i, j);
  }
  for (double& m : mean) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double c = x(i, j) - mean[j];
      scale[j] += c * c;
    }
  }
  for (double& s : scale) {
    s = std::sqrt(s / static_cast<double>(n));
    if (!(s > 1e-12)) s = 1.0;
  }

  // Standardized copy so each epoch is a plain dense pass.
  std::vector<double> z(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      z[i * d + j] = (x(i, j) - mean[j]) / scale[j];
    }
  }

  double intercept = 0.0;
  std::vector<double> coef(d, 0.0);
  std::vector<double> grad(d);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_intercept = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double* zi = &z[i * d];
      double m = intercept;
      for (std::size_t j = 0; j < d; ++j) m += coef[j] * zi[j];
      const double r = sigmoid(m) - static_cast<double>(labels[i]);
      grad_intercept += r;
      for (std::size_t j = 0; j < d; ++j) grad[j] += r * zi[j];
    }
    intercept -= cfg.learning_rate * grad_intercept * inv_n;
    for (std::size_t j = 0; j < d; ++j) {
      coef[j] -= cfg.learning_rate * (grad[j] * inv_n + cfg.l2 * coef[j]);
    }
  }
  return LogisticModel(intercept, std::move(coef), std::move(mean),
                       std::move(scale));
}

}  // namespace vrstars
