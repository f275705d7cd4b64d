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

#ifndef VRSTARS_GBT_H_
#define VRSTARS_GBT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "vrstars/dataset.h"
#include "vrstars/schema.h"
#include "vrstars/tree.h"

namespace vrstars {

struct GbtConfig {
  int n_rounds = 100;
  double learning_rate = 0.1;
  int max_depth = 4;
  double min_child_weight = 1.0;  // minimum hessian sum per child
  double l2_lambda = 1.0;
  int n_bins = 256;
  std::uint64_t seed = 0;
  // Honour the schema's monotone +1 flags. Disabled only for comparisons.
  bool monotone_constraints = true;

  void validate() const;
  nlohmann::ordered_json to_json() const;
  static GbtConfig from_json(const nlohmann::json& j);
};

// Per-feature split candidates computed once before boosting. Feature f has
// thresholds(f).size() + 1 bins; split k sends bins 0..k (values below
// thresholds(f)[k]) to the left child.
class BinnedMatrix {
 public:
  // Binary features get the single threshold 0.5. Numeric features get at
  // most n_bins quantile bins with thresholds at the midpoint between the
  // largest value of one bin and the smallest of the next.
  static BinnedMatrix build(const FeatureMatrix& x, const FeatureSchema& schema,
                            int n_bins);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return thresholds_.size(); }
  std::span<const std::uint16_t> column(std::size_t f) const {
    return {bins_.data() + f * rows_, rows_};
  }
  const std::vector<double>& thresholds(std::size_t f) const {
    return thresholds_[f];
  }

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<double>> thresholds_;
  std::vector<std::uint16_t> bins_;  // column-major
};

// Additive tree ensemble on the logit scale.
class BoostedClassifier {
 public:
  BoostedClassifier() = default;
  BoostedClassifier(FeatureSchema schema, double base_margin,
                    std::vector<Tree> trees, GbtConfig config = {});

  // base_margin + sum of routed leaf values. Throws SchemaMismatch on a
  // vector that does not fit the schema.
  double margin(std::span<const double> x) const;
  double probability(std::span<const double> x) const;
  // Same as margin() without input validation, for callers that already
  // validated x.
  double margin_unchecked(std::span<const double> x) const;

  double base_margin() const { return base_margin_; }
  const std::vector<Tree>& trees() const { return trees_; }
  const FeatureSchema& schema() const { return schema_; }
  const GbtConfig& config() const { return config_; }

  // {"base_margin", "trees"}; schema and config are stored by the owner.
  nlohmann::ordered_json to_json() const;
  static BoostedClassifier from_json(const nlohmann::json& j,
                                     const FeatureSchema& schema,
                                     const GbtConfig& config = {});

 private:
  FeatureSchema schema_;
  double base_margin_ = 0.0;
  std::vector<Tree> trees_;
  GbtConfig config_;
};

// Newton boosting on the logistic loss with per-feature monotone bounds.
// `labels` are 0/1. Output is identical for every `threads` value.
// Throws Error on empty input or single-class labels.
BoostedClassifier train_gbt(const BinnedMatrix& x,
                            std::span<const std::uint8_t> labels,
                            const FeatureSchema& schema, const GbtConfig& cfg,
                            int threads = 1);
BoostedClassifier train_gbt(const FeatureMatrix& x,
                            std::span<const std::uint8_t> labels,
                            const FeatureSchema& schema, const GbtConfig& cfg,
                            int threads = 1);

}  // namespace vrstars

#endif  // VRSTARS_GBT_H_
