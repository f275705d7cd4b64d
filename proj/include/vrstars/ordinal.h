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

#ifndef VRSTARS_ORDINAL_H_
#define VRSTARS_ORDINAL_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vrstars/dataset.h"
#include "vrstars/gbt.h"
#include "vrstars/logistic.h"
#include "vrstars/scorer.h"

namespace vrstars {

// Pr(y > k | x) for k = 1..4, stored at position k-1.
using ClassifierProbs = std::array<double, kNumClassifiers>;
using Thresholds = std::array<double, kNumClassifiers>;

inline constexpr Thresholds kDefaultThresholds = {0.5, 0.5, 0.5, 0.5};

// Index 1..4 of the binary classifier estimating Pr(y > k).
class ClassifierIndex {
 public:
  // Throws Error outside 1..4.
  explicit ClassifierIndex(int k);
  int value() const { return k_; }
  std::size_t index() const { return static_cast<std::size_t>(k_ - 1); }
  auto operator<=>(const ClassifierIndex&) const = default;

 private:
  int k_;
};

// Binary labels of classifier k: positive iff y > k.
std::vector<std::uint8_t> expand_labels(std::span<const Rating> labels,
                                        ClassifierIndex k);

// Walks the classifiers in order and climbs one class per classifier whose
// probability meets its threshold, stopping at the first that does not.
// Every property starts at one star.
Rating consistent_label(const ClassifierProbs& probs,
                        const Thresholds& thresholds);

// Classifier explaining why class c beats c-1: 1 for c < 3, c-1 otherwise.
ClassifierIndex responsible_classifier(Rating c);

class OrdinalModel {
 public:
  OrdinalModel(FeatureSchema schema,
               std::array<BinaryScorer, kNumClassifiers> classifiers,
               Thresholds thresholds, BaseKind base_kind,
               GbtConfig gbt_config = {});

  // Both throw SchemaMismatch when x does not fit the schema.
  ClassifierProbs probabilities(std::span<const double> x) const;
  Rating rate(std::span<const double> x) const;

  const BinaryScorer& classifier(ClassifierIndex k) const {
    return classifiers_[k.index()];
  }
  const Thresholds& thresholds() const { return thresholds_; }
  const FeatureSchema& schema() const { return schema_; }
  BaseKind base_kind() const { return base_kind_; }
  const GbtConfig& gbt_config() const { return gbt_config_; }

  OrdinalModel with_thresholds(const Thresholds& thresholds) const;

  // model.json, version 1.
  std::string serialize() const;
  // Validates every structural invariant; throws Error.
  static OrdinalModel parse(std::string_view text);

 private:
  FeatureSchema schema_;
  std::array<BinaryScorer, kNumClassifiers> classifiers_;
  Thresholds thresholds_;
  BaseKind base_kind_;
  GbtConfig gbt_config_;
};

struct OrdinalTrainOptions {
  BaseKind base = BaseKind::kGbt;
  GbtConfig gbt;
  LogisticConfig logistic;
  int threads = 1;
};

// Trains the four classifiers on the expanded label sets with default
// thresholds. A classifier whose expansion is single-class becomes a
// ConstantScorer (logged as a warning).
OrdinalModel train_ordinal(const Dataset& labeled,
                           const OrdinalTrainOptions& options);

// Sequential coordinate search k = 1..4 over {0.05, 0.10, ..., 0.95}, each
// threshold minimizing validation MAMAE given the others. Ties prefer the
// value closest to 0.5, then the smaller one.
OrdinalModel tune_thresholds(const OrdinalModel& model,
                             const Dataset& validation);

}  // namespace vrstars

#endif  // VRSTARS_ORDINAL_H_
