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

#ifndef VRSTARS_METRICS_H_
#define VRSTARS_METRICS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "vrstars/dataset.h"

namespace vrstars {

// Macro-averaged mean absolute error: per-class MAE over the true classes
// present, averaged with equal weight per class. Throws Error on empty or
// mismatched inputs.
double mamae(std::span<const Rating> preds, std::span<const Rating> truth);

// Support-weighted F1 over the classes present in `truth`.
double weighted_f1(std::span<const Rating> preds, std::span<const Rating> truth);

double accuracy(std::span<const Rating> preds, std::span<const Rating> truth);

// Most frequent class; ties go to the lower class.
Rating mode_classifier(std::span<const Rating> train_labels);

struct EvalReport {
  double mamae = 0.0;
  double weighted_f1 = 0.0;
  double accuracy = 0.0;
  std::array<std::optional<double>, kNumClasses> per_class_mae{};
  // confusion[truth - 1][pred - 1]
  std::array<std::array<std::int64_t, kNumClasses>, kNumClasses> confusion{};

  nlohmann::ordered_json to_json() const;
  // Fixed-width table for terminal output.
  std::string format_table() const;
};

EvalReport evaluate(std::span<const Rating> preds,
                    std::span<const Rating> truth);

}  // namespace vrstars

#endif  // VRSTARS_METRICS_H_
