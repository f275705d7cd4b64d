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

#ifndef VRSTARS_SUGGEST_H_
#define VRSTARS_SUGGEST_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "vrstars/ordinal.h"

namespace vrstars {

struct Suggestion {
  std::size_t feature = 0;
  std::string name;
  // Probability gain of the target classifier when the feature is added.
  double increment = 0.0;

  bool operator==(const Suggestion&) const = default;
};

// Classifier scoring suggestions for a property rated `rating`: r(rating+1)
// below five stars, r(5) = 4 at five stars.
ClassifierIndex suggestion_classifier(Rating rating);

// Flips every suggestible feature currently at 0 and keeps the flips with a
// positive increment, sorted by increment descending then feature id.
// Throws SchemaMismatch for a bad vector and Error when `rating` is not the
// model's rating for x.
std::vector<Suggestion> compute_suggestions(const OrdinalModel& model,
                                            std::span<const double> x,
                                            Rating rating);

// Copy of x with `feature` set to 1. Throws Error when the feature is not
// suggestible or already present.
std::vector<double> apply_suggestion(const FeatureSchema& schema,
                                     std::span<const double> x,
                                     std::size_t feature);

// {"id", "current_rating", "items": [{"feature", "increment"}]}
nlohmann::ordered_json suggestions_to_json(
    const std::string& id, Rating rating,
    const std::vector<Suggestion>& items);

}  // namespace vrstars

#endif  // VRSTARS_SUGGEST_H_
