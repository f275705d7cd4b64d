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

#include "vrstars/suggest.h"

#include <algorithm>

#include "vrstars/error.h"

namespace vrstars {

ClassifierIndex suggestion_classifier(Rating rating) {
  if (rating.value() == kNumClasses) return ClassifierIndex(kNumClassifiers);
  return responsible_classifier(Rating(rating.value() + 1));
}

std::vector<Suggestion> compute_suggestions(const OrdinalModel& model,
                                            std::span<const double> x,
                                            Rating rating) {
  if (model.rate(x) != rating) {
    throw Error("rating " + std::to_string(rating.value()) +
                " is not the model's rating for this property");
  }
  const FeatureSchema& schema = model.schema();
  const BinaryScorer& scorer = model.classifier(suggestion_classifier(rating));
  const double before = scorer.probability(x);

  std::vector<Suggestion> out;
  std::vector<double> flipped(x.begin(), x.end());
  for (std::size_t j = 0; j < schema.size(); ++j) {
    if (!schema[j].suggestible || x[j] != 0.0) continue;
    flipped[j] = 1.0;
    const double w = scorer.probability(flipped) - before;
    flipped[j] = 0.0;
    if (w > 0.0) out.push_back({j, schema[j].name, w});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Suggestion& a, const Suggestion& b) {
                     if (a.increment != b.increment) {
                       return a.increment > b.increment;
                     }
                     return a.feature < b.feature;
                   });
  return out;
}

std::vector<double> apply_suggestion(const FeatureSchema& schema,
                                     std::span<const double> x,
                                     std::size_t feature) {
  schema.check_vector(x);
  if (feature >= schema.size()) {
    throw Error("feature id " + std::to_string(feature) + " out of range");
  }
  if (!schema[feature].suggestible) {
    throw Error("feature \"" + schema[feature].name + "\" is not suggestible");
  }
  if (x[feature] != 0.0) {
    throw Error("feature \"" + schema[feature].name + "\" is already present");
  }
  std::vector<double> out(x.begin(), x.end());
  out[feature] = 1.0;
  return out;
}

nlohmann::ordered_json suggestions_to_json(
    const std::string& id, Rating rating,
    const std::vector<Suggestion>& items) {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["current_rating"] = rating.value();
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Suggestion& s : items) {
    nlohmann::ordered_json item;
    item["feature"] = s.name;
    item["increment"] = s.increment;
    arr.push_back(std::move(item));
  }
  j["items"] = std::move(arr);
  return j;
}

}  // namespace vrstars
