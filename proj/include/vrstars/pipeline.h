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

#ifndef VRSTARS_PIPELINE_H_
#define VRSTARS_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vrstars/metrics.h"
#include "vrstars/ordinal.h"
#include "vrstars/stay_graph.h"
#include "vrstars/synth.h"

namespace vrstars {

namespace fs = std::filesystem;

// synth: schema.json, properties.jsonl, stays.csv and ground_truth.jsonl
// ({"id", "label"} for every record) inside `dir`, created if needed.
void write_synthetic(const SynthResult& result, const fs::path& dir);

// label: labels.jsonl for the VRs reached by the co-stay graph.
LabelingResult run_label(const fs::path& schema, const fs::path& properties,
                         const fs::path& stays, const fs::path& out,
                         double min_support);

struct TrainRun {
  fs::path schema;
  fs::path properties;
  // labels.jsonl; when absent the records with official stars are used.
  std::optional<fs::path> labels;
  fs::path out;
  OrdinalTrainOptions train;
  // Hold out a stratified validation split and tune thresholds on it.
  bool tune_thresholds = false;
  double validation_fraction = 0.2;
  std::uint64_t seed = 1;
};

// Training set selection shared by the CLI and bindings.
Dataset training_set(const Dataset& properties,
                     const std::optional<fs::path>& labels);

OrdinalModel run_train(const TrainRun& run);

// Loads properties against the model schema; `schema` is optional and must
// equal the model schema when given.
Dataset load_for_model(const OrdinalModel& model, const fs::path& properties,
                       const std::optional<fs::path>& schema);

// One {"id", "rating", "probs": [4]} line per record.
std::string format_predictions(const OrdinalModel& model, const Dataset& ds,
                               int threads);
// One explanations.jsonl line per record.
std::string format_explanations(const OrdinalModel& model, const Dataset& ds,
                                int threads);
// One suggestions.jsonl line per record.
std::string format_suggestions(const OrdinalModel& model, const Dataset& ds,
                               int threads);

// id -> rating from a jsonl file whose lines carry "rating" (predictions),
// "label" (labels, ground truth) or "stars" (properties; null is skipped).
std::unordered_map<std::string, Rating> load_ratings(const fs::path& path);

// Scores every truth id; throws Error when one has no prediction.
EvalReport run_evaluate(const fs::path& preds, const fs::path& truth);

}  // namespace vrstars

#endif  // VRSTARS_PIPELINE_H_
