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

#include "vrstars/ordinal.h"

#include <cmath>
#include <limits>

#include <spdlog/spdlog.h>

#include "json.hpp"
#include "vrstars/error.h"
#include "vrstars/metrics.h"

namespace vrstars {

ClassifierIndex::ClassifierIndex(int k) : k_(k) {
  if (k < 1 || k > kNumClassifiers) {
    throw Error("classifier index " + std::to_string(k) + " outside 1..4");
  }
}

std::vector<std::uint8_t> expand_labels(std::span<const Rating> labels,
                                        ClassifierIndex k) {
  std::vector<std::uint8_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out[i] = labels[i].value() > k.value() ? 1 : 0;
  }
  return out;
}

Rating consistent_label(const ClassifierProbs& probs,
                        const Thresholds& thresholds) {
  int rating = 1;
  for (int k = 1; k <= kNumClassifiers; ++k) {
    if (probs[k - 1] >= thresholds[k - 1] && rating == k) rating = k + 1;
  }
  return Rating(rating);
}

ClassifierIndex responsible_classifier(Rating c) {
  return ClassifierIndex(c.value() < 3 ? 1 : c.value() - 1);
}

OrdinalModel::OrdinalModel(
    FeatureSchema schema,
    std::array<BinaryScorer, kNumClassifiers> classifiers,
    Thresholds thresholds, BaseKind base_kind, GbtConfig gbt_config)
    : schema_(std::move(schema)),
      classifiers_(std::move(classifiers)),
      thresholds_(thresholds),
      base_kind_(base_kind),
      gbt_config_(gbt_config) {
  for (double t : thresholds_) {
    if (!(t > 0.0 && t < 1.0)) throw Error("thresholds must lie in (0, 1)");
  }
  for (const BinaryScorer& c : classifiers_) {
    if (const auto* m = c.gbt()) {
      if (base_kind_ != BaseKind::kGbt) {
        throw Error("gbt classifier inside a logistic model");
      }
      if (!(m->schema() == schema_)) {
        throw Error("classifier schema differs from model schema");
      }
    } else if (const auto* m = c.logistic()) {
      if (base_kind_ != BaseKind::kLogistic) {
        throw Error("logistic classifier inside a gbt model");
      }
      if (m->size() != schema_.size()) {
        throw Error("classifier width differs from model schema");
      }
    }
  }
}

ClassifierProbs OrdinalModel::probabilities(std::span<const double> x) const {
  schema_.check_vector(x);
  ClassifierProbs p{};
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = classifiers_[k].probability(x);
  }
  return p;
}

Rating OrdinalModel::rate(std::span<const double> x) const {
  return consistent_label(probabilities(x), thresholds_);
}

OrdinalModel OrdinalModel::with_thresholds(const Thresholds& thresholds) const {
  return OrdinalModel(schema_, classifiers_, thresholds, base_kind_,
                      gbt_config_);
}

std::string OrdinalModel::serialize() const {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["schema"] = schema_to_json(schema_);
  j["thresholds"] = thresholds_;
  nlohmann::ordered_json classifiers = nlohmann::ordered_json::array();
  for (const BinaryScorer& c : classifiers_) classifiers.push_back(c.to_json());
  j["classifiers"] = std::move(classifiers);
  j["base_kind"] = base_kind_ == BaseKind::kGbt ? "gbt" : "logistic";
  j["hyperparameters"] = gbt_config_.to_json();
  return j.dump() + "\n";
}

OrdinalModel OrdinalModel::parse(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("model is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("model must be a JSON object");
  if (!j.contains("version") || j["version"] != 1) {
    throw Error("unsupported model version (expected 1)");
  }
  FeatureSchema schema = schema_from_json(j.at("schema"));
  const auto& th = j.at("thresholds");
  if (!th.is_array() || th.size() != kNumClassifiers) {
    throw Error("model needs exactly 4 thresholds");
  }
  Thresholds thresholds{};
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    if (!th[k].is_number()) throw Error("thresholds must be numbers");
    thresholds[k] = th[k].get<double>();
  }
  const std::string kind = j.value("base_kind", "");
  BaseKind base;
  if (kind == "gbt") {
    base = BaseKind::kGbt;
  } else if (kind == "logistic") {
    base = BaseKind::kLogistic;
  } else {
    throw Error("base_kind must be \"gbt\" or \"logistic\"");
  }
  GbtConfig cfg;
  if (j.contains("hyperparameters")) {
    cfg = GbtConfig::from_json(j["hyperparameters"]);
  }
  const auto& cl = j.at("classifiers");
  if (!cl.is_array() || cl.size() != kNumClassifiers) {
    throw Error("model needs exactly 4 classifiers");
  }
  std::array<BinaryScorer, kNumClassifiers> classifiers;
  for (std::size_t k = 0; k < classifiers.size(); ++k) {
    classifiers[k] = BinaryScorer::from_json(cl[k], base, schema, cfg);
  }
  return OrdinalModel(std::move(schema), std::move(classifiers), thresholds,
                      base, cfg);
}

OrdinalModel train_ordinal(const Dataset& labeled,
                           const OrdinalTrainOptions& options) {
  if (!labeled.labeled()) throw Error("train_ordinal requires labels");
  if (labeled.size() == 0) throw Error("cannot train on an empty dataset");
  labeled.validate();
  const FeatureMatrix x = FeatureMatrix::from_dataset(labeled);
  BinnedMatrix binned;
  if (options.base == BaseKind::kGbt) {
    options.gbt.validate();
    binned = BinnedMatrix::build(x, labeled.schema, options.gbt.n_bins);
  }

  std::array<BinaryScorer, kNumClassifiers> classifiers;
  for (int k = 1; k <= kNumClassifiers; ++k) {
    const auto y = expand_labels(*labeled.labels, ClassifierIndex(k));
    std::size_t positives = 0;
    for (std::uint8_t v : y) positives += v;
    BinaryScorer& out = classifiers[static_cast<std::size_t>(k - 1)];
    if (positives == 0 || positives == y.size()) {
      const bool positive = positives != 0;
      spdlog::warn(
          "classifier {} sees a single class; using a constant {} scorer", k,
          positive ? "positive" : "negative");
      out = ConstantScorer{positive};
    } else if (options.base == BaseKind::kGbt) {
      out = train_gbt(binned, y, labeled.schema, options.gbt, options.threads);
    } else {
      out = train_logistic(x, y, options.logistic);
    }
  }
  return OrdinalModel(labeled.schema, std::move(classifiers),
                      kDefaultThresholds, options.base, options.gbt);
}

OrdinalModel tune_thresholds(const OrdinalModel& model,
                             const Dataset& validation) {
  if (!validation.labeled() || validation.size() == 0) {
    throw Error("threshold tuning needs a nonempty labeled validation set");
  }
  std::vector<ClassifierProbs> probs;
  probs.reserve(validation.size());
  for (const PropertyRecord& r : validation.records) {
    probs.push_back(model.probabilities(r.features));
  }
  const auto& truth = *validation.labels;
  std::vector<Rating> preds(truth.size(), Rating(1));

  auto score = [&](const Thresholds& t) {
    for (std::size_t i = 0; i < probs.size(); ++i) {
      preds[i] = consistent_label(probs[i], t);
    }
    return mamae(preds, truth);
  };

  Thresholds current = model.thresholds();
  for (std::size_t k = 0; k < current.size(); ++k) {
    double best_value = current[k];
    double best_score = std::numeric_limits<double>::infinity();
    for (int step = 1; step <= 19; ++step) {
      const double candidate = step / 20.0;
      Thresholds trial = current;
      trial[k] = candidate;
      const double s = score(trial);
      const bool better = s < best_score;
      const bool tie_closer =
          s == best_score &&
          std::abs(candidate - 0.5) < std::abs(best_value - 0.5);
      if (better || tie_closer) {
        best_score = s;
        best_value = candidate;
      }
    }
    current[k] = best_value;
  }
  return model.with_thresholds(current);
}

}  // namespace vrstars
