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

#include "vrstars/pipeline.h"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "json.hpp"
#include "vrstars/error.h"
#include "vrstars/explain.h"
#include "vrstars/io.h"
#include "vrstars/parallel.h"
#include "vrstars/suggest.h"

namespace vrstars {
namespace {

using ojson = nlohmann::ordered_json;

template <typename Fn>
std::string per_record_lines(const Dataset& ds, int threads, Fn&& fn) {
  std::vector<std::string> lines(ds.size());
  parallel_for(ds.size(), threads, [&](std::size_t i) {
    lines[i] = fn(ds.records[i]).dump();
  });
  std::string out;
  for (const std::string& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

}  // namespace

void write_synthetic(const SynthResult& result, const fs::path& dir) {
  fs::create_directories(dir);
  write_schema(dir / "schema.json", result.dataset.schema);
  write_properties(dir / "properties.jsonl", result.dataset);
  write_stays(dir / "stays.csv", result.stays);
  std::string truth;
  for (std::size_t i = 0; i < result.dataset.size(); ++i) {
    ojson j;
    j["id"] = result.dataset.records[i].id;
    j["label"] = result.truth[i].value();
    truth += j.dump();
    truth += '\n';
  }
  write_text_file(dir / "ground_truth.jsonl", truth);
}

LabelingResult run_label(const fs::path& schema, const fs::path& properties,
                         const fs::path& stays, const fs::path& out,
                         double min_support) {
  const Dataset ds = load_properties(properties, load_schema(schema));
  LabelingResult r = label_dataset(ds, load_stays(stays), min_support);
  write_text_file(out, format_labels(r.entries));
  spdlog::info("labeled {} vacation rentals (coverage {:.4f})",
               r.entries.size(), r.coverage);
  return r;
}

Dataset training_set(const Dataset& properties,
                     const std::optional<fs::path>& labels) {
  if (labels) return attach_labels(properties, load_label_map(*labels));
  Dataset rated;
  rated.schema = properties.schema;
  for (const PropertyRecord& r : properties.records) {
    if (r.official_stars) rated.records.push_back(r);
  }
  return rated.with_star_labels();
}

OrdinalModel run_train(const TrainRun& run) {
  const Dataset all = load_properties(run.properties, load_schema(run.schema));
  const Dataset labeled = training_set(all, run.labels);
  if (labeled.size() == 0) throw Error("no labeled records to train on");
  spdlog::info("training on {} labeled records", labeled.size());
  OrdinalTrainOptions opts = run.train;
  opts.gbt.seed = run.seed;
  opts.logistic.seed = run.seed;
  if (!run.tune_thresholds) {
    OrdinalModel m = train_ordinal(labeled, opts);
    write_text_file(run.out, m.serialize());
    return m;
  }
  auto [train, validation] =
      split_dataset(labeled, 1.0 - run.validation_fraction, run.seed);
  const OrdinalModel base = train_ordinal(train, opts);
  OrdinalModel tuned = tune_thresholds(base, validation);
  const Thresholds& t = tuned.thresholds();
  spdlog::info("tuned thresholds {:.2f} {:.2f} {:.2f} {:.2f}", t[0], t[1], t[2],
               t[3]);
  write_text_file(run.out, tuned.serialize());
  return tuned;
}

Dataset load_for_model(const OrdinalModel& model, const fs::path& properties,
                       const std::optional<fs::path>& schema) {
  if (schema && !(load_schema(*schema) == model.schema())) {
    throw SchemaMismatch("schema " + schema->string() +
                         " differs from the model schema");
  }
  return load_properties(properties, model.schema());
}

std::string format_predictions(const OrdinalModel& model, const Dataset& ds,
                               int threads) {
  return per_record_lines(ds, threads, [&](const PropertyRecord& r) {
    const ClassifierProbs p = model.probabilities(r.features);
    ojson j;
    j["id"] = r.id;
    j["rating"] = consistent_label(p, model.thresholds()).value();
    j["probs"] = p;
    return j;
  });
}

std::string format_explanations(const OrdinalModel& model, const Dataset& ds,
                                int threads) {
  return per_record_lines(ds, threads, [&](const PropertyRecord& r) {
    const Explanation e =
        compute_explanation(model, r.features, model.rate(r.features));
    ojson j;
    j["id"] = r.id;
    j.update(e.to_json());
    return j;
  });
}

std::string format_suggestions(const OrdinalModel& model, const Dataset& ds,
                               int threads) {
  return per_record_lines(ds, threads, [&](const PropertyRecord& r) {
    const Rating rating = model.rate(r.features);
    return suggestions_to_json(r.id, rating,
                               compute_suggestions(model, r.features, rating));
  });
}

std::unordered_map<std::string, Rating> load_ratings(const fs::path& path) {
  std::unordered_map<std::string, Rating> out;
  for_each_jsonl(read_text_file(path), [&](const nlohmann::json& j,
                                           std::size_t line) {
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) {
      throw InputError("expected an object with a string \"id\"", line);
    }
    const char* key = j.contains("rating") ? "rating"
                      : j.contains("label") ? "label"
                                            : "stars";
    if (!j.contains(key)) {
      throw InputError("line has no rating, label or stars", line);
    }
    const auto& v = j[key];
    if (v.is_null()) return;
    if (!v.is_number_integer() || v.get<int>() < 1 || v.get<int>() > 5) {
      throw InputError(std::string("\"") + key + "\" must be an integer 1..5",
                       line);
    }
    const std::string id = j["id"].get<std::string>();
    if (!out.emplace(id, Rating(v.get<int>())).second) {
      throw InputError("duplicate id \"" + id + "\"", line);
    }
  });
  return out;
}

EvalReport run_evaluate(const fs::path& preds, const fs::path& truth) {
  const auto p = load_ratings(preds);
  const auto t = load_ratings(truth);
  std::vector<std::string> ids;
  ids.reserve(t.size());
  for (const auto& [id, _] : t) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  std::vector<Rating> pv;
  std::vector<Rating> tv;
  for (const std::string& id : ids) {
    auto it = p.find(id);
    if (it == p.end()) throw Error("no prediction for \"" + id + "\"");
    pv.push_back(it->second);
    tv.push_back(t.at(id));
  }
  return evaluate(pv, tv);
}

}  // namespace vrstars
