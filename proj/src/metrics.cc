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

#include "vrstars/metrics.h"

#include <cstdio>
#include <cstdlib>

#include "vrstars/error.h"

namespace vrstars {
namespace {

void check_inputs(std::span<const Rating> preds,
                  std::span<const Rating> truth) {
  if (truth.empty()) throw Error("metrics need at least one example");
  if (preds.size() != truth.size()) {
    throw Error("prediction count " + std::to_string(preds.size()) +
                " differs from truth count " + std::to_string(truth.size()));
  }
}

using Confusion = std::array<std::array<std::int64_t, kNumClasses>, kNumClasses>;

Confusion confusion_matrix(std::span<const Rating> preds,
                           std::span<const Rating> truth) {
  Confusion c{};
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++c[truth[i].index()][preds[i].index()];
  }
  return c;
}

}  // namespace

EvalReport evaluate(std::span<const Rating> preds,
                    std::span<const Rating> truth) {
  check_inputs(preds, truth);
  EvalReport r;
  r.confusion = confusion_matrix(preds, truth);

  double mae_sum = 0.0;
  int present = 0;
  for (int t = 0; t < kNumClasses; ++t) {
    std::int64_t support = 0;
    double abs_err = 0.0;
    for (int p = 0; p < kNumClasses; ++p) {
      support += r.confusion[t][p];
      abs_err += static_cast<double>(r.confusion[t][p]) * std::abs(p - t);
    }
    if (support == 0) continue;
    r.per_class_mae[t] = abs_err / static_cast<double>(support);
    mae_sum += *r.per_class_mae[t];
    ++present;
  }
  r.mamae = mae_sum / present;

  const auto n = static_cast<double>(truth.size());
  double f1_sum = 0.0;
  std::int64_t correct = 0;
  for (int c = 0; c < kNumClasses; ++c) {
    std::int64_t support = 0;
    std::int64_t predicted = 0;
    for (int k = 0; k < kNumClasses; ++k) {
      support += r.confusion[c][k];
      predicted += r.confusion[k][c];
    }
    const std::int64_t tp = r.confusion[c][c];
    correct += tp;
    if (support == 0 || tp == 0) continue;
    const double precision = static_cast<double>(tp) / predicted;
    const double recall = static_cast<double>(tp) / support;
    const double f1 = 2.0 * precision * recall / (precision + recall);
    f1_sum += f1 * static_cast<double>(support);
  }
  r.weighted_f1 = f1_sum / n;
  r.accuracy = static_cast<double>(correct) / n;
  return r;
}

double mamae(std::span<const Rating> preds, std::span<const Rating> truth) {
  return evaluate(preds, truth).mamae;
}

double weighted_f1(std::span<const Rating> preds,
                   std::span<const Rating> truth) {
  return evaluate(preds, truth).weighted_f1;
}

double accuracy(std::span<const Rating> preds, std::span<const Rating> truth) {
  return evaluate(preds, truth).accuracy;
}

Rating mode_classifier(std::span<const Rating> train_labels) {
  if (train_labels.empty()) throw Error("mode of an empty label set");
  std::array<std::size_t, kNumClasses> counts{};
  for (const Rating& r : train_labels) ++counts[r.index()];
  std::size_t best = 0;
  for (std::size_t c = 1; c < counts.size(); ++c) {
    if (counts[c] > counts[best]) best = c;
  }
  return Rating(static_cast<int>(best) + 1);
}

nlohmann::ordered_json EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["mamae"] = mamae;
  j["weighted_f1"] = weighted_f1;
  j["accuracy"] = accuracy;
  nlohmann::ordered_json per_class = nlohmann::ordered_json::array();
  for (const auto& v : per_class_mae) {
    if (v) {
      per_class.push_back(*v);
    } else {
      per_class.push_back(nullptr);
    }
  }
  j["per_class_mae"] = std::move(per_class);
  j["confusion"] = confusion;
  return j;
}

std::string EvalReport::format_table() const {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%-12s %8.4f\n%-12s %8.4f\n%-12s %8.4f\n",
                "MAMAE", mamae, "weighted F1", weighted_f1, "accuracy",
                accuracy);
  out += buf;
  out += "class  support      MAE   pred:    1      2      3      4      5\n";
  for (int t = 0; t < kNumClasses; ++t) {
    std::int64_t support = 0;
    for (auto v : confusion[t]) support += v;
    if (per_class_mae[t]) {
      std::snprintf(buf, sizeof(buf), "%5d %8lld %8.4f       ", t + 1,
                    static_cast<long long>(support), *per_class_mae[t]);
    } else {
      std::snprintf(buf, sizeof(buf), "%5d %8lld   absent       ", t + 1,
                    static_cast<long long>(support));
    }
    out += buf;
    for (auto v : confusion[t]) {
      std::snprintf(buf, sizeof(buf), "%7lld", static_cast<long long>(v));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace vrstars
