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

#include "vrstars/explain.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "vrstars/error.h"
#include "vrstars/logit.h"

namespace vrstars {
namespace {

// One element of the unique feature path used by TreeSHAP: the feature,
// the fraction of "zero" paths (feature marginalized) and "one" paths
// (feature fixed to x) flowing through it, and the permutation weight.
struct PathElement {
  int feature = -1;
  double zero_fraction = 0.0;
  double one_fraction = 0.0;
  double weight = 0.0;
};

void extend_path(std::vector<PathElement>& path, double zero_fraction,
                 double one_fraction, int feature) {
  const std::size_t depth = path.size();
  path.push_back({feature, zero_fraction, one_fraction, depth == 0 ? 1.0 : 0.0});
  const double denom = static_cast<double>(depth + 1);
  for (std::size_t i = depth; i-- > 0;) {
    path[i + 1].weight +=
        one_fraction * path[i].weight * static_cast<double>(i + 1) / denom;
    path[i].weight = zero_fraction * path[i].weight *
                     static_cast<double>(depth - i) / denom;
  }
}

void unwind_path(std::vector<PathElement>& path, std::size_t index) {
  const std::size_t depth = path.size() - 1;
  const double one = path[index].one_fraction;
  const double zero = path[index].zero_fraction;
  const double denom = static_cast<double>(depth + 1);
  double next = path[depth].weight;
  for (std::size_t i = depth; i-- > 0;) {
    if (one != 0.0) {
      const double tmp = path[i].weight;
      path[i].weight = next * denom / (static_cast<double>(i + 1) * one);
      next = tmp - path[i].weight * zero * static_cast<double>(depth - i) / denom;
    } else {
      path[i].weight =
          path[i].weight * denom / (zero * static_cast<double>(depth - i));
    }
  }
  for (std::size_t i = index; i < depth; ++i) {
    path[i].feature = path[i + 1].feature;
    path[i].zero_fraction = path[i + 1].zero_fraction;
    path[i].one_fraction = path[i + 1].one_fraction;
  }
  path.pop_back();
}

// Total permutation weight of the path with element `index` removed.
double unwound_sum(const std::vector<PathElement>& path, std::size_t index) {
  const std::size_t depth = path.size() - 1;
  const double one = path[index].one_fraction;
  const double zero = path[index].zero_fraction;
  const double denom = static_cast<double>(depth + 1);
  double next = path[depth].weight;
  double total = 0.0;
  for (std::size_t i = depth; i-- > 0;) {
    if (one != 0.0) {
      const double tmp = next * denom / (static_cast<double>(i + 1) * one);
      total += tmp;
      next = path[i].weight - tmp * zero * static_cast<double>(depth - i) / denom;
    } else {
      total += path[i].weight * denom / (zero * static_cast<double>(depth - i));
    }
  }
  return total;
}

void recurse(const Tree& tree, std::span<const double> x, std::vector<double>& phi,
             int node, std::vector<PathElement> path, double zero_fraction,
             double one_fraction, int feature) {
  extend_path(path, zero_fraction, one_fraction, feature);
  const TreeNode& n = tree.node(node);
  if (n.is_leaf()) {
    for (std::size_t i = 1; i < path.size(); ++i) {
      const double w = unwound_sum(path, i);
      const PathElement& e = path[i];
      phi[static_cast<std::size_t>(e.feature)] +=
          w * (e.one_fraction - e.zero_fraction) * n.value;
    }
    return;
  }
  const bool goes_left = x[static_cast<std::size_t>(n.feature)] < n.threshold;
  const int hot = goes_left ? n.left : n.right;
  const int cold = goes_left ? n.right : n.left;

  double incoming_zero = 1.0;
  double incoming_one = 1.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (path[i].feature == n.feature) {
      incoming_zero = path[i].zero_fraction;
      incoming_one = path[i].one_fraction;
      unwind_path(path, i);
      break;
    }
  }
  recurse(tree, x, phi, hot, path,
          incoming_zero * tree.node(hot).cover / n.cover, incoming_one,
          n.feature);
  recurse(tree, x, phi, cold, path,
          incoming_zero * tree.node(cold).cover / n.cover, 0.0, n.feature);
}

void check_cover(const Tree& tree) {
  for (const TreeNode& n : tree.nodes()) {
    if (!(n.cover > 0.0)) throw Error("tree node with zero cover");
  }
}

// E[tree(x) | x_S] with S given as a bitmask over feature ids.
double conditional_expectation(const Tree& tree, std::span<const double> x,
                               std::uint32_t subset, int node) {
  const TreeNode& n = tree.node(node);
  if (n.is_leaf()) return n.value;
  if (subset & (1u << n.feature)) {
    const int next =
        x[static_cast<std::size_t>(n.feature)] < n.threshold ? n.left : n.right;
    return conditional_expectation(tree, x, subset, next);
  }
  return (tree.node(n.left).cover *
              conditional_expectation(tree, x, subset, n.left) +
          tree.node(n.right).cover *
              conditional_expectation(tree, x, subset, n.right)) /
         n.cover;
}

}  // namespace

ShapValues tree_shap(const BoostedClassifier& model,
                     std::span<const double> x) {
  model.schema().check_vector(x);
  ShapValues out;
  out.phi.assign(model.schema().size(), 0.0);
  out.base_value = model.base_margin();
  std::vector<PathElement> path;
  for (const Tree& tree : model.trees()) {
    check_cover(tree);
    out.base_value += tree.expected_value();
    path.clear();
    recurse(tree, x, out.phi, 0, path, 1.0, 1.0, -1);
  }
  return out;
}

std::vector<double> brute_force_shap(const BoostedClassifier& model,
                                     std::span<const double> x) {
  const std::size_t m = model.schema().size();
  if (m > kMaxBruteForceFeatures) {
    throw Error("brute-force Shapley values support at most 15 features");
  }
  model.schema().check_vector(x);
  const std::uint32_t n_subsets = 1u << m;
  std::vector<double> value(n_subsets, 0.0);
  for (const Tree& tree : model.trees()) {
    check_cover(tree);
    for (std::uint32_t s = 0; s < n_subsets; ++s) {
      value[s] += conditional_expectation(tree, x, s, 0);
    }
  }
  std::vector<double> factorial(m + 1, 1.0);
  for (std::size_t i = 1; i <= m; ++i) factorial[i] = factorial[i - 1] * i;

  std::vector<double> phi(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const std::uint32_t bit = 1u << j;
    for (std::uint32_t s = 0; s < n_subsets; ++s) {
      if (s & bit) continue;
      const auto size = static_cast<std::size_t>(std::popcount(s));
      const double w =
          factorial[size] * factorial[m - size - 1] / factorial[m];
      phi[j] += w * (value[s | bit] - value[s]);
    }
  }
  return phi;
}

std::vector<Attribution> Explanation::top(std::size_t top_positive,
                                          std::size_t top_negative) const {
  std::vector<Attribution> out;
  std::size_t pos = 0;
  std::size_t neg = 0;
  for (const Attribution& a : ranked) {
    if (a.value > 0.0 && pos < top_positive) {
      out.push_back(a);
      ++pos;
    } else if (a.value < 0.0 && neg < top_negative) {
      out.push_back(a);
      ++neg;
    }
  }
  return out;
}

nlohmann::ordered_json Explanation::to_json(std::size_t top_positive,
                                            std::size_t top_negative) const {
  nlohmann::ordered_json j;
  j["rating"] = rating.value();
  j["responsible_k"] = responsible.value();
  if (std::isfinite(base_value)) {
    j["base_value"] = base_value;
  } else {
    j["base_value"] = nullptr;
  }
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  for (const Attribution& a : top(top_positive, top_negative)) {
    nlohmann::ordered_json item;
    item["feature"] = a.name;
    item["shap"] = a.value;
    items.push_back(std::move(item));
  }
  j["items"] = std::move(items);
  j["probability"] = probability;
  j["method"] = method == ExplanationMethod::kTreeShap ? "tree_shap"
                : method == ExplanationMethod::kLinear ? "linear"
                                                       : "constant";
  return j;
}

Explanation compute_explanation(const OrdinalModel& model,
                                std::span<const double> x, Rating rating) {
  const ClassifierProbs probs = model.probabilities(x);
  if (consistent_label(probs, model.thresholds()) != rating) {
    throw Error("rating " + std::to_string(rating.value()) +
                " is not the model's rating for this property");
  }
  Explanation e;
  e.rating = rating;
  e.responsible = responsible_classifier(rating);
  const BinaryScorer& scorer = model.classifier(e.responsible);
  e.probability = probs[e.responsible.index()];
  if (const auto* gbt = scorer.gbt()) {
    ShapValues s = tree_shap(*gbt, x);
    e.method = ExplanationMethod::kTreeShap;
    e.base_value = s.base_value;
    e.shap = std::move(s.phi);
  } else if (const auto* lin = scorer.logistic()) {
    e.method = ExplanationMethod::kLinear;
    e.base_value = lin->intercept();
    e.shap = lin->contributions(x);
  } else {
    e.method = ExplanationMethod::kConstant;
    e.base_value = scorer.margin(x);
    e.shap.assign(model.schema().size(), 0.0);
  }

  const FeatureSchema& schema = model.schema();
  for (std::size_t f = 0; f < e.shap.size(); ++f) {
    if (e.shap[f] != 0.0) e.ranked.push_back({f, schema[f].name, e.shap[f]});
  }
  std::stable_sort(e.ranked.begin(), e.ranked.end(),
                   [](const Attribution& a, const Attribution& b) {
                     const bool pa = a.value > 0.0;
                     const bool pb = b.value > 0.0;
                     if (pa != pb) return pa;
                     const double ma = std::abs(a.value);
                     const double mb = std::abs(b.value);
                     if (ma != mb) return ma > mb;
                     return a.feature < b.feature;
                   });
  return e;
}

}  // namespace vrstars
