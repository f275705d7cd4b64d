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

#include "vrstars/gbt.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vrstars/error.h"
#include "vrstars/logit.h"
#include "vrstars/parallel.h"

namespace vrstars {

void GbtConfig::validate() const {
  if (n_rounds < 0) throw Error("n_rounds must be nonnegative");
  if (!(learning_rate > 0.0)) throw Error("learning_rate must be positive");
  if (max_depth < 1) throw Error("max_depth must be positive");
  if (!(min_child_weight > 0.0)) {
    throw Error("min_child_weight must be positive");
  }
  if (!(l2_lambda > 0.0)) throw Error("l2_lambda must be positive");
  if (n_bins < 2 || n_bins > 65536) throw Error("n_bins must lie in [2, 65536]");
}

nlohmann::ordered_json GbtConfig::to_json() const {
  nlohmann::ordered_json j;
  j["n_rounds"] = n_rounds;
  j["learning_rate"] = learning_rate;
  j["max_depth"] = max_depth;
  j["min_child_weight"] = min_child_weight;
  j["l2_lambda"] = l2_lambda;
  j["n_bins"] = n_bins;
  j["seed"] = seed;
  j["monotone_constraints"] = monotone_constraints;
  return j;
}

GbtConfig GbtConfig::from_json(const nlohmann::json& j) {
  GbtConfig c;
  c.n_rounds = j.value("n_rounds", c.n_rounds);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.max_depth = j.value("max_depth", c.max_depth);
  c.min_child_weight = j.value("min_child_weight", c.min_child_weight);
  c.l2_lambda = j.value("l2_lambda", c.l2_lambda);
  c.n_bins = j.value("n_bins", c.n_bins);
  c.seed = j.value("seed", c.seed);
  c.monotone_constraints =
      j.value("monotone_constraints", c.monotone_constraints);
  c.validate();
  return c;
}

namespace {

// Split point strictly above `lo` and at most `hi`, so lo goes left and hi
// goes right under `x < threshold`.
double split_point(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  return mid > lo ? mid : hi;
}

std::vector<double> numeric_thresholds(std::vector<double> values,
                                       int n_bins) {
  std::sort(values.begin(), values.end());
  std::vector<double> distinct = values;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<double> out;
  if (distinct.size() <= static_cast<std::size_t>(n_bins)) {
    for (std::size_t i = 1; i < distinct.size(); ++i) {
      out.push_back(split_point(distinct[i - 1], distinct[i]));
    }
    return out;
  }
  const std::size_t n = values.size();
  for (int k = 1; k < n_bins; ++k) {
    const double first = values[static_cast<std::size_t>(k) * n /
                                static_cast<std::size_t>(n_bins)];
    auto it = std::lower_bound(distinct.begin(), distinct.end(), first);
    if (it == distinct.begin()) continue;
    const double t = split_point(*(it - 1), first);
    if (out.empty() || t > out.back()) out.push_back(t);
  }
  return out;
}

struct Bounds {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  double clamp(double w) const { return std::min(std::max(w, lo), hi); }
};

struct Split {
  double gain = 0.0;
  int bin = -1;
  double grad_left = 0.0;
  double hess_left = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const BinnedMatrix& x, const FeatureSchema& schema,
              const GbtConfig& cfg, std::span<const double> grad,
              std::span<const double> hess, std::span<double> margins,
              int threads)
      : x_(x), schema_(schema), cfg_(cfg), grad_(grad), hess_(hess),
        margins_(margins), threads_(threads) {}

  Tree build() {
    std::vector<std::uint32_t> rows(x_.rows());
    std::iota(rows.begin(), rows.end(), 0u);
    grow(rows, 0, Bounds{});
    return Tree(std::move(nodes_));
  }

 private:
  double newton(double g, double h) const { return -g / (h + cfg_.l2_lambda); }

  bool constrained(std::size_t f) const {
    return cfg_.monotone_constraints && schema_[f].monotone == 1;
  }

  Split best_split(std::size_t f, const std::vector<std::uint32_t>& rows,
                   double g_total, double h_total) const {
    Split best;
    const std::size_t n_bins = x_.thresholds(f).size() + 1;
    if (n_bins < 2) return best;
    std::vector<double> g(n_bins, 0.0);
    std::vector<double> h(n_bins, 0.0);
    std::vector<std::size_t> c(n_bins, 0);
    const auto col = x_.column(f);
    for (std::uint32_t r : rows) {
      const std::uint16_t b = col[r];
      g[b] += grad_[r];
      h[b] += hess_[r];
      ++c[b];
    }
    const double lambda = cfg_.l2_lambda;
    const double parent = g_total * g_total / (h_total + lambda);
    double gl = 0.0;
    double hl = 0.0;
    std::size_t cl = 0;
    for (std::size_t k = 0; k + 1 < n_bins; ++k) {
      gl += g[k];
      hl += h[k];
      cl += c[k];
      const std::size_t cr = rows.size() - cl;
      if (cl == 0 || cr == 0) continue;
      const double gr = g_total - gl;
      const double hr = h_total - hl;
      if (hl < cfg_.min_child_weight || hr < cfg_.min_child_weight) continue;
      if (constrained(f) && newton(gl, hl) > newton(gr, hr)) continue;
      const double gain =
          0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) - parent);
      if (gain > best.gain) {
        best = {gain, static_cast<int>(k), gl, hl};
      }
    }
    return best;
  }

  int grow(std::vector<std::uint32_t>& rows, int depth, const Bounds& bounds) {
    double g_total = 0.0;
    double h_total = 0.0;
    for (std::uint32_t r : rows) {
      g_total += grad_[r];
      h_total += hess_[r];
    }
    const int index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[index].cover = static_cast<double>(rows.size());

    int feature = -1;
    Split split;
    if (depth < cfg_.max_depth) {
      std::vector<Split> per_feature(x_.cols());
      parallel_for(x_.cols(), threads_, [&](std::size_t f) {
        per_feature[f] = best_split(f, rows, g_total, h_total);
      });
      for (std::size_t f = 0; f < per_feature.size(); ++f) {
        if (per_feature[f].bin >= 0 && per_feature[f].gain > split.gain) {
          split = per_feature[f];
          feature = static_cast<int>(f);
        }
      }
    }

    if (feature < 0) {
      const double value =
          cfg_.learning_rate * bounds.clamp(newton(g_total, h_total));
      nodes_[index].value = value;
      for (std::uint32_t r : rows) margins_[r] += value;
      return index;
    }

    const auto f = static_cast<std::size_t>(feature);
    const auto col = x_.column(f);
    std::vector<std::uint32_t> left;
    std::vector<std::uint32_t> right;
    for (std::uint32_t r : rows) {
      (col[r] <= split.bin ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    Bounds left_bounds = bounds;
    Bounds right_bounds = bounds;
    if (constrained(f)) {
      const double wl = bounds.clamp(newton(split.grad_left, split.hess_left));
      const double wr = bounds.clamp(
          newton(g_total - split.grad_left, h_total - split.hess_left));
      const double mid = (wl + wr) / 2.0;
      left_bounds.hi = std::min(bounds.hi, mid);
      right_bounds.lo = std::max(bounds.lo, mid);
    }

    nodes_[index].feature = feature;
    nodes_[index].threshold = x_.thresholds(f)[static_cast<std::size_t>(split.bin)];
    const int l = grow(left, depth + 1, left_bounds);
    const int r = grow(right, depth + 1, right_bounds);
    nodes_[index].left = l;
    nodes_[index].right = r;
    return index;
  }

  const BinnedMatrix& x_;
  const FeatureSchema& schema_;
  const GbtConfig& cfg_;
  std::span<const double> grad_;
  std::span<const double> hess_;
  std::span<double> margins_;
  int threads_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

BinnedMatrix BinnedMatrix::build(const FeatureMatrix& x,
                                 const FeatureSchema& schema, int n_bins) {
  if (x.cols() != schema.size()) {
    throw SchemaMismatch("feature matrix width differs from schema");
  }
  BinnedMatrix out;
  out.rows_ = x.rows();
  out.thresholds_.resize(x.cols());
  out.bins_.resize(x.rows() * x.cols());
  std::vector<double> column(x.rows());
  for (std::size_t f = 0; f < x.cols(); ++f) {
    for (std::size_t r = 0; r < x.rows(); ++r) column[r] = x(r, f);
    auto& t = out.thresholds_[f];
    if (schema[f].kind == FeatureKind::kBinary) {
      t = {0.5};
    } else {
      t = numeric_thresholds(column, n_bins);
    }
    for (std::size_t r = 0; r < x.rows(); ++r) {
      out.bins_[f * out.rows_ + r] = static_cast<std::uint16_t>(
          std::upper_bound(t.begin(), t.end(), column[r]) - t.begin());
    }
  }
  return out;
}

BoostedClassifier::BoostedClassifier(FeatureSchema schema, double base_margin,
                                     std::vector<Tree> trees, GbtConfig config)
    : schema_(std::move(schema)),
      base_margin_(base_margin),
      trees_(std::move(trees)),
      config_(config) {
  for (const Tree& t : trees_) t.validate(schema_.size());
}

double BoostedClassifier::margin_unchecked(std::span<const double> x) const {
  double m = base_margin_;
  for (const Tree& t : trees_) m += t.predict(x);
  return m;
}

double BoostedClassifier::margin(std::span<const double> x) const {
  schema_.check_vector(x);
  return margin_unchecked(x);
}

double BoostedClassifier::probability(std::span<const double> x) const {
  return sigmoid(margin(x));
}

nlohmann::ordered_json BoostedClassifier::to_json() const {
  nlohmann::ordered_json j;
  j["base_margin"] = base_margin_;
  nlohmann::ordered_json trees = nlohmann::ordered_json::array();
  for (const Tree& t : trees_) trees.push_back(t.to_json());
  j["trees"] = std::move(trees);
  return j;
}

BoostedClassifier BoostedClassifier::from_json(const nlohmann::json& j,
                                               const FeatureSchema& schema,
                                               const GbtConfig& config) {
  if (!j.is_object() || !j.contains("base_margin") || !j.contains("trees") ||
      !j["trees"].is_array() || !j["base_margin"].is_number()) {
    throw Error("classifier must carry \"base_margin\" and \"trees\"");
  }
  std::vector<Tree> trees;
  for (const auto& t : j["trees"]) trees.push_back(Tree::from_json(t));
  return BoostedClassifier(schema, j["base_margin"].get<double>(),
                           std::move(trees), config);
}

BoostedClassifier train_gbt(const BinnedMatrix& x,
                            std::span<const std::uint8_t> labels,
                            const FeatureSchema& schema, const GbtConfig& cfg,
                            int threads) {
  cfg.validate();
  if (x.rows() == 0) throw Error("cannot train on an empty dataset");
  if (labels.size() != x.rows()) {
    throw Error("label count differs from row count");
  }
  if (x.cols() != schema.size()) {
    throw SchemaMismatch("binned matrix width differs from schema");
  }
  std::size_t positives = 0;
  for (std::uint8_t y : labels) {
    if (y > 1) throw Error("binary labels must be 0 or 1");
    positives += y;
  }
  if (positives == 0 || positives == labels.size()) {
    throw Error("training labels contain a single class");
  }

  const std::size_t n = x.rows();
  const double base_rate =
      static_cast<double>(positives) / static_cast<double>(n);
  const double base_margin = logit(base_rate);
  std::vector<double> margins(n, base_margin);
  std::vector<double> grad(n);
  std::vector<double> hess(n);
  std::vector<Tree> trees;
  trees.reserve(static_cast<std::size_t>(cfg.n_rounds));
  for (int round = 0; round < cfg.n_rounds; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = sigmoid(margins[i]);
      grad[i] = p - static_cast<double>(labels[i]);
      hess[i] = p * (1.0 - p);
    }
    TreeBuilder builder(x, schema, cfg, grad, hess, margins, threads);
    trees.push_back(builder.build());
  }
  return BoostedClassifier(schema, base_margin, std::move(trees), cfg);
}

BoostedClassifier train_gbt(const FeatureMatrix& x,
                            std::span<const std::uint8_t> labels,
                            const FeatureSchema& schema, const GbtConfig& cfg,
                            int threads) {
  cfg.validate();
  return train_gbt(BinnedMatrix::build(x, schema, cfg.n_bins), labels, schema,
                   cfg, threads);
}

}  // namespace vrstars
