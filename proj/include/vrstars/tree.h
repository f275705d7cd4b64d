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

#ifndef VRSTARS_TREE_H_
#define VRSTARS_TREE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "json.hpp"

namespace vrstars {

// Node of a regression tree stored in a flat array; the root is node 0.
// Internal nodes route x[feature] < threshold to `left`.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaf margin contribution
  double cover = 0.0;  // training rows that reached the node

  bool is_leaf() const { return left < 0; }
};

class Tree {
 public:
  Tree() : nodes_(1) {}
  explicit Tree(std::vector<TreeNode> nodes);

  std::span<const TreeNode> nodes() const { return nodes_; }
  const TreeNode& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  std::size_t size() const { return nodes_.size(); }

  double predict(std::span<const double> x) const;
  // Cover-weighted mean of the leaf values.
  double expected_value() const;
  int depth() const;

  // Structural checks: child indices in range, each node reached once,
  // positive cover, cover(parent) == cover(left) + cover(right), split
  // features below n_features. Throws Error.
  void validate(std::size_t n_features) const;

  // Nested {feature, threshold, cover, left, right} / {value, cover}.
  nlohmann::ordered_json to_json() const;
  static Tree from_json(const nlohmann::json& j);

 private:
  std::vector<TreeNode> nodes_;
};

}  // namespace vrstars

#endif  // VRSTARS_TREE_H_
