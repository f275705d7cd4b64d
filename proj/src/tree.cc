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

#include "vrstars/tree.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "vrstars/error.h"

namespace vrstars {

Tree::Tree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error("tree must have at least one node");
}

double Tree::predict(std::span<const double> x) const {
  int i = 0;
  while (!nodes_[i].is_leaf()) {
    const TreeNode& n = nodes_[i];
    i = x[static_cast<std::size_t>(n.feature)] < n.threshold ? n.left : n.right;
  }
  return nodes_[i].value;
}

double Tree::expected_value() const {
  std::function<double(int)> rec = [&](int i) -> double {
    const TreeNode& n = nodes_[i];
    if (n.is_leaf()) return n.value;
    return (node(n.left).cover * rec(n.left) +
            node(n.right).cover * rec(n.right)) /
           n.cover;
  };
  return rec(0);
}

int Tree::depth() const {
  std::function<int(int)> rec = [&](int i) -> int {
    const TreeNode& n = nodes_[i];
    if (n.is_leaf()) return 0;
    return 1 + std::max(rec(n.left), rec(n.right));
  };
  return rec(0);
}

void Tree::validate(std::size_t n_features) const {
  std::vector<int> seen(nodes_.size(), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i < 0 || static_cast<std::size_t>(i) >= nodes_.size()) {
      throw Error("tree child index out of range");
    }
    if (seen[i]++) throw Error("tree node reachable twice");
    const TreeNode& n = nodes_[i];
    if (!(n.cover > 0.0) || !std::isfinite(n.cover)) {
      throw Error("tree node with non-positive cover");
    }
    if (n.is_leaf()) {
      if (n.right >= 0) throw Error("leaf with a right child");
      if (!std::isfinite(n.value)) throw Error("non-finite leaf value");
      return;
    }
    if (n.feature < 0 || static_cast<std::size_t>(n.feature) >= n_features) {
      throw Error("split feature out of range");
    }
    if (!std::isfinite(n.threshold)) throw Error("non-finite threshold");
    rec(n.left);
    rec(n.right);
    if (node(n.left).cover + node(n.right).cover != n.cover) {
      throw Error("cover of a node differs from the sum of its children");
    }
  };
  rec(0);
  for (int s : seen) {
    if (s == 0) throw Error("unreachable tree node");
  }
}

nlohmann::ordered_json Tree::to_json() const {
  std::function<nlohmann::ordered_json(int)> rec = [&](int i) {
    const TreeNode& n = nodes_[i];
    nlohmann::ordered_json j;
    if (n.is_leaf()) {
      j["value"] = n.value;
      j["cover"] = n.cover;
    } else {
      j["feature"] = n.feature;
      j["threshold"] = n.threshold;
      j["cover"] = n.cover;
      j["left"] = rec(n.left);
      j["right"] = rec(n.right);
    }
    return j;
  };
  return rec(0);
}

Tree Tree::from_json(const nlohmann::json& j) {
  std::vector<TreeNode> nodes;
  std::function<int(const nlohmann::json&, int)> rec =
      [&](const nlohmann::json& n, int depth) -> int {
    if (depth > 64) throw Error("tree too deep");
    if (!n.is_object()) throw Error("tree node must be an object");
    const int index = static_cast<int>(nodes.size());
    nodes.emplace_back();
    TreeNode node;
    node.cover = n.at("cover").get<double>();
    if (n.contains("value")) {
      node.value = n.at("value").get<double>();
    } else {
      node.feature = n.at("feature").get<int>();
      node.threshold = n.at("threshold").get<double>();
      node.left = rec(n.at("left"), depth + 1);
      node.right = rec(n.at("right"), depth + 1);
    }
    nodes[static_cast<std::size_t>(index)] = node;
    return index;
  };
  try {
    rec(j, 0);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed tree: ") + e.what());
  }
  return Tree(std::move(nodes));
}

}  // namespace vrstars
