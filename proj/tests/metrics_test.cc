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

#include <algorithm>

#include <gtest/gtest.h>

#include "vrstars/error.h"
#include "vrstars/metrics.h"
#include "vrstars/rng.h"

namespace vrstars {
namespace {

std::vector<Rating> R(std::initializer_list<int> v) {
  std::vector<Rating> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

// Direct double loop over the definition.
double naive_mamae(const std::vector<Rating>& p, const std::vector<Rating>& t) {
  double total = 0.0;
  int classes = 0;
  for (int c = 1; c <= 5; ++c) {
    double err = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i].value() != c) continue;
      err += std::abs(p[i].value() - c);
      ++n;
    }
    if (n == 0) continue;
    total += err / n;
    ++classes;
  }
  return total / classes;
}

TEST(Mamae, Examples) {
  EXPECT_EQ(mamae(R({1, 2, 3}), R({1, 2, 3})), 0.0);
  EXPECT_DOUBLE_EQ(mamae(R({3, 3, 3, 3, 3}), R({1, 2, 3, 4, 5})), 1.2);
  EXPECT_DOUBLE_EQ(mamae(R({4, 2, 4}), R({3, 3, 4})), 0.5);
}

TEST(Mamae, Errors) {
  EXPECT_THROW(mamae({}, {}), Error);
  EXPECT_THROW(mamae(R({1}), R({1, 2})), Error);
}

TEST(Mamae, MatchesNaiveAndInvariances) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(60);
    std::vector<Rating> p, t;
    for (std::size_t i = 0; i < n; ++i) {
      p.emplace_back(1 + static_cast<int>(rng.below(5)));
      t.emplace_back(1 + static_cast<int>(rng.below(5)));
    }
    const double m = mamae(p, t);
    EXPECT_NEAR(m, naive_mamae(p, t), 1e-12);
    EXPECT_LE(m, 4.0);
    auto p2 = p, t2 = t;
    p2.insert(p2.end(), p.begin(), p.end());
    t2.insert(t2.end(), t.begin(), t.end());
    EXPECT_NEAR(mamae(p2, t2), m, 1e-12);
    EXPECT_NEAR(weighted_f1(p2, t2), weighted_f1(p, t), 1e-12);
    EXPECT_NEAR(accuracy(p2, t2), accuracy(p, t), 1e-12);
    std::reverse(p2.begin(), p2.end());
    std::reverse(t2.begin(), t2.end());
    EXPECT_NEAR(mamae(p2, t2), m, 1e-12);
  }
}

TEST(WeightedF1, Examples) {
  EXPECT_EQ(weighted_f1(R({1, 2, 5}), R({1, 2, 5})), 1.0);
  EXPECT_EQ(accuracy(R({1, 2, 5}), R({1, 2, 5})), 1.0);
  // Class 1: precision 1/2, recall 1, F1 2/3; class 2: F1 0.
  EXPECT_DOUBLE_EQ(weighted_f1(R({1, 1, 1, 1}), R({1, 1, 2, 2})),
                   0.3333333333333333);
  EXPECT_DOUBLE_EQ(accuracy(R({1, 1, 1, 1}), R({1, 1, 2, 2})), 0.5);
  EXPECT_EQ(weighted_f1(R({4, 4, 5}), R({1, 2, 3})), 0.0);
}

TEST(ModeClassifier, Ties) {
  EXPECT_EQ(mode_classifier(R({3, 3, 4})), Rating(3));
  EXPECT_EQ(mode_classifier(R({2, 2, 4, 4})), Rating(2));
  EXPECT_THROW(mode_classifier({}), Error);
}

TEST(EvalReport, AbsentClassesAndConfusion) {
  const EvalReport r = evaluate(R({3, 3, 5}), R({3, 4, 4}));
  EXPECT_FALSE(r.per_class_mae[0]);
  EXPECT_EQ(*r.per_class_mae[2], 0.0);
  EXPECT_EQ(*r.per_class_mae[3], 1.0);
  EXPECT_EQ(r.mamae, 0.5);
  EXPECT_EQ(r.confusion[3][2], 1);
  EXPECT_EQ(r.confusion[3][4], 1);
  const auto j = r.to_json();
  EXPECT_TRUE(j["per_class_mae"][0].is_null());
  EXPECT_EQ(j["confusion"][3][4], 1);
  EXPECT_NE(r.format_table().find("absent"), std::string::npos);
}

}  // namespace
}  // namespace vrstars
