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

#ifndef VRSTARS_DATASET_H_
#define VRSTARS_DATASET_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vrstars/schema.h"

namespace vrstars {

inline constexpr int kNumClasses = 5;
inline constexpr int kNumClassifiers = kNumClasses - 1;

// Star class in 1..5.
class Rating {
 public:
  // Throws Error outside 1..5.
  explicit Rating(int value);

  int value() const { return value_; }
  // 0-based position, handy for per-class arrays.
  std::size_t index() const { return static_cast<std::size_t>(value_ - 1); }

  auto operator<=>(const Rating&) const = default;

 private:
  int value_;
};

enum class PropertyKind { kHotel, kVacationRental };

struct PropertyRecord {
  std::string id;
  PropertyKind kind = PropertyKind::kVacationRental;
  std::optional<int> official_stars;
  // Dense, aligned to the schema; binary features stored as 0.0 / 1.0.
  std::vector<double> features;

  bool operator==(const PropertyRecord&) const = default;
};

struct Dataset {
  FeatureSchema schema;
  std::vector<PropertyRecord> records;
  // Aligned to records when present.
  std::optional<std::vector<Rating>> labels;

  std::size_t size() const { return records.size(); }
  bool labeled() const { return labels.has_value(); }

  // Checks every record against the schema and the star/label invariants.
  void validate() const;

  // Labels taken from official_stars; throws if any record lacks stars.
  Dataset with_star_labels() const;
};

// Guest stays; repeated rows are repeated stays.
struct StayTable {
  std::vector<std::pair<std::string, std::string>> rows;  // (guest, property)
};

// Row-major dense matrix of feature values, built once per training run.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  static FeatureMatrix from_dataset(const Dataset& ds);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace vrstars

#endif  // VRSTARS_DATASET_H_
