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

#include "vrstars/dataset.h"

#include <algorithm>
#include <unordered_set>

#include "vrstars/error.h"

namespace vrstars {

Rating::Rating(int value) : value_(value) {
  if (value < 1 || value > kNumClasses) {
    throw Error("rating " + std::to_string(value) + " outside 1..5");
  }
}

void Dataset::validate() const {
  std::unordered_set<std::string> seen;
  for (const PropertyRecord& r : records) {
    if (!seen.insert(r.id).second) {
      throw Error("duplicate property id '" + r.id + "'");
    }
    schema.check_vector(r.features);
    if (r.official_stars && (*r.official_stars < 1 || *r.official_stars > 5)) {
      throw Error("property '" + r.id + "': stars outside 1..5");
    }
  }
  if (labels && labels->size() != records.size()) {
    throw Error("labels length " + std::to_string(labels->size()) +
                " differs from records length " +
                std::to_string(records.size()));
  }
}

Dataset Dataset::with_star_labels() const {
  Dataset out{schema, records, std::vector<Rating>{}};
  out.labels->reserve(records.size());
  for (const PropertyRecord& r : records) {
    if (!r.official_stars) {
      throw Error("property '" + r.id + "' has no stars to use as a label");
    }
    out.labels->emplace_back(*r.official_stars);
  }
  return out;
}

FeatureMatrix FeatureMatrix::from_dataset(const Dataset& ds) {
  FeatureMatrix m(ds.size(), ds.schema.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& f = ds.records[i].features;
    std::copy(f.begin(), f.end(), m.row(i).begin());
  }
  return m;
}

}  // namespace vrstars
