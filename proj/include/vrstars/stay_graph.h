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

#ifndef VRSTARS_STAY_GRAPH_H_
#define VRSTARS_STAY_GRAPH_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vrstars/dataset.h"

namespace vrstars {

// Star rating histogram of one vacation rental, weights[s-1] for s stars.
struct StarDistribution {
  std::array<double, kNumClasses> weights{};

  double total() const;
};

// Bipartite co-stay graph between vacation rentals and rated hotels.
//
// weight(v, h) = sum over guests g that stayed in v at least once of the
// number of stays of g in h. Only VR-hotel edges exist.
class StayGraph {
 public:
  struct Edge {
    std::size_t hotel;  // record index in the dataset
    std::int64_t weight;
  };

  // Throws Error when a stay references an unknown property or a hotel
  // lacks official stars.
  static StayGraph build(const StayTable& stays, const Dataset& ds);

  // Edges of the VR at record index `vr`, ordered by hotel index.
  const std::vector<Edge>& edges(std::size_t vr) const;
  std::int64_t weight(std::string_view vr_id, std::string_view hotel_id) const;
  std::size_t edge_count() const;

  std::optional<std::size_t> index_of(std::string_view id) const;
  // Official stars of the record at `index` (hotels only).
  std::optional<int> stars(std::size_t index) const { return stars_[index]; }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::optional<int>> stars_;
  std::vector<std::vector<Edge>> adjacency_;  // by record index
};

// nullopt when the VR has no edges.
std::optional<StarDistribution> star_distribution(const StayGraph& graph,
                                                  std::string_view vr_id);

// Mode of the distribution; ties go to the lower class. nullopt when the
// total weight is below min_support.
std::optional<Rating> collaborative_label(const StarDistribution& dist,
                                          double min_support);

inline constexpr double kDefaultMinSupport = 3.0;

struct LabelEntry {
  std::string id;
  Rating label;
  double support;
};

struct LabelingResult {
  Dataset labeled;  // VRs that received a label, in input order
  std::vector<LabelEntry> entries;
  double coverage = 0.0;  // labeled VRs / all VRs
};

LabelingResult label_dataset(const Dataset& ds, const StayTable& stays,
                             double min_support = kDefaultMinSupport);

// Validation of the co-stay assumption: every hotel is labeled like a VR
// from the stays of its guests in the other hotels. Entry i corresponds to
// record i (nullopt for VRs and unsupported hotels).
std::vector<std::optional<Rating>> hotel_labels_as_predictions(
    const Dataset& ds, const StayTable& stays,
    double min_support = kDefaultMinSupport);

// labels.jsonl: {"id", "label", "support"}.
std::string format_labels(const std::vector<LabelEntry>& entries);

}  // namespace vrstars

#endif  // VRSTARS_STAY_GRAPH_H_
