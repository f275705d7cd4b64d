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

#include "vrstars/stay_graph.h"

#include <algorithm>
#include <map>

#include "json.hpp"
#include "vrstars/error.h"

namespace vrstars {
namespace {

using GuestStays = std::vector<std::pair<std::size_t, std::int64_t>>;

// Per guest: (record index, number of stays), sorted by record index.
// Guests are ordered by id so downstream accumulation order is fixed.
std::vector<GuestStays> group_by_guest(
    const StayTable& stays,
    const std::unordered_map<std::string, std::size_t>& index) {
  std::map<std::string, std::map<std::size_t, std::int64_t>> grouped;
  for (const auto& [guest, property] : stays.rows) {
    auto it = index.find(property);
    if (it == index.end()) {
      throw Error("stay of guest '" + guest + "' references unknown property '" +
                  property + "'");
    }
    ++grouped[guest][it->second];
  }
  std::vector<GuestStays> out;
  out.reserve(grouped.size());
  for (auto& [guest, counts] : grouped) {
    out.emplace_back(counts.begin(), counts.end());
  }
  return out;
}

std::unordered_map<std::string, std::size_t> index_records(const Dataset& ds) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const PropertyRecord& r = ds.records[i];
    if (r.kind == PropertyKind::kHotel && !r.official_stars) {
      throw Error("hotel '" + r.id + "' has no official stars");
    }
    if (!index.emplace(r.id, i).second) {
      throw Error("duplicate property id '" + r.id + "'");
    }
  }
  return index;
}

}  // namespace

double StarDistribution::total() const {
  double t = 0.0;
  for (double w : weights) t += w;
  return t;
}

StayGraph StayGraph::build(const StayTable& stays, const Dataset& ds) {
  StayGraph g;
  g.index_ = index_records(ds);
  g.stars_.reserve(ds.size());
  for (const PropertyRecord& r : ds.records) {
    g.stars_.push_back(r.kind == PropertyKind::kHotel ? r.official_stars
                                                      : std::nullopt);
  }
  std::vector<std::map<std::size_t, std::int64_t>> acc(ds.size());
  for (const GuestStays& visits : group_by_guest(stays, g.index_)) {
    for (const auto& [v, unused] : visits) {
      if (ds.records[v].kind != PropertyKind::kVacationRental) continue;
      for (const auto& [h, count] : visits) {
        if (ds.records[h].kind != PropertyKind::kHotel) continue;
        acc[v][h] += count;
      }
    }
  }
  g.adjacency_.resize(ds.size());
  for (std::size_t v = 0; v < ds.size(); ++v) {
    for (const auto& [h, w] : acc[v]) g.adjacency_[v].push_back({h, w});
  }
  return g;
}

const std::vector<StayGraph::Edge>& StayGraph::edges(std::size_t vr) const {
  return adjacency_.at(vr);
}

std::optional<std::size_t> StayGraph::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::int64_t StayGraph::weight(std::string_view vr_id,
                               std::string_view hotel_id) const {
  auto v = index_of(vr_id);
  auto h = index_of(hotel_id);
  if (!v || !h) return 0;
  for (const Edge& e : adjacency_[*v]) {
    if (e.hotel == *h) return e.weight;
  }
  return 0;
}

std::size_t StayGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& adj : adjacency_) n += adj.size();
  return n;
}

std::optional<StarDistribution> star_distribution(const StayGraph& graph,
                                                  std::string_view vr_id) {
  auto v = graph.index_of(vr_id);
  if (!v) throw Error("unknown property '" + std::string(vr_id) + "'");
  const auto& edges = graph.edges(*v);
  if (edges.empty()) return std::nullopt;
  StarDistribution dist;
  for (const auto& e : edges) {
    dist.weights[*graph.stars(e.hotel) - 1] += static_cast<double>(e.weight);
  }
  return dist;
}

std::optional<Rating> collaborative_label(const StarDistribution& dist,
                                          double min_support) {
  if (dist.total() < min_support) return std::nullopt;
  std::size_t best = 0;
  for (std::size_t s = 1; s < dist.weights.size(); ++s) {
    if (dist.weights[s] > dist.weights[best]) best = s;
  }
  if (!(dist.weights[best] > 0.0)) return std::nullopt;
  return Rating(static_cast<int>(best) + 1);
}

LabelingResult label_dataset(const Dataset& ds, const StayTable& stays,
                             double min_support) {
  const StayGraph graph = StayGraph::build(stays, ds);
  LabelingResult out;
  out.labeled.schema = ds.schema;
  out.labeled.labels.emplace();
  std::size_t n_vr = 0;
  for (const PropertyRecord& r : ds.records) {
    if (r.kind != PropertyKind::kVacationRental) continue;
    ++n_vr;
    auto dist = star_distribution(graph, r.id);
    if (!dist) continue;
    auto label = collaborative_label(*dist, min_support);
    if (!label) continue;
    out.labeled.records.push_back(r);
    out.labeled.labels->push_back(*label);
    out.entries.push_back({r.id, *label, dist->total()});
  }
  out.coverage = n_vr == 0 ? 0.0
                           : static_cast<double>(out.entries.size()) /
                                 static_cast<double>(n_vr);
  return out;
}

std::vector<std::optional<Rating>> hotel_labels_as_predictions(
    const Dataset& ds, const StayTable& stays, double min_support) {
  const auto index = index_records(ds);
  std::vector<StarDistribution> dists(ds.size());
  for (const GuestStays& visits : group_by_guest(stays, index)) {
    for (const auto& [h, unused] : visits) {
      if (ds.records[h].kind != PropertyKind::kHotel) continue;
      for (const auto& [other, count] : visits) {
        if (other == h || ds.records[other].kind != PropertyKind::kHotel) {
          continue;
        }
        dists[h].weights[*ds.records[other].official_stars - 1] +=
            static_cast<double>(count);
      }
    }
  }
  std::vector<std::optional<Rating>> out(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.records[i].kind == PropertyKind::kHotel) {
      out[i] = collaborative_label(dists[i], min_support);
    }
  }
  return out;
}

std::string format_labels(const std::vector<LabelEntry>& entries) {
  std::string out;
  for (const LabelEntry& e : entries) {
    nlohmann::ordered_json j;
    j["id"] = e.id;
    j["label"] = e.label.value();
    j["support"] = e.support;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace vrstars
