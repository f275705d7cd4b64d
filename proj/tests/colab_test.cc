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

#include <map>

#include <gtest/gtest.h>

#include "test_util.h"
#include "vrstars/error.h"
#include "vrstars/stay_graph.h"
#include "vrstars/synth.h"

namespace vrstars {
namespace {

using testing::make_schema;

PropertyRecord hotel(const std::string& id, int stars) {
  return {id, PropertyKind::kHotel, stars, {0.0}};
}
PropertyRecord vr(const std::string& id) {
  return {id, PropertyKind::kVacationRental, std::nullopt, {0.0}};
}

Dataset toy(std::vector<PropertyRecord> records) {
  Dataset ds;
  ds.schema = make_schema(1, 0);
  ds.records = std::move(records);
  return ds;
}

StayTable stays(std::vector<std::pair<std::string, std::string>> rows) {
  return StayTable{std::move(rows)};
}

TEST(StayGraph, WeightCountsHotelStaysOfVrGuests) {
  const Dataset ds = toy({vr("v1"), hotel("h1", 4)});
  const StayGraph g = StayGraph::build(
      stays({{"g1", "v1"}, {"g1", "h1"}, {"g1", "h1"}, {"g2", "v1"}, {"g2", "h1"}}),
      ds);
  EXPECT_EQ(g.weight("v1", "h1"), 3);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(StayGraph, RepeatedVrStaysDoNotMultiply) {
  const Dataset ds = toy({vr("v1"), hotel("h1", 4)});
  const StayGraph g = StayGraph::build(
      stays({{"g1", "v1"}, {"g1", "v1"}, {"g1", "h1"}}), ds);
  EXPECT_EQ(g.weight("v1", "h1"), 1);
}

TEST(StayGraph, HotelOnlyGuestsAddNothing) {
  const Dataset ds = toy({vr("v1"), hotel("h1", 4), hotel("h2", 2)});
  const StayGraph g =
      StayGraph::build(stays({{"g1", "h1"}, {"g1", "h2"}}), ds);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(StayGraph, DisjointGuests) {
  const Dataset ds = toy({vr("v1"), vr("v2"), hotel("h1", 4), hotel("h2", 2)});
  const StayGraph g = StayGraph::build(
      stays({{"g1", "v1"}, {"g1", "h1"}, {"g2", "v2"}, {"g2", "h2"}}), ds);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.weight("v1", "h1"), 1);
  EXPECT_EQ(g.weight("v2", "h2"), 1);
  EXPECT_EQ(g.weight("v1", "h2"), 0);
}

TEST(StayGraph, Errors) {
  const Dataset ds = toy({vr("v1"), hotel("h1", 4)});
  EXPECT_THROW(StayGraph::build(stays({{"g1", "x9"}}), ds), Error);
  Dataset unrated = toy({vr("v1"), {"h1", PropertyKind::kHotel, std::nullopt, {0.0}}});
  EXPECT_THROW(StayGraph::build(stays({{"g1", "v1"}}), unrated), Error);
}

TEST(StarDistribution, AggregatesByStars) {
  const Dataset ds = toy({vr("v1"), hotel("h1", 4), hotel("h2", 3), vr("v2")});
  const StayGraph g = StayGraph::build(
      stays({{"g1", "v1"}, {"g1", "h1"}, {"g1", "h1"}, {"g1", "h1"},
             {"g2", "v1"}, {"g2", "h2"}}),
      ds);
  const auto d = star_distribution(g, "v1");
  ASSERT_TRUE(d);
  EXPECT_EQ(d->weights, (std::array<double, 5>{0, 0, 1, 3, 0}));
  EXPECT_FALSE(star_distribution(g, "v2"));
}

TEST(CollaborativeLabel, ModeTiesAndSupport) {
  EXPECT_EQ(collaborative_label({{0, 0, 1, 3, 0}}, 1), Rating(4));
  EXPECT_EQ(collaborative_label({{0, 2, 2, 0, 0}}, 1), Rating(2));
  EXPECT_FALSE(collaborative_label({{0, 0, 1, 0, 0}}, 3));
  EXPECT_EQ(collaborative_label({{0, 0, 0, 0, 7}}, 1), Rating(5));
}

TEST(CollaborativeLabel, ScaleInvariant) {
  const StarDistribution d{{1, 4, 2, 4, 0}};
  StarDistribution scaled = d;
  for (double& w : scaled.weights) w *= 13.5;
  EXPECT_EQ(collaborative_label(d, 1), collaborative_label(scaled, 1));
}

TEST(LabelDataset, EmptyStays) {
  const Dataset ds = toy({vr("v1"), hotel("h1", 4)});
  const LabelingResult r = label_dataset(ds, StayTable{}, 1);
  EXPECT_EQ(r.labeled.size(), 0u);
  EXPECT_EQ(r.coverage, 0.0);
}

TEST(LabelDataset, NoiselessSyntheticMatchesTruth) {
  SynthConfig cfg;
  cfg.n_properties = 4000;
  cfg.n_guests = 1000;
  cfg.guest_noise = 0.0;
  const SynthResult s = generate_synthetic(cfg);
  const LabelingResult r = label_dataset(s.dataset, s.stays, 1);
  ASSERT_GT(r.entries.size(), 100u);
  std::map<std::string, Rating> truth;
  for (std::size_t i = 0; i < s.dataset.size(); ++i) {
    truth.emplace(s.dataset.records[i].id, s.truth[i]);
  }
  for (const LabelEntry& e : r.entries) EXPECT_EQ(e.label, truth.at(e.id)) << e.id;
  EXPECT_EQ(r.labeled.labels->size(), r.entries.size());
}

TEST(LabelDataset, HotelOnlyGuestChangesNothing) {
  SynthConfig cfg;
  cfg.n_properties = 2000;
  cfg.n_guests = 400;
  const SynthResult s = generate_synthetic(cfg);
  const LabelingResult before = label_dataset(s.dataset, s.stays, 3);
  StayTable more = s.stays;
  for (const PropertyRecord& r : s.dataset.records) {
    if (r.kind == PropertyKind::kHotel) more.rows.emplace_back("extra", r.id);
  }
  const LabelingResult after = label_dataset(s.dataset, more, 3);
  ASSERT_EQ(before.entries.size(), after.entries.size());
  for (std::size_t i = 0; i < before.entries.size(); ++i) {
    EXPECT_EQ(before.entries[i].label, after.entries[i].label);
    EXPECT_EQ(before.entries[i].support, after.entries[i].support);
  }
}

TEST(LabelDataset, FormatLabels) {
  const std::vector<LabelEntry> e = {{"v1", Rating(4), 3.0}};
  EXPECT_EQ(format_labels(e), "{\"id\":\"v1\",\"label\":4,\"support\":3.0}\n");
}

TEST(HotelLabelsAsPredictions, LeaveOneOut) {
  const Dataset ds = toy({hotel("h1", 4), hotel("h2", 3), hotel("h3", 3), vr("v1")});
  // g1 visits h1 twice and h2 once; h1 only sees h2 via g1.
  const auto p = hotel_labels_as_predictions(
      ds, stays({{"g1", "h1"}, {"g1", "h1"}, {"g1", "h2"}, {"g2", "h2"}, {"g2", "h3"}}),
      1);
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p[0], Rating(3));
  // h2: g1 gives h1 weight 2 (4 stars); g2 gives h3 weight 1 (3 stars).
  EXPECT_EQ(p[1], Rating(4));
  EXPECT_EQ(p[2], Rating(3));
  EXPECT_FALSE(p[3]);
}

}  // namespace
}  // namespace vrstars
