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

#include "vrstars/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "vrstars/error.h"
#include "vrstars/rng.h"

namespace vrstars {
namespace {

// Presence probability by distance from the class where the amenity becomes
// typical.
ClassProbs tier_lift(int tier) {
  ClassProbs p{};
  for (int c = 1; c <= kNumClasses; ++c) {
    const int d = c - tier;
    p[c - 1] = d <= -2 ? 0.05 : d == -1 ? 0.2 : d == 0 ? 0.6 : 0.85;
  }
  return p;
}

constexpr ClassProbs kBasicLift = {0.5, 0.65, 0.8, 0.9, 0.95};

// Median floor area per class; size is lognormal around it.
constexpr std::array<double, kNumClasses> kSizeMedian = {22, 30, 42, 60, 95};
// Hostels and villas both have many rooms.
constexpr std::array<double, kNumClasses> kRoomsMean = {5, 2, 2, 3, 5};

std::string format_id(char prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%c%06zu", prefix, i);
  return buf;
}

}  // namespace

std::vector<AmenitySpec> default_amenities() {
  std::vector<AmenitySpec> out;
  auto add = [&](const char* name, const ClassProbs& lift) {
    out.push_back({name, lift, true});
  };
  for (const char* n : {"wifi", "towels", "heating", "bed_linen",
                        "wardrobe_closet", "tv"}) {
    add(n, kBasicLift);
  }
  for (const char* n : {"private_bathroom", "hair_dryer", "balcony",
                        "electric_kettle", "garden"}) {
    add(n, tier_lift(2));
  }
  for (const char* n : {"dishwasher", "washing_machine", "coffee_machine",
                        "cable_channels", "air_conditioning", "barbecue"}) {
    add(n, tier_lift(3));
  }
  for (const char* n : {"children_crib", "flat_screen_tv", "bathrobe",
                        "terrace", "soundproofing", "private_parking"}) {
    add(n, tier_lift(4));
  }
  for (const char* n : {"swimming_pool", "daily_maid_service",
                        "safe_deposit_box", "spa_wellness_center",
                        "sea_view"}) {
    add(n, tier_lift(5));
  }
  out.push_back({"shared_bathroom", {0.7, 0.4, 0.15, 0.05, 0.02}, false});
  out.push_back({"street_parking", {0.5, 0.5, 0.45, 0.4, 0.35}, false});
  return out;
}

void SynthConfig::validate() const {
  if (n_properties == 0) throw Error("n_properties must be positive");
  if (!(hotel_fraction >= 0.0 && hotel_fraction <= 1.0)) {
    throw Error("hotel_fraction must lie in [0, 1]");
  }
  double total = 0.0;
  for (double p : class_prior) {
    if (!(p >= 0.0)) throw Error("class_prior entries must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error("class_prior must sum to 1");
  for (const AmenitySpec& a : amenities) {
    for (std::size_t c = 0; c < a.lift.size(); ++c) {
      if (!(a.lift[c] >= 0.0 && a.lift[c] <= 1.0)) {
        throw Error("amenity '" + a.name + "': lift outside [0, 1]");
      }
      if (a.monotone && c > 0 && a.lift[c] < a.lift[c - 1]) {
        throw Error("amenity '" + a.name +
                    "': monotone amenity lift must be nondecreasing in class");
      }
    }
  }
  if (!(underreport_rate >= 0.0 && underreport_rate <= 1.0)) {
    throw Error("underreport_rate must lie in [0, 1]");
  }
  if (!(guest_noise >= 0.0 && guest_noise <= 1.0)) {
    throw Error("guest_noise must lie in [0, 1]");
  }
}

FeatureSchema synthetic_schema(const SynthConfig& config) {
  std::vector<FeatureSpec> specs;
  for (const AmenitySpec& a : config.amenities) {
    specs.push_back({specs.size(), a.name, FeatureKind::kBinary,
                     a.monotone ? 1 : 0, a.monotone});
  }
  specs.push_back({specs.size(), "size_m2", FeatureKind::kNumeric, 1, false});
  specs.push_back({specs.size(), "rooms", FeatureKind::kNumeric, 0, false});
  return FeatureSchema(std::move(specs));
}

SynthResult generate_synthetic(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);
  SynthResult out;
  out.dataset.schema = synthetic_schema(config);
  const std::size_t n_amenities = config.amenities.size();
  const std::size_t n_features = out.dataset.schema.size();

  // pools[kind][class] -> record indices
  std::array<std::array<std::vector<std::size_t>, kNumClasses>, 2> pools;

  out.dataset.records.reserve(config.n_properties);
  out.truth.reserve(config.n_properties);
  for (std::size_t i = 0; i < config.n_properties; ++i) {
    const int z = static_cast<int>(rng.categorical(config.class_prior)) + 1;
    const bool hotel = rng.bernoulli(config.hotel_fraction);
    PropertyRecord r;
    r.id = format_id(hotel ? 'h' : 'v', i);
    r.kind = hotel ? PropertyKind::kHotel : PropertyKind::kVacationRental;
    if (hotel) r.official_stars = z;
    r.features.assign(n_features, 0.0);
    for (std::size_t j = 0; j < n_amenities; ++j) {
      const AmenitySpec& a = config.amenities[j];
      bool present = rng.bernoulli(a.lift[z - 1]);
      if (present && a.monotone && z >= 4 &&
          rng.bernoulli(config.underreport_rate)) {
        present = false;
      }
      r.features[j] = present ? 1.0 : 0.0;
    }
    const double size =
        kSizeMedian[z - 1] * std::exp(0.45 * rng.normal());
    r.features[n_amenities] = std::round(size * 10.0) / 10.0;
    const double rooms = std::round(kRoomsMean[z - 1] + rng.normal());
    r.features[n_amenities + 1] = std::max(1.0, rooms);

    pools[hotel ? 0 : 1][z - 1].push_back(i);
    out.dataset.records.push_back(std::move(r));
    out.truth.emplace_back(z);
  }

  for (std::size_t g = 0; g < config.n_guests; ++g) {
    const std::string guest = format_id('g', g);
    const std::size_t preference = rng.categorical(config.class_prior);
    for (std::size_t s = 0; s < config.stays_per_guest; ++s) {
      const std::size_t cls = rng.bernoulli(config.guest_noise)
                                  ? rng.below(kNumClasses)
                                  : preference;
      const std::size_t kind = rng.bernoulli(0.5) ? 0 : 1;
      const std::vector<std::size_t>* pool = &pools[kind][cls];
      if (pool->empty()) pool = &pools[1 - kind][cls];
      if (pool->empty()) continue;
      const std::size_t pick = (*pool)[rng.below(pool->size())];
      out.stays.rows.emplace_back(guest, out.dataset.records[pick].id);
    }
  }
  return out;
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& ds,
                                          double train_fraction,
                                          std::uint64_t seed) {
  if (!ds.labeled()) throw Error("split_dataset requires a labeled dataset");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error("train_fraction must lie strictly between 0 and 1");
  }
  const auto& labels = *ds.labels;
  std::array<std::vector<std::size_t>, kNumClasses> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    by_class[labels[i].index()].push_back(i);
  }

  // Largest-remainder apportionment of the train quota across classes.
  const auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(ds.size())));
  std::array<std::size_t, kNumClasses> quota{};
  std::array<double, kNumClasses> remainder{};
  std::size_t assigned = 0;
  for (int c = 0; c < kNumClasses; ++c) {
    const double share = train_fraction * static_cast<double>(by_class[c].size());
    quota[c] = static_cast<std::size_t>(std::floor(share));
    remainder[c] = share - static_cast<double>(quota[c]);
    assigned += quota[c];
  }
  std::array<int, kNumClasses> order{0, 1, 2, 3, 4};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return remainder[a] > remainder[b];
  });
  for (int c : order) {
    if (assigned >= n_train) break;
    if (quota[c] < by_class[c].size()) {
      ++quota[c];
      ++assigned;
    }
  }

  Rng rng(seed);
  std::vector<bool> in_train(ds.size(), false);
  for (int c = 0; c < kNumClasses; ++c) {
    std::vector<std::size_t> idx = by_class[c];
    rng.shuffle(std::span<std::size_t>(idx));
    for (std::size_t k = 0; k < quota[c]; ++k) in_train[idx[k]] = true;
  }

  Dataset train{ds.schema, {}, std::vector<Rating>{}};
  Dataset test{ds.schema, {}, std::vector<Rating>{}};
  for (std::size_t i = 0; i < ds.size(); ++i) {
    Dataset& dst = in_train[i] ? train : test;
    dst.records.push_back(ds.records[i]);
    dst.labels->push_back(labels[i]);
  }
  return {std::move(train), std::move(test)};
}

}  // namespace vrstars
