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

#ifndef VRSTARS_SYNTH_H_
#define VRSTARS_SYNTH_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vrstars/dataset.h"

namespace vrstars {

using ClassProbs = std::array<double, kNumClasses>;

// Rating distribution of officially rated hotels as published (percentages
// rounded so that they add up to 99).
inline constexpr ClassProbs kHotelClassShares = {0.05, 0.18, 0.45, 0.24, 0.07};
// The same shares rescaled to sum to 1.
inline constexpr ClassProbs kHotelClassPrior = {
    0.05 / 0.99, 0.18 / 0.99, 0.45 / 0.99, 0.24 / 0.99, 0.07 / 0.99};

// One synthetic binary amenity: its per-class presence probability and
// whether it carries a +1 monotone constraint.
struct AmenitySpec {
  std::string name;
  ClassProbs lift{};
  bool monotone = true;
};

// The built-in 30-amenity catalog (28 monotone, 2 unconstrained).
std::vector<AmenitySpec> default_amenities();

struct SynthConfig {
  std::size_t n_properties = 20000;
  double hotel_fraction = 0.5;
  ClassProbs class_prior = kHotelClassPrior;
  std::vector<AmenitySpec> amenities = default_amenities();
  // Chance that a monotone amenity present on a class 4-5 property is left
  // out of its description.
  double underreport_rate = 0.15;
  std::size_t n_guests = 5000;
  std::size_t stays_per_guest = 8;
  double guest_noise = 0.1;
  std::uint64_t seed = 1;

  // Throws Error on an out-of-range field, a prior that does not sum to 1
  // (1e-9), or a monotone amenity whose lift decreases with class.
  void validate() const;
};

// Amenities in config order, then size_m2 (numeric, +1) and rooms (numeric,
// unconstrained).
FeatureSchema synthetic_schema(const SynthConfig& config);

struct SynthResult {
  Dataset dataset;  // hotels carry official stars, VRs none; unlabeled
  StayTable stays;
  std::vector<Rating> truth;  // latent class per record
};

// Fully determined by config.seed.
SynthResult generate_synthetic(const SynthConfig& config);

// Stratified by label, deterministic given seed. The train side receives
// round(train_fraction * n) records with every class within one record of
// its proportional share. Record order is preserved on both sides.
std::pair<Dataset, Dataset> split_dataset(const Dataset& ds,
                                          double train_fraction,
                                          std::uint64_t seed);

}  // namespace vrstars

#endif  // VRSTARS_SYNTH_H_
