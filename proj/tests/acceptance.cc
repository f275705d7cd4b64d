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

// Acceptance suite: prints one PASS/FAIL line per primary criterion and
// exits nonzero when any criterion fails.
//
//   vrstars_acceptance --cli <path to vrstars> [--seeds N]

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>

#include "vrstars/explain.h"
#include "vrstars/io.h"
#include "vrstars/metrics.h"
#include "vrstars/ordinal.h"
#include "vrstars/rng.h"
#include "vrstars/stay_graph.h"
#include "vrstars/suggest.h"
#include "vrstars/synth.h"

namespace {

using namespace vrstars;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

int g_failed = 0;

void report(bool pass, const std::string& name, const std::string& detail) {
  std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failed;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

// ---------------------------------------------------------------------------

BoostedClassifier random_ensemble(Rng& rng) {
  const std::size_t nf = 1 + rng.below(10);
  std::vector<FeatureSpec> specs;
  for (std::size_t f = 0; f < nf; ++f) {
    const bool binary = rng.bernoulli(0.5);
    specs.push_back({f, "f" + std::to_string(f),
                     binary ? FeatureKind::kBinary : FeatureKind::kNumeric, 0,
                     false});
  }
  const FeatureSchema schema(specs);
  std::vector<Tree> trees;
  const int n_trees = 1 + static_cast<int>(rng.below(5));
  for (int t = 0; t < n_trees; ++t) {
    std::vector<TreeNode> nodes;
    auto grow = [&](auto&& self, int depth, double cover) -> int {
      const int id = static_cast<int>(nodes.size());
      nodes.push_back({-1, 0.0, -1, -1, rng.normal(), cover});
      if (depth < 4 && cover >= 2 && rng.bernoulli(0.8)) {
        const double lc =
            1 + static_cast<double>(rng.below(static_cast<std::uint64_t>(cover) - 1));
        const int f = static_cast<int>(rng.below(nf));
        const double thr = schema[static_cast<std::size_t>(f)].kind == FeatureKind::kBinary
                               ? 0.5
                               : std::round(rng.normal() * 10) / 10;
        const int l = self(self, depth + 1, lc);
        const int r = self(self, depth + 1, cover - lc);
        nodes[static_cast<std::size_t>(id)] = {f, thr, l, r, 0.0, cover};
      }
      return id;
    };
    grow(grow, 0, static_cast<double>(16 + rng.below(500)));
    trees.emplace_back(nodes);
  }
  return BoostedClassifier(schema, rng.normal(), trees);
}

void shap_oracle() {
  const auto t0 = Clock::now();
  Rng rng(20240601);
  double worst = 0.0;
  for (int e = 0; e < 50; ++e) {
    const BoostedClassifier m = random_ensemble(rng);
    for (int i = 0; i < 20; ++i) {
      std::vector<double> x(m.schema().size());
      for (std::size_t j = 0; j < x.size(); ++j) {
        x[j] = m.schema()[j].kind == FeatureKind::kBinary
                   ? (rng.bernoulli(0.5) ? 1.0 : 0.0)
                   : std::round(rng.normal() * 10) / 10;
      }
      const ShapValues fast = tree_shap(m, x);
      const std::vector<double> slow = brute_force_shap(m, x);
      for (std::size_t j = 0; j < x.size(); ++j) {
        worst = std::max(worst, std::abs(fast.phi[j] - slow[j]));
      }
    }
  }
  const double secs = seconds_since(t0);
  report(worst <= 1e-9 && secs < 10.0, "shap_oracle",
         "50 ensembles x 20 inputs, max |dphi| = " + fmt("%.3g", worst) +
             " (tol 1e-9), " + fmt("%.2f", secs) + " s (limit 10 s)");
}

// ---------------------------------------------------------------------------

struct Fitted {
  SynthResult data;
  OrdinalModel model;
};

Fitted fit_default(std::uint64_t seed) {
  SynthConfig cfg;
  cfg.seed = seed;
  SynthResult r = generate_synthetic(cfg);
  const LabelingResult lr = label_dataset(r.dataset, r.stays, kDefaultMinSupport);
  OrdinalModel m = train_ordinal(lr.labeled, OrdinalTrainOptions{});
  return {std::move(r), std::move(m)};
}

std::vector<std::size_t> sample_rows(std::size_t n, std::size_t k,
                                     std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(idx));
  idx.resize(std::min(k, n));
  return idx;
}

void local_accuracy(const Fitted& f) {
  double worst = 0.0;
  const auto rows = sample_rows(f.data.dataset.size(), 1000, 77);
  for (std::size_t i : rows) {
    const auto& x = f.data.dataset.records[i].features;
    const Explanation e = compute_explanation(f.model, x, f.model.rate(x));
    double sum = e.base_value;
    for (double v : e.shap) sum += v;
    worst = std::max(worst,
                     std::abs(sum - f.model.classifier(e.responsible).margin(x)));
  }
  report(worst <= 1e-6, "local_accuracy",
         std::to_string(rows.size()) + " properties, max |base + sum(phi) - margin| = " +
             fmt("%.3g", worst) + " (tol 1e-6)");
}

void monotonicity_chain(const Fitted& f) {
  const FeatureSchema& s = f.model.schema();
  const auto rows = sample_rows(f.data.dataset.size(), 1000, 78);
  std::size_t flips = 0, margin_drops = 0, label_drops = 0, negative_w = 0;
  for (std::size_t i : rows) {
    const auto& x = f.data.dataset.records[i].features;
    const Rating y = f.model.rate(x);
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s[j].monotone != 1) continue;
      std::vector<double> lo = x, hi = x;
      if (s[j].kind == FeatureKind::kBinary) {
        lo[j] = 0.0;
        hi[j] = 1.0;
      } else {
        hi[j] = x[j] + 10.0;
      }
      ++flips;
      for (int k = 1; k <= 4; ++k) {
        const BinaryScorer& c = f.model.classifier(ClassifierIndex(k));
        if (c.margin(hi) < c.margin(lo)) ++margin_drops;
      }
      if (f.model.rate(hi) < f.model.rate(lo)) ++label_drops;
    }
    // Increments of every eligible flip, before the positivity filter.
    const BinaryScorer& target = f.model.classifier(suggestion_classifier(y));
    const double p0 = target.probability(x);
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (!s[j].suggestible || x[j] != 0.0) continue;
      if (target.probability(apply_suggestion(s, x, j)) - p0 < 0.0) ++negative_w;
    }
    for (const Suggestion& sg : compute_suggestions(f.model, x, y)) {
      if (sg.increment < 0.0) ++negative_w;
    }
  }
  report(margin_drops == 0 && label_drops == 0 && negative_w == 0,
         "monotonicity_chain",
         std::to_string(rows.size()) + " properties, " + std::to_string(flips) +
             " +1 flips: margin drops " + std::to_string(margin_drops) +
             ", label drops " + std::to_string(label_drops) +
             ", negative increments " + std::to_string(negative_w));
}

// ---------------------------------------------------------------------------

void prefix_label_equivalence() {
  Rng rng(4242);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    ClassifierProbs p;
    Thresholds t;
    for (int k = 0; k < 4; ++k) {
      // Coarse grid so that p == t ties occur.
      p[k] = static_cast<double>(rng.below(21)) / 20.0;
      t[k] = static_cast<double>(1 + rng.below(19)) / 20.0;
    }
    int prefix = 0;
    while (prefix < 4 && p[prefix] >= t[prefix]) ++prefix;
    if (consistent_label(p, t).value() != 1 + prefix) ++mismatches;
  }
  report(mismatches == 0, "prefix_label_equivalence",
         "10000 random probability/threshold vectors, mismatches " +
             std::to_string(mismatches));
}

void responsible_table() {
  const int expected[] = {1, 1, 2, 3, 4};
  std::string got;
  bool ok = true;
  for (int c = 1; c <= 5; ++c) {
    const int r = responsible_classifier(Rating(c)).value();
    ok = ok && r == expected[c - 1];
    got += (c > 1 ? "," : "") + std::to_string(r);
  }
  report(ok, "responsible_table", "r(1..5) = (" + got + "), expected (1,1,2,3,4)");
}

// ---------------------------------------------------------------------------

// Direct rerun of the co-stay definition: per guest, the hotel star counts
// are credited once to every distinct VR the guest visited.
std::map<std::string, std::array<double, 5>> brute_force_distributions(
    const Dataset& ds, const StayTable& stays) {
  std::map<std::string, const PropertyRecord*> by_id;
  for (const auto& r : ds.records) by_id[r.id] = &r;
  std::vector<std::pair<std::string, std::string>> rows = stays.rows;
  std::sort(rows.begin(), rows.end());
  std::map<std::string, std::array<double, 5>> dist;
  for (std::size_t b = 0; b < rows.size();) {
    std::size_t e = b;
    while (e < rows.size() && rows[e].first == rows[b].first) ++e;
    std::vector<std::string> vrs;
    std::array<double, 5> hotel_stars{};
    for (std::size_t i = b; i < e; ++i) {
      const PropertyRecord* r = by_id.at(rows[i].second);
      if (r->kind == PropertyKind::kHotel) {
        hotel_stars[static_cast<std::size_t>(*r->official_stars - 1)] += 1;
      } else if (std::find(vrs.begin(), vrs.end(), r->id) == vrs.end()) {
        vrs.push_back(r->id);
      }
    }
    for (const std::string& v : vrs) {
      auto& d = dist[v];
      for (int c = 0; c < 5; ++c) d[c] += hotel_stars[c];
    }
    b = e;
  }
  return dist;
}

struct Agreement {
  std::size_t labeled = 0;
  std::size_t agree = 0;
  double rate() const { return labeled ? static_cast<double>(agree) / labeled : 0; }
};

void colab_recovery() {
  // Noiseless guests, any support.
  {
    SynthConfig cfg;
    cfg.guest_noise = 0.0;
    const SynthResult r = generate_synthetic(cfg);
    const LabelingResult lr = label_dataset(r.dataset, r.stays, 1.0);
    std::map<std::string, Rating> truth;
    for (std::size_t i = 0; i < r.dataset.size(); ++i) {
      truth.emplace(r.dataset.records[i].id, r.truth[i]);
    }
    const StayGraph g = StayGraph::build(r.stays, r.dataset);
    std::size_t connected = 0;
    for (std::size_t i = 0; i < r.dataset.size(); ++i) {
      if (r.dataset.records[i].kind == PropertyKind::kVacationRental &&
          !g.edges(i).empty()) {
        ++connected;
      }
    }
    Agreement a;
    for (const LabelEntry& e : lr.entries) {
      ++a.labeled;
      a.agree += e.label == truth.at(e.id);
    }
    report(a.labeled == connected && a.agree == a.labeled,
           "colab_recovery_noiseless",
           "guest_noise 0, min_support 1: " + std::to_string(a.agree) + "/" +
               std::to_string(a.labeled) + " labels match truth, " +
               std::to_string(connected) + " connected VRs");
  }
  // Noisy guests: oracle consistency and mode baseline.
  {
    SynthConfig cfg;
    cfg.guest_noise = 0.2;
    const SynthResult r = generate_synthetic(cfg);
    const LabelingResult lr = label_dataset(r.dataset, r.stays, kDefaultMinSupport);
    const auto oracle = brute_force_distributions(r.dataset, r.stays);
    std::map<std::string, Rating> truth;
    std::vector<Rating> hotel_stars;
    for (std::size_t i = 0; i < r.dataset.size(); ++i) {
      truth.emplace(r.dataset.records[i].id, r.truth[i]);
      if (r.dataset.records[i].official_stars) {
        hotel_stars.emplace_back(*r.dataset.records[i].official_stars);
      }
    }
    const Rating mode = mode_classifier(hotel_stars);
    // Oracle labels: argmax with lower-class ties, same support rule.
    std::map<std::string, Rating> oracle_labels;
    for (const auto& [id, d] : oracle) {
      double total = 0;
      for (double w : d) total += w;
      if (total < kDefaultMinSupport) continue;
      int best = 0;
      for (int c = 1; c < 5; ++c) {
        if (d[c] > d[best]) best = c;
      }
      oracle_labels.emplace(id, Rating(best + 1));
    }
    Agreement colab, brute, base;
    std::size_t label_diffs = oracle_labels.size() == lr.entries.size() ? 0 : 1;
    for (const LabelEntry& e : lr.entries) {
      const Rating t = truth.at(e.id);
      ++colab.labeled;
      colab.agree += e.label == t;
      ++base.labeled;
      base.agree += mode == t;
      auto it = oracle_labels.find(e.id);
      if (it == oracle_labels.end() || it->second != e.label) ++label_diffs;
    }
    for (const auto& [id, label] : oracle_labels) {
      ++brute.labeled;
      brute.agree += label == truth.at(id);
    }
    const bool pass = label_diffs == 0 && colab.rate() >= brute.rate() &&
                      colab.rate() >= base.rate();
    report(pass, "colab_recovery_noisy",
           "guest_noise 0.2: agreement " + fmt("%.4f", colab.rate()) +
               ", brute-force rerun " + fmt("%.4f", brute.rate()) + " (" +
               std::to_string(label_diffs) + " label differences), mode baseline " +
               fmt("%.4f", base.rate()));
  }
}

// ---------------------------------------------------------------------------

struct SeedScores {
  double gbt = 0, logistic = 0, mode = 0;
};

SeedScores ordering_run(std::uint64_t seed, double underreport, bool logistic_too,
                        double* unconstrained) {
  SynthConfig cfg;
  cfg.seed = seed;
  cfg.underreport_rate = underreport;
  const SynthResult r = generate_synthetic(cfg);
  const LabelingResult lr = label_dataset(r.dataset, r.stays, kDefaultMinSupport);
  auto [train, val] = split_dataset(lr.labeled, 0.8, seed);
  const std::vector<Rating>& truth = *val.labels;
  auto score = [&](const OrdinalModel& m) {
    std::vector<Rating> preds;
    preds.reserve(val.size());
    for (const auto& rec : val.records) preds.push_back(m.rate(rec.features));
    return mamae(preds, truth);
  };
  SeedScores s;
  OrdinalTrainOptions opts;
  s.gbt = score(train_ordinal(train, opts));
  if (logistic_too) {
    OrdinalTrainOptions lo;
    lo.base = BaseKind::kLogistic;
    s.logistic = score(train_ordinal(train, lo));
    const std::vector<Rating> mode(val.size(), mode_classifier(*train.labels));
    s.mode = mamae(mode, truth);
  }
  if (unconstrained) {
    OrdinalTrainOptions free = opts;
    free.gbt.monotone_constraints = false;
    *unconstrained = score(train_ordinal(train, free));
  }
  return s;
}

void ordering(int n_seeds) {
  const auto t0 = Clock::now();
  SeedScores avg;
  double mono = 0, free = 0;
  std::string per_seed;
  for (int i = 0; i < n_seeds; ++i) {
    const std::uint64_t seed = 1 + static_cast<std::uint64_t>(i);
    const SeedScores s = ordering_run(seed, 0.15, true, nullptr);
    avg.gbt += s.gbt / n_seeds;
    avg.logistic += s.logistic / n_seeds;
    avg.mode += s.mode / n_seeds;
    double u = 0;
    const SeedScores h = ordering_run(seed, 0.3, false, &u);
    mono += h.gbt / n_seeds;
    free += u / n_seeds;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  seed %d: gbt %.4f logistic %.4f mode %.4f | "
                  "underreport 0.3: monotone %.4f unconstrained %.4f\n",
                  static_cast<int>(seed), s.gbt, s.logistic, s.mode, h.gbt, u);
    per_seed += buf;
  }
  const double secs = seconds_since(t0);
  std::printf("%s", per_seed.c_str());
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "mean MAMAE over %d seeds: gbt+monotone %.4f < logistic %.4f < mode "
                "%.4f (gaps %.4f, %.4f; need >= 0.02)",
                n_seeds, avg.gbt, avg.logistic, avg.mode, avg.logistic - avg.gbt,
                avg.mode - avg.logistic);
  report(avg.logistic - avg.gbt >= 0.02 && avg.mode - avg.logistic >= 0.02,
         "ordering", buf);
  std::snprintf(buf, sizeof(buf),
                "underreport 0.3, mean MAMAE monotone %.4f <= unconstrained %.4f",
                mono, free);
  report(mono <= free, "ordering_monotone_vs_unconstrained", buf);
  report(secs < 300.0, "ordering_runtime",
         fmt("%.1f", secs) + " s for all train+eval runs (limit 300 s)");
}

// ---------------------------------------------------------------------------

int sh(const std::string& cmd) { return std::system(cmd.c_str()); }

void determinism(const std::string& cli) {
  const fs::path dir = fs::temp_directory_path() /
                       ("vrstars_accept_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  const std::string q = " --log-level warn ";
  auto p = [&](const std::string& n) { return (dir / n).string(); };
  bool ok = true;
  std::string detail;
  for (const char* threads : {"1", "4"}) {
    const std::string t = std::string(threads);
    const std::string out = p("run" + t);
    const std::string base = cli + q + "--seed 11 --threads " + t + " ";
    ok = ok && sh(base + "synth --n-properties 6000 --n-guests 1500 --out " + out) == 0;
    ok = ok && sh(base + "label --schema " + out + "/schema.json --properties " + out +
                  "/properties.jsonl --stays " + out + "/stays.csv --out " + out +
                  "/labels.jsonl") == 0;
    ok = ok && sh(base + "train --tune --schema " + out + "/schema.json --properties " +
                  out + "/properties.jsonl --labels " + out + "/labels.jsonl --out " +
                  out + "/model.json") == 0;
    for (const char* cmd : {"predict", "explain", "suggest"}) {
      ok = ok && sh(base + cmd + " --model " + out + "/model.json --properties " + out +
                    "/properties.jsonl --out " + out + "/" + cmd + ".jsonl") == 0;
    }
  }
  std::size_t compared = 0, differing = 0;
  if (ok) {
    for (const char* f : {"schema.json", "properties.jsonl", "stays.csv",
                          "ground_truth.jsonl", "labels.jsonl", "model.json",
                          "predict.jsonl", "explain.jsonl", "suggest.jsonl"}) {
      ++compared;
      if (read_text_file(dir / "run1" / f) != read_text_file(dir / "run4" / f)) {
        ++differing;
        detail += std::string(" ") + f;
      }
    }
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  report(ok && compared == 9 && differing == 0, "determinism",
         ok ? "--threads 1 vs 4, " + std::to_string(compared) + " files compared, " +
                  std::to_string(differing) + " differ" + detail
            : "a CLI invocation failed");
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  int seeds = 5;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc) {
      cli = argv[++i];
    } else if (a == "--seeds" && i + 1 < argc) {
      seeds = std::max(1, std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s --cli <vrstars> [--seeds N]\n", argv[0]);
      return 2;
    }
  }
  spdlog::set_level(spdlog::level::err);

  shap_oracle();
  const Fitted fitted = fit_default(1);
  local_accuracy(fitted);
  monotonicity_chain(fitted);
  prefix_label_equivalence();
  responsible_table();
  colab_recovery();
  ordering(seeds);
  if (cli.empty()) {
    report(false, "determinism", "no --cli given");
  } else {
    determinism(cli);
  }
  std::printf("%d criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
