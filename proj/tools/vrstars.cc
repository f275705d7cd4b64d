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

// Command line front end: synth, label, train, predict, explain, suggest,
// evaluate and serve.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <iostream>
#include <thread>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "vrstars/error.h"
#include "vrstars/io.h"
#include "vrstars/pipeline.h"
#include "vrstars/service.h"

namespace {

using namespace vrstars;

std::atomic<bool> g_reload{false};
std::atomic<bool> g_stop{false};

extern "C" void on_signal(int sig) {
  if (sig == SIGHUP) {
    g_reload = true;
  } else {
    g_stop = true;
  }
}

int serve(const fs::path& model, const std::string& host, int port) {
  if (const char* env = std::getenv("PORT")) {
    try {
      port = std::stoi(env);
    } catch (const std::exception&) {
      throw Error(std::string("PORT is not a number: ") + env);
    }
  }
  RatingService service(model);
  const int bound = service.bind(host, port);
  spdlog::info("serving {} on {}:{}", model.string(), host, bound);
  std::signal(SIGHUP, on_signal);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::thread watcher([&] {
    while (!g_stop) {
      if (g_reload.exchange(false)) {
        try {
          service.reload();
        } catch (const std::exception& e) {
          spdlog::error("reload failed, keeping the current model: {}",
                        e.what());
        }
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    service.stop();
  });
  service.listen();
  g_stop = true;
  watcher.join();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("vrstars");
  spdlog::set_default_logger(logger);

  CLI::App app{"Quality ratings for vacation rentals"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 1;
  int threads = 1;
  std::string log_level = "info";
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads (never affects output)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--log-level", log_level, "trace|debug|info|warn|error|off")
      ->check(CLI::IsMember(
          {"trace", "debug", "info", "warn", "error", "critical", "off"}))
      ->capture_default_str();

  // synth
  SynthConfig synth;
  fs::path synth_out = "data";
  auto* c_synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  c_synth->add_option("--out", synth_out, "Output directory")
      ->capture_default_str();
  c_synth->add_option("--n-properties", synth.n_properties)->capture_default_str();
  c_synth->add_option("--hotel-fraction", synth.hotel_fraction)
      ->capture_default_str();
  c_synth->add_option("--underreport-rate", synth.underreport_rate)
      ->capture_default_str();
  c_synth->add_option("--n-guests", synth.n_guests)->capture_default_str();
  c_synth->add_option("--stays-per-guest", synth.stays_per_guest)
      ->capture_default_str();
  c_synth->add_option("--guest-noise", synth.guest_noise)->capture_default_str();

  // label
  fs::path schema, properties, stays, out, labels, model_path, preds, truth;
  double min_support = kDefaultMinSupport;
  auto* c_label = app.add_subcommand("label", "Collaborative labeling of VRs");
  c_label->add_option("--schema", schema)->required();
  c_label->add_option("--properties", properties)->required();
  c_label->add_option("--stays", stays)->required();
  c_label->add_option("--out", out)->required();
  c_label->add_option("--min-support", min_support)->capture_default_str();

  // train
  TrainRun run;
  std::string base = "gbt";
  bool no_monotone = false;
  auto* c_train = app.add_subcommand("train", "Train an ordinal model");
  c_train->add_option("--schema", run.schema)->required();
  c_train->add_option("--properties", run.properties)->required();
  c_train->add_option("--labels", labels, "labels.jsonl (default: hotel stars)");
  c_train->add_option("--out", run.out)->required();
  c_train->add_option("--base", base)
      ->check(CLI::IsMember({"gbt", "logistic"}))
      ->capture_default_str();
  c_train->add_option("--rounds", run.train.gbt.n_rounds)->capture_default_str();
  c_train->add_option("--learning-rate", run.train.gbt.learning_rate)
      ->capture_default_str();
  c_train->add_option("--max-depth", run.train.gbt.max_depth)
      ->capture_default_str();
  c_train->add_option("--min-child-weight", run.train.gbt.min_child_weight)
      ->capture_default_str();
  c_train->add_option("--lambda", run.train.gbt.l2_lambda)->capture_default_str();
  c_train->add_option("--bins", run.train.gbt.n_bins)->capture_default_str();
  c_train->add_flag("--no-monotone", no_monotone,
                    "Ignore the schema's monotone constraints");
  c_train->add_flag("--tune", run.tune_thresholds,
                    "Tune thresholds on a held-out split");
  c_train->add_option("--validation-fraction", run.validation_fraction)
      ->capture_default_str();

  // predict / explain / suggest
  auto add_scoring = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("--model", model_path)->required();
    c->add_option("--properties", properties)->required();
    c->add_option("--schema", schema, "Checked against the model schema");
    c->add_option("--out", out)->required();
    return c;
  };
  auto* c_predict = add_scoring("predict", "Rate properties");
  auto* c_explain = add_scoring("explain", "Explain ratings");
  auto* c_suggest = add_scoring("suggest", "Suggest amenities");

  // evaluate
  auto* c_eval = app.add_subcommand("evaluate", "Score predictions");
  c_eval->add_option("--preds", preds)->required();
  c_eval->add_option("--truth", truth)->required();
  c_eval->add_option("--out", out, "report.json");

  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  auto* c_serve = app.add_subcommand("serve", "HTTP scoring service");
  c_serve->add_option("--model", model_path)->required();
  c_serve->add_option("--host", host)->capture_default_str();
  c_serve->add_option("--port", port, "Overridden by $PORT")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(spdlog::level::from_str(log_level));

  try {
    if (c_synth->parsed()) {
      synth.seed = seed;
      write_synthetic(generate_synthetic(synth), synth_out);
    } else if (c_label->parsed()) {
      run_label(schema, properties, stays, out, min_support);
    } else if (c_train->parsed()) {
      if (!labels.empty()) run.labels = labels;
      run.train.base = base == "gbt" ? BaseKind::kGbt : BaseKind::kLogistic;
      run.train.gbt.monotone_constraints = !no_monotone;
      run.train.threads = threads;
      run.seed = seed;
      run_train(run);
    } else if (c_predict->parsed() || c_explain->parsed() ||
               c_suggest->parsed()) {
      const OrdinalModel model =
          OrdinalModel::parse(read_text_file(model_path));
      std::optional<fs::path> check;
      if (!schema.empty()) check = schema;
      const Dataset ds = load_for_model(model, properties, check);
      std::string text;
      if (c_predict->parsed()) {
        text = format_predictions(model, ds, threads);
      } else if (c_explain->parsed()) {
        text = format_explanations(model, ds, threads);
      } else {
        text = format_suggestions(model, ds, threads);
      }
      write_text_file(out, text);
    } else if (c_eval->parsed()) {
      const EvalReport report = run_evaluate(preds, truth);
      std::cout << report.format_table();
      if (!out.empty()) write_text_file(out, report.to_json().dump(2) + "\n");
    } else if (c_serve->parsed()) {
      return serve(model_path, host, port);
    }
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
