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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "vrstars/error.h"
#include "vrstars/explain.h"
#include "vrstars/io.h"
#include "vrstars/metrics.h"
#include "vrstars/pipeline.h"
#include "vrstars/service.h"
#include "vrstars/suggest.h"

namespace py = pybind11;
using namespace vrstars;

namespace {

std::vector<Rating> to_ratings(const std::vector<int>& v) {
  std::vector<Rating> out;
  out.reserve(v.size());
  for (int r : v) out.emplace_back(r);
  return out;
}

std::vector<double> features_from_json(const OrdinalModel& m,
                                       const std::string& text) {
  return parse_feature_map(nlohmann::json::parse(text), m.schema());
}

}  // namespace

PYBIND11_MODULE(_vrstars, mod) {
  mod.doc() = "Ordinal quality ratings for vacation rentals (native core)";

  py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);

  mod.def(
      "synth",
      [](const fs::path& out, std::uint64_t seed, std::size_t n_properties,
         double hotel_fraction, double underreport_rate, std::size_t n_guests,
         std::size_t stays_per_guest, double guest_noise) {
        SynthConfig c;
        c.seed = seed;
        c.n_properties = n_properties;
        c.hotel_fraction = hotel_fraction;
        c.underreport_rate = underreport_rate;
        c.n_guests = n_guests;
        c.stays_per_guest = stays_per_guest;
        c.guest_noise = guest_noise;
        py::gil_scoped_release release;
        write_synthetic(generate_synthetic(c), out);
      },
      py::arg("out"), py::arg("seed") = 1, py::arg("n_properties") = 20000,
      py::arg("hotel_fraction") = 0.5, py::arg("underreport_rate") = 0.15,
      py::arg("n_guests") = 5000, py::arg("stays_per_guest") = 8,
      py::arg("guest_noise") = 0.1);

  mod.def(
      "label",
      [](const fs::path& schema, const fs::path& properties,
         const fs::path& stays, const fs::path& out, double min_support) {
        const LabelingResult r =
            run_label(schema, properties, stays, out, min_support);
        return py::make_tuple(r.entries.size(), r.coverage);
      },
      py::arg("schema"), py::arg("properties"), py::arg("stays"),
      py::arg("out"), py::arg("min_support") = kDefaultMinSupport);

  mod.def(
      "train",
      [](const fs::path& schema, const fs::path& properties,
         const fs::path& out, std::optional<fs::path> labels,
         const std::string& base, bool tune, std::uint64_t seed, int threads,
         int n_rounds, bool monotone) {
        TrainRun run;
        run.schema = schema;
        run.properties = properties;
        run.out = out;
        run.labels = std::move(labels);
        if (base != "gbt" && base != "logistic") {
          throw Error("base must be \"gbt\" or \"logistic\"");
        }
        run.train.base = base == "gbt" ? BaseKind::kGbt : BaseKind::kLogistic;
        run.train.gbt.n_rounds = n_rounds;
        run.train.gbt.monotone_constraints = monotone;
        run.train.threads = threads;
        run.tune_thresholds = tune;
        run.seed = seed;
        py::gil_scoped_release release;
        run_train(run);
      },
      py::arg("schema"), py::arg("properties"), py::arg("out"),
      py::arg("labels") = py::none(), py::arg("base") = "gbt",
      py::arg("tune") = false, py::arg("seed") = 1, py::arg("threads") = 1,
      py::arg("n_rounds") = 100, py::arg("monotone") = true);

  mod.def(
      "evaluate",
      [](const fs::path& preds, const fs::path& truth) {
        return run_evaluate(preds, truth).to_json().dump();
      },
      py::arg("preds"), py::arg("truth"));

  mod.def(
      "consistent_label",
      [](const ClassifierProbs& p, const Thresholds& t) {
        return consistent_label(p, t).value();
      },
      py::arg("probs"), py::arg("thresholds") = kDefaultThresholds);
  mod.def(
      "responsible_classifier",
      [](int c) { return responsible_classifier(Rating(c)).value(); },
      py::arg("rating"));
  mod.def("mamae", [](const std::vector<int>& p, const std::vector<int>& t) {
    return mamae(to_ratings(p), to_ratings(t));
  });
  mod.def("weighted_f1",
          [](const std::vector<int>& p, const std::vector<int>& t) {
            return weighted_f1(to_ratings(p), to_ratings(t));
          });
  mod.def("accuracy", [](const std::vector<int>& p, const std::vector<int>& t) {
    return accuracy(to_ratings(p), to_ratings(t));
  });

  py::class_<OrdinalModel>(mod, "Model")
      .def_static("load",
                  [](const fs::path& path) {
                    return OrdinalModel::parse(read_text_file(path));
                  })
      .def_static("parse",
                  [](const std::string& text) {
                    return OrdinalModel::parse(text);
                  })
      .def("serialize", &OrdinalModel::serialize)
      .def("schema_json",
           [](const OrdinalModel& m) {
             return schema_to_json(m.schema()).dump();
           })
      .def_property_readonly("thresholds", &OrdinalModel::thresholds)
      .def("probabilities_json",
           [](const OrdinalModel& m, const std::string& features) {
             return m.probabilities(features_from_json(m, features));
           })
      .def("rate_json",
           [](const OrdinalModel& m, const std::string& features) {
             return m.rate(features_from_json(m, features)).value();
           })
      .def("explain_json",
           [](const OrdinalModel& m, const std::string& features) {
             const auto x = features_from_json(m, features);
             return compute_explanation(m, x, m.rate(x)).to_json().dump();
           })
      .def("suggest_json",
           [](const OrdinalModel& m, const std::string& features) {
             const auto x = features_from_json(m, features);
             const Rating r = m.rate(x);
             auto j = suggestions_to_json("", r, compute_suggestions(m, x, r));
             j.erase("id");
             return j.dump();
           });

  py::class_<RatingService>(mod, "Service")
      .def(py::init<fs::path>(), py::arg("model_path"))
      .def("reload", &RatingService::reload)
      .def("handle", [](RatingService& s, const std::string& method,
                        const std::string& path, const std::string& body) {
        const HttpResponse r = s.handle(method, path, body);
        return py::make_tuple(r.status, r.body);
      });
}
