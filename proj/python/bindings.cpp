/* Copyright 2026 The pwla authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <pwla/catalog.hpp>
#include <pwla/core.hpp>
#include <pwla/csv.hpp>
#include <pwla/linfit.hpp>
#include <pwla/lnn.hpp>
#include <pwla/model_io.hpp>
#include <pwla/oracle.hpp>
#include <pwla/refine.hpp>
#include <pwla/theorems.hpp>

namespace py = pybind11;
using namespace pwla;

PYBIND11_MODULE(_pwla, m) {
    m.doc() = "optimal piecewise linear approximation in one dimension";

    py::class_<Interval>(m, "Interval")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_readonly("lo", &Interval::lo)
        .def_readonly("hi", &Interval::hi)
        .def("length", &Interval::length)
        .def("contains", &Interval::contains)
        .def("__repr__", [](const Interval &iv) {
            return "Interval(" + std::to_string(iv.lo) + ", " +
                   std::to_string(iv.hi) + ")";
        });

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<std::vector<double>, std::vector<double>>(),
             py::arg("xs"), py::arg("ys"))
        .def_property_readonly(
            "xs", [](const Dataset &d) { return d.xs(); })
        .def_property_readonly(
            "ys", [](const Dataset &d) { return d.ys(); })
        .def_property_readonly("m", &Dataset::m)
        .def_property_readonly("spacing", &Dataset::spacing)
        .def_property_readonly("domain", &Dataset::domain)
        .def("__len__", &Dataset::m);

    py::class_<Segment>(m, "Segment")
        .def_readonly("a", &Segment::a)
        .def_readonly("b", &Segment::b)
        .def_readonly("lo", &Segment::lo)
        .def_readonly("hi", &Segment::hi)
        .def("__call__", &Segment::eval);

    py::class_<PwlModel>(m, "PwlModel")
        .def(py::init<std::vector<double>, std::vector<Segment>, bool>(),
             py::arg("breakpoints"), py::arg("segments"),
             py::arg("continuous"))
        .def_property_readonly(
            "breakpoints", [](const PwlModel &g) { return g.breakpoints(); })
        .def_property_readonly(
            "segments", [](const PwlModel &g) { return g.segments(); })
        .def_property_readonly("continuous", &PwlModel::continuous)
        .def_property_readonly("order", &PwlModel::order)
        .def_property_readonly("domain", &PwlModel::domain)
        .def("__call__",
             [](const PwlModel &g, double x) { return eval_pwl(g, x); });

    m.def("catalog_names", &catalog_names,
          "names of the built-in target functions");
    m.def(
        "grid",
        [](const std::string &fn, int m_) { return make_grid(catalog(fn), m_); },
        py::arg("fn"), py::arg("m") = 2000,
        "sample a built-in target on a uniform grid");
    m.def("load_csv", &load_csv, py::arg("path"));

    m.def("sse", py::overload_cast<const PwlModel &, const Dataset &>(&sse),
          py::arg("model"), py::arg("data"));
    m.def("mse", py::overload_cast<const PwlModel &, const Dataset &>(&mse),
          py::arg("model"), py::arg("data"));

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("model", &FitResult::model)
        .def_readonly("sse", &FitResult::sse);

    m.def(
        "fit_fixed",
        [](const Dataset &data, const std::vector<double> &interior) {
            return fit_cpwl_fixed(data, interior);
        },
        py::arg("data"), py::arg("breakpoints"),
        "least-squares continuous fit with the breakpoints held fixed");
    m.def("solve_dp", &solve_pwla_dp, py::arg("data"), py::arg("order"),
          "exact discontinuous fit by dynamic programming");
    m.def("solve_scan", &solve_cpwla_scan, py::arg("data"), py::arg("order"),
          "exact grid-restricted continuous fit (order 2 or 3)");
    m.def(
        "solve_de",
        [](const Dataset &data, int order, int population, int generations,
           double crossover, double weight, std::uint64_t seed) {
            DeConfig config{population, generations, crossover, weight, seed};
            return solve_cpwla_de(data, order, config);
        },
        py::arg("data"), py::arg("order"), py::arg("population") = 30,
        py::arg("generations") = 200, py::arg("crossover") = 0.7,
        py::arg("weight") = 0.8, py::arg("seed") = 0,
        "continuous fit by differential evolution");

    py::class_<LnnNeuron>(m, "LnnNeuron")
        .def_readonly("w1", &LnnNeuron::w1)
        .def_readonly("w2", &LnnNeuron::w2)
        .def_readonly("delta", &LnnNeuron::delta);

    py::class_<LnnParams>(m, "LnnParams")
        .def_readonly("neurons", &LnnParams::neurons)
        .def_readonly("bias", &LnnParams::bias)
        .def_readonly("domain", &LnnParams::domain);

    py::class_<TrainResult>(m, "TrainResult")
        .def_readonly("params", &TrainResult::params)
        .def_readonly("epoch_mse", &TrainResult::epoch_mse)
        .def_readonly("final_breakpoints", &TrainResult::final_breakpoints)
        .def_readonly("final_mse", &TrainResult::final_mse)
        .def_readonly("seconds", &TrainResult::seconds);

    m.def(
        "train",
        [](const Dataset &data, int n_units, const std::string &optimizer,
           double lr, int batch_size, int epochs, std::uint64_t seed,
           bool freeze_breakpoints) {
            TrainConfig config;
            if (optimizer == "sgd")
                config.optimizer = Optimizer::kSgd;
            else if (optimizer == "adam")
                config.optimizer = Optimizer::kAdam;
            else
                throw std::invalid_argument("optimizer must be sgd or adam");
            config.lr = lr;
            config.batch_size = batch_size;
            config.epochs = epochs;
            config.seed = seed;
            config.freeze_breakpoints = freeze_breakpoints;
            return train(data, n_units, config);
        },
        py::arg("data"), py::arg("n_units"), py::arg("optimizer") = "adam",
        py::arg("lr") = 3e-3, py::arg("batch_size") = 0,
        py::arg("epochs") = 300, py::arg("seed") = 0,
        py::arg("freeze_breakpoints") = false,
        "train the piecewise-linear network on a dataset");
    m.def("network_forward", &forward, py::arg("params"), py::arg("x"));
    m.def("to_pwl", &to_pwl, py::arg("params"),
          "convert a trained network to an explicit piecewise-linear model");

    m.def(
        "refine",
        [](const Dataset &data, int n_target, int n_over,
           const std::string &optimizer, double lr, int batch_size,
           int epochs, std::uint64_t seed) {
            TrainConfig config;
            config.optimizer =
                optimizer == "sgd" ? Optimizer::kSgd : Optimizer::kAdam;
            config.lr = lr;
            config.batch_size = batch_size;
            config.epochs = epochs;
            config.seed = seed;
            RefineResult r = refine_pipeline(data, n_target, n_over, config);
            return py::make_tuple(r.model, r.mse);
        },
        py::arg("data"), py::arg("n_target"), py::arg("n_over"),
        py::arg("optimizer") = "adam", py::arg("lr") = 3e-4,
        py::arg("batch_size") = 20, py::arg("epochs") = 300,
        py::arg("seed") = 0,
        "over-parameterize, train, prune, and refit to n_target segments");

    py::enum_<JunctionKind>(m, "JunctionKind")
        .value("CONTINUOUS", JunctionKind::kContinuous)
        .value("REFLECTED", JunctionKind::kReflected)
        .value("VIOLATED", JunctionKind::kViolated);

    py::class_<Tolerances>(m, "Tolerances")
        .def_readwrite("moment_a", &Tolerances::moment_a)
        .def_readwrite("moment_b", &Tolerances::moment_b)
        .def_readwrite("junction", &Tolerances::junction);
    m.def("default_tolerances", &default_tolerances, py::arg("data"));
    m.def("grid_scaled_tolerances", &grid_scaled_tolerances, py::arg("data"));

    py::class_<OptimalityReport>(m, "OptimalityReport")
        .def_readonly("condition", &OptimalityReport::condition)
        .def_readonly("per_segment_lsq_ok",
                      &OptimalityReport::per_segment_lsq_ok)
        .def_readonly("moment_a", &OptimalityReport::moment_a)
        .def_readonly("moment_b", &OptimalityReport::moment_b)
        .def_readonly("junction_mu", &OptimalityReport::junction_mu)
        .def_readonly("junction_kind", &OptimalityReport::junction_kind)
        .def_readonly("junction_residual",
                      &OptimalityReport::junction_residual)
        .def_readonly("max_moment", &OptimalityReport::max_moment)
        .def_readonly("max_junction_residual",
                      &OptimalityReport::max_junction_residual)
        .def("passed", &OptimalityReport::pass);

    m.def(
        "check_discontinuous_optimality",
        [](const PwlModel &model, const Dataset &data,
           std::optional<Tolerances> tol) {
            return check_theorem1(model, data,
                                  tol ? *tol : default_tolerances(data));
        },
        py::arg("model"), py::arg("data"), py::arg("tol") = std::nullopt);
    m.def(
        "check_continuous_optimality",
        [](const PwlModel &model, const Dataset &data,
           std::optional<Tolerances> tol) {
            return check_theorem2(model, data,
                                  tol ? *tol : default_tolerances(data));
        },
        py::arg("model"), py::arg("data"), py::arg("tol") = std::nullopt);

    m.def("save_model", &save_pwl, py::arg("model"), py::arg("path"));
    m.def("load_model", &load_model_as_pwl, py::arg("path"),
          "load a model file in either the pwl or the network format");
}
