// Copyright 2026 The permqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "permqc/ansatz.hpp"
#include "permqc/experiments.hpp"
#include "permqc/graph.hpp"
#include "permqc/pauli.hpp"
#include "permqc/statevector.hpp"
#include "permqc/training.hpp"

namespace py = pybind11;
using namespace permqc;

namespace {

SymmetryGroup group_from_name(const std::string &name, size_t n) {
    if (name == "symmetric") {
        return SymmetryGroup::symmetric(n);
    }
    if (name == "cyclic") {
        return SymmetryGroup::cyclic(n);
    }
    if (name == "trivial") {
        return SymmetryGroup::identity(n);
    }
    throw std::invalid_argument("unknown group '" + name + "' (expected symmetric, cyclic or trivial)");
}

std::vector<GraphSample> to_samples(const std::vector<std::pair<Graph, int>> &batch) {
    std::vector<GraphSample> out;
    out.reserve(batch.size());
    for (const auto &[g, label] : batch) {
        out.push_back({g, label});
    }
    return out;
}

py::dict epoch_to_dict(const EpochStats &e) {
    py::dict d;
    d["epoch"] = e.epoch;
    d["loss"] = e.loss;
    d["train_acc"] = e.train_accuracy;
    d["val_acc"] = e.validation_accuracy;
    d["near_zero_frac"] = e.near_zero_fraction;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Symmetry-restricted variational circuits for graph classification";

    py::register_exception<GenerationFailure>(m, "GenerationFailure", PyExc_RuntimeError);
    py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_ArithmeticError);
    py::register_exception<UnsupportedSize>(m, "UnsupportedSize", PyExc_ValueError);

    py::class_<PauliString>(m, "PauliString")
        .def(py::init(&PauliString::from_str), py::arg("text"))
        .def_property_readonly("num_qubits", &PauliString::num_qubits)
        .def_property_readonly("phase_power", &PauliString::phase_power)
        .def_property_readonly("weight", &PauliString::weight)
        .def("support", &PauliString::support)
        .def("__mul__", [](const PauliString &a, const PauliString &b) { return a * b; })
        .def("__eq__", [](const PauliString &a, const PauliString &b) { return a == b; })
        .def("__str__", &PauliString::str)
        .def("__repr__", [](const PauliString &p) { return "PauliString('" + p.str() + "')"; });

    m.def("commutes", &commutes, py::arg("a"), py::arg("b"));
    m.def(
        "is_mutually_commuting",
        [](const std::vector<PauliString> &set) { return is_mutually_commuting(set); }, py::arg("strings"));
    m.def(
        "orbit",
        [](const PauliString &generator, const std::string &group) {
            auto o = orbit(generator, group_from_name(group, generator.num_qubits()));
            return py::make_tuple(o.elements, o.multiplicity);
        },
        py::arg("generator"), py::arg("group"),
        "Distinct images of the generator under the named group, and the stabilizer size.");

    py::class_<Graph>(m, "Graph")
        .def(py::init<size_t>(), py::arg("n"))
        .def(py::init([](size_t n, const std::vector<std::pair<size_t, size_t>> &edges) { return Graph(n, edges); }),
             py::arg("n"), py::arg("edges"))
        .def_static("complete", &Graph::complete)
        .def_static("path", &Graph::path)
        .def_static("cycle", &Graph::cycle)
        .def_static("star", &Graph::star)
        .def_property_readonly("num_nodes", &Graph::num_nodes)
        .def_property_readonly("num_edges", &Graph::num_edges)
        .def("edges", &Graph::edges)
        .def("has_edge", &Graph::has_edge)
        .def("relabeled", [](const Graph &g, const std::vector<size_t> &perm) { return g.relabeled(perm); })
        .def("__eq__", [](const Graph &a, const Graph &b) { return a == b; });

    m.def(
        "erdos_renyi",
        [](size_t n, double p, uint64_t seed) {
            Rng rng(seed);
            return erdos_renyi(n, p, rng);
        },
        py::arg("n"), py::arg("p"), py::arg("seed"));
    m.def("is_connected", &is_connected);
    m.def("is_bipartite", &is_bipartite);
    m.def("has_hamiltonian_cycle", &has_hamiltonian_cycle);
    m.def("has_hamiltonian_path", &has_hamiltonian_path);
    m.def("count_labeled_graphs", &count_labeled_graphs, py::arg("n"));
    m.def("count_unlabeled_graphs", &count_unlabeled_graphs, py::arg("n"));
    m.def(
        "connectedness_curve",
        [](size_t n, const std::vector<double> &grid, size_t samples, uint64_t seed) {
            std::vector<std::pair<double, double>> out;
            for (const auto &pt : connectedness_curve(n, grid, samples, seed)) {
                out.emplace_back(pt.p, pt.connectedness);
            }
            return out;
        },
        py::arg("n"), py::arg("grid"), py::arg("samples"), py::arg("seed"));
    m.def(
        "generate_dataset",
        [](const std::string &property, size_t n, size_t total, uint64_t seed) {
            Rng rng(seed);
            auto d = generate_balanced_dataset(property_from_string(property), n, total, rng);
            std::vector<std::pair<Graph, int>> out;
            for (const auto &s : d.samples) {
                out.emplace_back(s.graph, s.label);
            }
            return out;
        },
        py::arg("property"), py::arg("n"), py::arg("total"), py::arg("seed"),
        "Balanced list of (graph, label) pairs with labels in {+1, -1}.");

    py::class_<StateVector>(m, "StateVector")
        .def_property_readonly("num_qubits", &StateVector::num_qubits)
        .def("amplitudes",
             [](const StateVector &s) { return std::vector<Amplitude>(s.amplitudes().begin(), s.amplitudes().end()); })
        .def("norm", &StateVector::norm);
    m.def("prepare_graph_state", py::overload_cast<const Graph &>(&prepare_graph_state), py::arg("graph"));
    m.def("expectation_mean_z", &expectation_mean_z, py::arg("state"));

    py::class_<CircuitIR>(m, "Circuit")
        .def_readonly("n_qubits", &CircuitIR::n_qubits)
        .def_readonly("n_params", &CircuitIR::n_params)
        .def_property_readonly("kind", [](const CircuitIR &c) { return to_string(c.kind); })
        .def_property_readonly("num_gates", [](const CircuitIR &c) { return c.gates.size(); })
        .def("dump", &CircuitIR::dump)
        .def(
            "run",
            [](const CircuitIR &c, const std::vector<double> &params, const StateVector &input) {
                return run_circuit(c, params, input);
            },
            py::arg("params"), py::arg("input"));

    m.def(
        "build_ansatz",
        [](const std::string &kind, size_t n, std::optional<size_t> layers) {
            return build_ansatz(ansatz_from_string(kind), n, layers);
        },
        py::arg("kind"), py::arg("n"), py::arg("layers") = py::none(),
        "kind is one of sn_invariant, cn_invariant, free_parameters, strongly_entangling.");

    m.def(
        "predict",
        [](const CircuitIR &c, const std::vector<double> &params, const Graph &g) { return predict(c, params, g); },
        py::arg("circuit"), py::arg("params"), py::arg("graph"));
    m.def(
        "loss_mse",
        [](const std::vector<double> &preds, const std::vector<int> &labels) { return loss_mse(preds, labels); },
        py::arg("predictions"), py::arg("labels"));
    m.def(
        "gradient",
        [](const CircuitIR &c, const std::vector<double> &params, const std::vector<std::pair<Graph, int>> &batch) {
            return gradient(c, params, to_samples(batch));
        },
        py::arg("circuit"), py::arg("params"), py::arg("batch"));
    m.def(
        "fubini_study_metric",
        [](const CircuitIR &c, const std::vector<double> &params, const Graph &g) {
            return fubini_study_metric(c, params, prepare_graph_state(g, c.n_qubits)).entries;
        },
        py::arg("circuit"), py::arg("params"), py::arg("graph"),
        "Metric tensor of the circuit output on the graph state, as a numpy array.");
    m.def(
        "qng_step",
        [](const std::vector<double> &params, const std::vector<double> &grad, const Eigen::MatrixXd &metric,
           double learning_rate, double regularizer) {
            TrainConfig cfg;
            cfg.learning_rate = learning_rate;
            cfg.metric_regularizer = regularizer;
            return qng_step(params, grad, MetricTensor{metric}, cfg);
        },
        py::arg("params"), py::arg("grad"), py::arg("metric"), py::arg("learning_rate") = 0.1,
        py::arg("regularizer") = 1e-3);
    m.def(
        "classify",
        [](double prediction, double epsilon) -> py::object {
            switch (classify(prediction, epsilon)) {
                case Classification::positive:
                    return py::int_(1);
                case Classification::negative:
                    return py::int_(-1);
                case Classification::near_zero:
                    break;
            }
            return py::none();
        },
        py::arg("prediction"), py::arg("epsilon") = 0.01, "+1, -1, or None when the output is near zero.");

    m.def(
        "train_run",
        [](const std::string &kind, const std::string &property, size_t n, size_t total, uint64_t dataset_seed,
           uint64_t seed, size_t epochs, size_t train_per_epoch, size_t minibatch, std::optional<size_t> layers,
           double learning_rate) {
            Rng rng(dataset_seed);
            DatasetOptions opts;
            opts.train_per_epoch = train_per_epoch;
            auto dataset = generate_balanced_dataset(property_from_string(property), n, total, rng, opts);
            TrainConfig cfg;
            cfg.epochs = epochs;
            cfg.train_per_epoch = train_per_epoch;
            cfg.minibatch = minibatch;
            cfg.learning_rate = learning_rate;
            RunRecord r;
            {
                py::gil_scoped_release release;
                r = train_run(build_ansatz(ansatz_from_string(kind), n, layers), dataset, cfg, seed);
            }
            py::list epochs_out;
            for (const auto &e : r.epochs) {
                epochs_out.append(epoch_to_dict(e));
            }
            return epochs_out;
        },
        py::arg("kind"), py::arg("property"), py::arg("n"), py::arg("total"), py::arg("dataset_seed"),
        py::arg("seed"), py::arg("epochs") = 50, py::arg("train_per_epoch") = 100, py::arg("minibatch") = 10,
        py::arg("layers") = py::none(), py::arg("learning_rate") = 0.1,
        "Generates a balanced dataset and trains one ansatz on it; returns per-epoch statistics.");

    m.def("count", [](size_t n) {
        auto r = cmd_count(n);
        return py::make_tuple(r.labeled, r.unlabeled);
    });
}
