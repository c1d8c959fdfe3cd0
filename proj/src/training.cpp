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

#include "permqc/training.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "permqc/random.hpp"

namespace permqc {

namespace {

void require(bool ok, const std::string &message) {
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

// Diagonal of the mean-magnetization observable.
std::vector<double> mean_z_diagonal(size_t n) {
    std::vector<double> diag(size_t{1} << n);
    for (size_t b = 0; b < diag.size(); b++) {
        diag[b] = (static_cast<double>(n) - 2.0 * std::popcount(b)) / static_cast<double>(n);
    }
    return diag;
}

// Fills the gradient of <O> and the metric contribution of one jet.
struct SampleGeometry {
    double prediction;
    std::vector<double> dprediction;
    Eigen::MatrixXd metric;
};

SampleGeometry sample_geometry(const CircuitJet &jet, const std::vector<double> &diag, bool want_metric) {
    const auto &psi = jet.state;
    size_t dim = psi.dim();
    size_t p = jet.derivatives.size();

    SampleGeometry out;
    out.prediction = 0;
    std::vector<Amplitude> weighted(dim);
    for (size_t b = 0; b < dim; b++) {
        out.prediction += std::norm(psi[b]) * diag[b];
        weighted[b] = diag[b] * psi[b];
    }
    out.dprediction.resize(p);
    for (size_t j = 0; j < p; j++) {
        const auto &d = jet.derivatives[j];
        Amplitude s = 0;
        for (size_t b = 0; b < dim; b++) {
            s += std::conj(d[b]) * weighted[b];
        }
        out.dprediction[j] = 2 * s.real();
    }
    if (want_metric) {
        Eigen::MatrixXcd derivs(dim, p);
        for (size_t j = 0; j < p; j++) {
            for (size_t b = 0; b < dim; b++) {
                derivs(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(j)) = jet.derivatives[j][b];
            }
        }
        Eigen::VectorXcd state(dim);
        for (size_t b = 0; b < dim; b++) {
            state(static_cast<Eigen::Index>(b)) = psi[b];
        }
        Eigen::MatrixXcd gram = derivs.adjoint() * derivs;
        Eigen::VectorXcd overlap = derivs.adjoint() * state;
        Eigen::MatrixXd m = (gram - overlap * overlap.adjoint()).real();
        out.metric = 0.5 * (m + m.transpose());
    }
    return out;
}

void apply_block_mask(Eigen::MatrixXd &m, const CircuitIR &circuit) {
    if (circuit.slot_layer.empty()) {
        return;
    }
    for (Eigen::Index j = 0; j < m.rows(); j++) {
        for (Eigen::Index k = 0; k < m.cols(); k++) {
            if (circuit.slot_layer[static_cast<size_t>(j)] != circuit.slot_layer[static_cast<size_t>(k)]) {
                m(j, k) = 0;
            }
        }
    }
}

}  // namespace

void TrainConfig::validate() const {
    require(learning_rate > 0, "learning_rate must be positive");
    require(metric_regularizer >= 0, "metric_regularizer must be non-negative");
    require(minibatch > 0, "minibatch must be positive");
    require(train_per_epoch > 0, "train_per_epoch must be positive");
    require(train_per_epoch % minibatch == 0, "minibatch must divide train_per_epoch");
    require(near_zero_epsilon >= 0, "near_zero_epsilon must be non-negative");
    require(init_scale >= 0, "init_scale must be non-negative");
    require(!seeds.empty(), "at least one seed is required");
}

std::string to_string(MetricMode mode) {
    return mode == MetricMode::exact ? "exact" : "block_diagonal";
}

MetricMode metric_mode_from_string(const std::string &name) {
    if (name == "exact") {
        return MetricMode::exact;
    }
    if (name == "block_diagonal") {
        return MetricMode::block_diagonal;
    }
    throw std::invalid_argument("unknown metric mode '" + name + "' (expected exact or block_diagonal)");
}

double MetricTensor::max_asymmetry() const {
    return (entries - entries.transpose()).cwiseAbs().maxCoeff();
}

double MetricTensor::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(entries, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double predict(const CircuitIR &circuit, std::span<const double> params, const Graph &g) {
    return expectation_mean_z(run_circuit(circuit, params, prepare_graph_state(g, circuit.n_qubits)));
}

double loss_mse(std::span<const double> predictions, std::span<const int> labels) {
    require(!predictions.empty(), "loss of an empty batch");
    require(predictions.size() == labels.size(), "prediction and label counts differ");
    double s = 0;
    for (size_t i = 0; i < predictions.size(); i++) {
        double r = predictions[i] - labels[i];
        s += r * r;
    }
    return s / static_cast<double>(predictions.size());
}

BatchGeometry minibatch_geometry(
    const CircuitIR &circuit, std::span<const double> params, std::span<const GraphSample> batch, MetricMode mode) {
    require(!batch.empty(), "geometry of an empty batch");
    auto diag = mean_z_diagonal(circuit.n_qubits);
    auto p = static_cast<Eigen::Index>(circuit.n_params);

    BatchGeometry out;
    out.gradient.assign(circuit.n_params, 0.0);
    out.metric.entries = Eigen::MatrixXd::Zero(p, p);
    auto scale = 1.0 / static_cast<double>(batch.size());
    for (const auto &sample : batch) {
        auto jet = evaluate_with_derivatives(circuit, params, prepare_graph_state(sample.graph, circuit.n_qubits));
        auto geom = sample_geometry(jet, diag, true);
        double residual = geom.prediction - sample.label;
        out.loss += residual * residual * scale;
        for (size_t j = 0; j < circuit.n_params; j++) {
            out.gradient[j] += 2 * residual * geom.dprediction[j] * scale;
        }
        out.metric.entries += geom.metric * scale;
    }
    if (mode == MetricMode::block_diagonal) {
        apply_block_mask(out.metric.entries, circuit);
    }
    return out;
}

std::vector<double> gradient(const CircuitIR &circuit, std::span<const double> params, std::span<const GraphSample> batch) {
    require(!batch.empty(), "gradient of an empty batch");
    auto diag = mean_z_diagonal(circuit.n_qubits);
    std::vector<double> grad(circuit.n_params, 0.0);
    auto scale = 1.0 / static_cast<double>(batch.size());
    for (const auto &sample : batch) {
        auto jet = evaluate_with_derivatives(circuit, params, prepare_graph_state(sample.graph, circuit.n_qubits));
        auto geom = sample_geometry(jet, diag, false);
        double residual = geom.prediction - sample.label;
        for (size_t j = 0; j < circuit.n_params; j++) {
            grad[j] += 2 * residual * geom.dprediction[j] * scale;
        }
    }
    return grad;
}

MetricTensor fubini_study_metric(const CircuitIR &circuit, std::span<const double> params, const StateVector &input) {
    auto jet = evaluate_with_derivatives(circuit, params, input);
    auto diag = mean_z_diagonal(circuit.n_qubits);
    return {sample_geometry(jet, diag, true).metric};
}

MetricTensor batch_metric(const CircuitIR &circuit, std::span<const double> params, std::span<const GraphSample> batch) {
    return minibatch_geometry(circuit, params, batch).metric;
}

std::vector<double> qng_step(
    std::span<const double> params, std::span<const double> grad, const MetricTensor &metric, const TrainConfig &config) {
    auto p = static_cast<Eigen::Index>(params.size());
    require(grad.size() == params.size(), "gradient and parameter sizes differ");
    require(metric.entries.rows() == p && metric.entries.cols() == p, "metric shape does not match parameters");

    Eigen::MatrixXd a = metric.entries;
    a.diagonal().array() += config.metric_regularizer;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success) {
        throw NumericalFailure("regularized metric is not positive definite");
    }
    Eigen::VectorXd g = Eigen::Map<const Eigen::VectorXd>(grad.data(), p);
    Eigen::VectorXd step = llt.solve(g);
    if (!step.allFinite()) {
        throw NumericalFailure("natural-gradient step is not finite");
    }
    std::vector<double> out(params.begin(), params.end());
    for (Eigen::Index j = 0; j < p; j++) {
        out[static_cast<size_t>(j)] -= config.learning_rate * step(j);
    }
    return out;
}

Classification classify(double prediction, double epsilon) {
    if (prediction > epsilon) {
        return Classification::positive;
    }
    if (prediction < -epsilon) {
        return Classification::negative;
    }
    return Classification::near_zero;
}

bool is_correct(Classification c, int label) {
    return (c == Classification::positive && label > 0) || (c == Classification::negative && label < 0);
}

RunRecord train_run(const CircuitIR &circuit, const Dataset &dataset, const TrainConfig &config, uint64_t seed) {
    config.validate();
    circuit.validate();
    require(dataset.num_nodes == circuit.n_qubits, "dataset graph size does not match the circuit width");
    require(dataset.samples.size() > config.train_per_epoch, "dataset leaves no validation samples");

    auto all = std::span(dataset.samples);
    auto train = all.first(config.train_per_epoch);
    auto validation = all.subspan(config.train_per_epoch);

    Rng rng(seed);
    std::vector<double> params(circuit.n_params);
    for (auto &x : params) {
        x = uniform_real(rng, -config.init_scale, config.init_scale);
    }

    RunRecord record;
    record.seed = seed;
    record.ansatz = circuit.kind;
    record.property = dataset.property;

    std::vector<size_t> order(train.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::vector<GraphSample> batch;
    batch.reserve(config.minibatch);
    for (size_t epoch = 1; epoch <= config.epochs; epoch++) {
        shuffle_in_place(std::span(order), rng);
        for (size_t start = 0; start < order.size(); start += config.minibatch) {
            batch.clear();
            for (size_t k = start; k < start + config.minibatch; k++) {
                batch.push_back(train[order[k]]);
            }
            auto geom = minibatch_geometry(circuit, params, batch, config.metric_mode);
            params = qng_step(params, geom.gradient, geom.metric, config);
        }

        EpochStats stats;
        stats.epoch = epoch;
        size_t correct = 0;
        for (const auto &s : train) {
            double pred = predict(circuit, params, s.graph);
            stats.loss += (pred - s.label) * (pred - s.label);
            correct += is_correct(classify(pred, config.near_zero_epsilon), s.label);
        }
        stats.loss /= static_cast<double>(train.size());
        stats.train_accuracy = static_cast<double>(correct) / static_cast<double>(train.size());

        correct = 0;
        size_t near_zero = 0;
        for (const auto &s : validation) {
            auto c = classify(predict(circuit, params, s.graph), config.near_zero_epsilon);
            correct += is_correct(c, s.label);
            near_zero += c == Classification::near_zero;
        }
        stats.validation_accuracy = static_cast<double>(correct) / static_cast<double>(validation.size());
        stats.near_zero_fraction = static_cast<double>(near_zero) / static_cast<double>(validation.size());
        record.epochs.push_back(stats);
    }
    record.final_params = std::move(params);
    return record;
}

RunRecord train_run(AnsatzKind kind, const Dataset &dataset, const TrainConfig &config, uint64_t seed) {
    return train_run(build_ansatz(kind, dataset.num_nodes), dataset, config, seed);
}

std::vector<EpochAggregate> aggregate_seeds(std::span<const RunRecord> records) {
    require(records.size() >= 2, "aggregation needs at least two runs");
    size_t epochs = records[0].epochs.size();
    for (const auto &r : records) {
        require(r.epochs.size() == epochs, "runs have different epoch counts");
    }
    auto k = static_cast<double>(records.size());
    std::vector<EpochAggregate> out;
    out.reserve(epochs);
    std::vector<double> values(records.size());
    for (size_t e = 0; e < epochs; e++) {
        for (size_t i = 0; i < records.size(); i++) {
            values[i] = records[i].epochs[e].validation_accuracy;
        }
        // Sorted, offset summation: independent of record order and exact for equal values.
        std::sort(values.begin(), values.end());
        double offset = 0;
        for (double v : values) {
            offset += v - values[0];
        }
        double mean = values[0] + offset / k;
        double ss = 0;
        for (double v : values) {
            double d = v - mean;
            ss += d * d;
        }
        double stddev = std::sqrt(ss / (k - 1));
        out.push_back({records[0].epochs[e].epoch, mean, 1.96 * stddev / std::sqrt(k)});
    }
    return out;
}

}  // namespace permqc
