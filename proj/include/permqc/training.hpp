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

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "permqc/ansatz.hpp"
#include "permqc/graph.hpp"
#include "permqc/statevector.hpp"

namespace permqc {

/// Thrown when the regularized metric cannot be factorized.
class NumericalFailure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class MetricMode { exact, block_diagonal };

struct TrainConfig {
    double learning_rate = 0.1;
    /// Added to the metric diagonal before solving.
    double metric_regularizer = 1e-3;
    size_t epochs = 50;
    size_t train_per_epoch = 100;
    size_t minibatch = 10;
    /// Predictions within [-epsilon, epsilon] are classified as near zero.
    double near_zero_epsilon = 0.01;
    std::vector<uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    /// Initial parameters are drawn from Uniform(-init_scale, init_scale).
    double init_scale = 0.1;
    MetricMode metric_mode = MetricMode::exact;

    /// Throws std::invalid_argument on a violated invariant.
    void validate() const;
};

std::string to_string(MetricMode mode);
MetricMode metric_mode_from_string(const std::string &name);

/// Fubini-Study metric over the parameter slots.
struct MetricTensor {
    Eigen::MatrixXd entries;

    size_t size() const { return static_cast<size_t>(entries.rows()); }
    double max_asymmetry() const;
    double min_eigenvalue() const;
};

/// <(1/n) sum Z_i> after the circuit acting on the graph state of g.
double predict(const CircuitIR &circuit, std::span<const double> params, const Graph &g);

/// (1/B) sum (pred_i - y_i)^2. Throws std::invalid_argument on empty or mismatched input.
double loss_mse(std::span<const double> predictions, std::span<const int> labels);

/// Exact gradient of the batch MSE loss.
std::vector<double> gradient(const CircuitIR &circuit, std::span<const double> params, std::span<const GraphSample> batch);

/// g_jk = Re(<d_j psi|d_k psi> - <d_j psi|psi><psi|d_k psi>) for the circuit output on `input`.
MetricTensor fubini_study_metric(const CircuitIR &circuit, std::span<const double> params, const StateVector &input);

/// Mean metric over the graph states of a batch.
MetricTensor batch_metric(const CircuitIR &circuit, std::span<const double> params, std::span<const GraphSample> batch);

/// Loss, gradient and mean metric of a minibatch from one derivative pass per sample.
struct BatchGeometry {
    double loss = 0;
    std::vector<double> gradient;
    MetricTensor metric;
};
BatchGeometry minibatch_geometry(
    const CircuitIR &circuit, std::span<const double> params, std::span<const GraphSample> batch,
    MetricMode mode = MetricMode::exact);

/// params - learning_rate * (metric + regularizer*I)^{-1} grad.
/// Throws NumericalFailure if the regularized metric is not positive definite.
std::vector<double> qng_step(
    std::span<const double> params, std::span<const double> grad, const MetricTensor &metric, const TrainConfig &config);

enum class Classification { positive, negative, near_zero };

Classification classify(double prediction, double epsilon);
/// True iff the classification matches the +1/-1 label; near_zero never matches.
bool is_correct(Classification c, int label);

struct EpochStats {
    size_t epoch = 0;
    double loss = 0;
    double train_accuracy = 0;
    double validation_accuracy = 0;
    double near_zero_fraction = 0;

    bool operator==(const EpochStats &) const = default;
};

struct RunRecord {
    uint64_t seed = 0;
    AnsatzKind ansatz = AnsatzKind::custom;
    GraphProperty property = GraphProperty::connected;
    std::vector<EpochStats> epochs;
    std::vector<double> final_params;

    bool operator==(const RunRecord &) const = default;
};

/// Trains one circuit with QNG on the first config.train_per_epoch samples of the
/// dataset and evaluates every epoch on the remaining samples.
RunRecord train_run(const CircuitIR &circuit, const Dataset &dataset, const TrainConfig &config, uint64_t seed);

/// Same, with the default-depth ansatz of the given kind on dataset.num_nodes qubits.
RunRecord train_run(AnsatzKind kind, const Dataset &dataset, const TrainConfig &config, uint64_t seed);

struct EpochAggregate {
    size_t epoch = 0;
    double mean = 0;
    /// 1.96 * sample standard deviation / sqrt(#records)
    double ci95 = 0;
};

/// Per-epoch validation accuracy mean and normal-approximation 95% half-width.
/// Throws std::invalid_argument for fewer than two records or unequal epoch counts.
std::vector<EpochAggregate> aggregate_seeds(std::span<const RunRecord> records);

}  // namespace permqc
