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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dense_oracle.hpp"
#include "permqc/random.hpp"

using namespace permqc;
using namespace permqc::testing;

namespace {

constexpr AnsatzKind kAllKinds[] = {AnsatzKind::sn_invariant, AnsatzKind::cn_invariant, AnsatzKind::free_parameters,
                                    AnsatzKind::strongly_entangling};

std::vector<double> random_params(size_t count, Rng &rng, double scale = 2) {
    std::vector<double> p(count);
    for (auto &x : p) {
        x = uniform_real(rng, -scale, scale);
    }
    return p;
}

std::vector<GraphSample> random_batch(size_t n, size_t size, Rng &rng) {
    std::vector<GraphSample> batch;
    for (size_t k = 0; k < size; k++) {
        Graph g = erdos_renyi(n, uniform01(rng), rng);
        batch.push_back({g, is_connected(g) ? +1 : -1});
    }
    return batch;
}

double batch_loss(const CircuitIR &c, std::span<const double> params, std::span<const GraphSample> batch) {
    std::vector<double> preds;
    std::vector<int> labels;
    for (const auto &s : batch) {
        preds.push_back(predict(c, params, s.graph));
        labels.push_back(s.label);
    }
    return loss_mse(preds, labels);
}

RunRecord make_record(uint64_t seed, std::vector<double> val_acc) {
    RunRecord r;
    r.seed = seed;
    for (size_t e = 0; e < val_acc.size(); e++) {
        EpochStats s;
        s.epoch = e + 1;
        s.validation_accuracy = val_acc[e];
        r.epochs.push_back(s);
    }
    return r;
}

Dataset small_dataset(uint64_t seed) {
    Rng rng(seed);
    DatasetOptions opts;
    opts.train_per_epoch = 20;
    auto d = generate_balanced_dataset(GraphProperty::connected, 4, 60, rng, opts);
    return d;
}

TrainConfig small_config() {
    TrainConfig cfg;
    cfg.epochs = 3;
    cfg.train_per_epoch = 20;
    cfg.minibatch = 5;
    cfg.seeds = {0};
    return cfg;
}

}  // namespace

TEST(loss, examples) {
    std::vector<double> exact = {1, -1, 1};
    std::vector<int> labels = {1, -1, 1};
    EXPECT_EQ(loss_mse(exact, labels), 0.0);
    std::vector<double> zeros = {0, 0, 0};
    EXPECT_EQ(loss_mse(zeros, labels), 1.0);
    std::vector<double> half = {0.5};
    std::vector<int> plus = {1};
    EXPECT_EQ(loss_mse(half, plus), 0.25);
    EXPECT_THROW(loss_mse(half, labels), std::invalid_argument);
}

TEST(classify, examples) {
    EXPECT_EQ(classify(0.4, 0.01), Classification::positive);
    EXPECT_EQ(classify(0.0, 0.01), Classification::near_zero);
    EXPECT_EQ(classify(-0.005, 0.01), Classification::near_zero);
    EXPECT_EQ(classify(-0.5, 0.01), Classification::negative);
    EXPECT_TRUE(is_correct(Classification::positive, +1));
    EXPECT_FALSE(is_correct(Classification::positive, -1));
    EXPECT_FALSE(is_correct(Classification::near_zero, +1));
    EXPECT_FALSE(is_correct(Classification::near_zero, -1));
}

TEST(predict, zero_parameters_on_empty_graph) {
    for (auto kind : kAllKinds) {
        auto c = build_ansatz(kind, 6, 2);
        std::vector<double> zero(c.n_params, 0.0);
        EXPECT_NEAR(predict(c, zero, Graph(6)), 0.0, 1e-15) << to_string(kind);
    }
}

TEST(predict, deterministic) {
    Rng rng(1);
    auto c = build_sn(6);
    auto params = random_params(c.n_params, rng);
    Graph g = erdos_renyi(6, 0.4, rng);
    double a = predict(c, params, g);
    double b = predict(c, params, g);
    EXPECT_EQ(a, b);
    EXPECT_THROW(predict(c, params, Graph(5)), std::invalid_argument);
}

TEST(predict, sn_isomorphic_pairs_agree) {
    Rng rng(2);
    auto c = build_sn(8, 5);
    auto params = random_params(c.n_params, rng);
    for (int t = 0; t < 100; t++) {
        Graph g = erdos_renyi(8, uniform01(rng), rng);
        Graph h = g.relabeled(random_permutation(8, rng));
        EXPECT_NEAR(predict(c, params, g), predict(c, params, h), 1e-9);
    }
}

TEST(gradient, matches_central_differences) {
    Rng rng(3);
    const double h = 1e-5;
    for (auto kind : kAllKinds) {
        auto c = build_ansatz(kind, 6);
        for (int t = 0; t < 3; t++) {
            auto params = random_params(c.n_params, rng, 0.5);
            auto batch = random_batch(6, 3, rng);
            auto g = gradient(c, params, batch);
            ASSERT_EQ(g.size(), c.n_params);
            double max_fd = 0;
            double max_err = 0;
            for (size_t j = 0; j < c.n_params; j++) {
                auto plus = params;
                auto minus = params;
                plus[j] += h;
                minus[j] -= h;
                double fd = (batch_loss(c, plus, batch) - batch_loss(c, minus, batch)) / (2 * h);
                max_fd = std::max(max_fd, std::abs(fd));
                max_err = std::max(max_err, std::abs(fd - g[j]));
            }
            EXPECT_LT(max_err / max_fd, 1e-5) << to_string(kind);
        }
    }
}

TEST(gradient, vanishes_at_a_loss_minimum) {
    // RY(-1/2) on every qubit of the empty-graph state |+...+> gives |0...0>.
    CircuitIR c;
    c.n_qubits = 3;
    c.n_params = 1;
    for (size_t q = 0; q < 3; q++) {
        c.gates.push_back(GateInstr::ry(q, 0));
    }
    std::vector<double> params = {-0.5};
    ASSERT_NEAR(predict(c, params, Graph(3)), 1.0, 1e-15);
    std::vector<GraphSample> batch = {{Graph(3), +1}};
    auto g = gradient(c, params, batch);
    EXPECT_NEAR(g[0], 0.0, 1e-10);
}

TEST(gradient, sn_gradient_is_permutation_invariant) {
    Rng rng(4);
    auto c = build_sn(6, 8);
    for (int t = 0; t < 10; t++) {
        auto params = random_params(c.n_params, rng);
        auto batch = random_batch(6, 2, rng);
        auto relabeled = batch;
        for (auto &s : relabeled) {
            s.graph = s.graph.relabeled(random_permutation(6, rng));
        }
        auto a = gradient(c, params, batch);
        auto b = gradient(c, params, relabeled);
        for (size_t j = 0; j < a.size(); j++) {
            EXPECT_NEAR(a[j], b[j], 1e-10);
        }
    }
}

TEST(metric, single_rx_on_zero_state) {
    CircuitIR c;
    c.n_qubits = 1;
    c.n_params = 1;
    c.gates = {GateInstr::rx(0, 0)};
    for (double theta : {0.0, 0.37, -1.2}) {
        std::vector<double> params = {theta};
        auto m = fubini_study_metric(c, params, StateVector(1));
        ASSERT_EQ(m.size(), 1u);
        EXPECT_NEAR(m.entries(0, 0), std::numbers::pi * std::numbers::pi / 4, 1e-14);
    }
}

TEST(metric, shared_slot_equals_doubled_coefficient) {
    CircuitIR twice;
    twice.n_qubits = 1;
    twice.n_params = 1;
    twice.gates = {GateInstr::ry(0, 0), GateInstr::ry(0, 0)};
    CircuitIR doubled = twice;
    doubled.gates = {GateInstr::ry(0, 0, 2.0)};
    Rng rng(5);
    for (int t = 0; t < 10; t++) {
        std::vector<double> params = {uniform_real(rng, -2, 2)};
        std::vector<Amplitude> amps = {{uniform01(rng), uniform01(rng)}, {uniform01(rng), uniform01(rng)}};
        double norm = std::sqrt(std::norm(amps[0]) + std::norm(amps[1]));
        amps[0] /= norm;
        amps[1] /= norm;
        auto input = StateVector::from_amplitudes(amps);
        EXPECT_NEAR(fubini_study_metric(twice, params, input).entries(0, 0),
                    fubini_study_metric(doubled, params, input).entries(0, 0), 1e-13);
    }
}

TEST(metric, symmetric_and_psd) {
    Rng rng(6);
    for (auto kind : kAllKinds) {
        auto c = build_ansatz(kind, 6, 3);
        for (int t = 0; t < 10; t++) {
            auto params = random_params(c.n_params, rng);
            auto m = fubini_study_metric(c, params, prepare_graph_state(erdos_renyi(6, 0.5, rng)));
            EXPECT_LT(m.max_asymmetry(), 1e-12);
            EXPECT_GT(m.min_eigenvalue(), -1e-10);
        }
    }
}

TEST(metric, matches_finite_difference_overlaps) {
    // g_jk from finite-difference derivative states of the dense circuit.
    Rng rng(7);
    auto c = build_cn(3, 2);
    auto params = random_params(c.n_params, rng);
    auto input = prepare_graph_state(erdos_renyi(3, 0.5, rng));
    Vector in = to_vector(input);
    Vector psi = dense_circuit(c, params) * in;
    const double h = 1e-6;
    std::vector<Vector> d;
    for (size_t j = 0; j < c.n_params; j++) {
        auto plus = params;
        auto minus = params;
        plus[j] += h;
        minus[j] -= h;
        d.push_back((dense_circuit(c, plus) * in - dense_circuit(c, minus) * in) / (2 * h));
    }
    auto m = fubini_study_metric(c, params, input);
    for (size_t j = 0; j < c.n_params; j++) {
        for (size_t k = 0; k < c.n_params; k++) {
            double expected = (d[j].dot(d[k]) - d[j].dot(psi) * psi.dot(d[k])).real();
            EXPECT_NEAR(m.entries(j, k), expected, 1e-6);
        }
    }
}

TEST(metric, block_diagonal_mode_zeroes_cross_layer_entries) {
    Rng rng(8);
    auto c = build_sn(4, 3);
    auto params = random_params(c.n_params, rng);
    auto batch = random_batch(4, 3, rng);
    auto exact = minibatch_geometry(c, params, batch, MetricMode::exact);
    auto block = minibatch_geometry(c, params, batch, MetricMode::block_diagonal);
    EXPECT_EQ(exact.gradient, block.gradient);
    for (size_t j = 0; j < c.n_params; j++) {
        for (size_t k = 0; k < c.n_params; k++) {
            if (c.slot_layer[j] == c.slot_layer[k]) {
                EXPECT_EQ(block.metric.entries(j, k), exact.metric.entries(j, k));
            } else {
                EXPECT_EQ(block.metric.entries(j, k), 0.0);
            }
        }
    }
    EXPECT_NEAR(exact.loss, batch_loss(c, params, batch), 1e-14);
}

TEST(qng_step, examples) {
    TrainConfig cfg;
    cfg.learning_rate = 0.1;
    cfg.metric_regularizer = 0;
    std::vector<double> params = {1.0, -2.0};
    std::vector<double> grad = {0.5, 0.25};
    MetricTensor identity{Eigen::MatrixXd::Identity(2, 2)};
    auto next = qng_step(params, grad, identity, cfg);
    EXPECT_DOUBLE_EQ(next[0], 1.0 - 0.05);
    EXPECT_DOUBLE_EQ(next[1], -2.0 - 0.025);

    cfg.metric_regularizer = 1e-3;
    std::vector<double> zero = {0.0, 0.0};
    MetricTensor m{Eigen::MatrixXd{{2.0, 0.5}, {0.5, 1.0}}};
    EXPECT_EQ(qng_step(params, zero, m, cfg), params);

    // (G + lambda I) step = grad.
    auto step = qng_step(params, grad, m, cfg);
    Eigen::Vector2d delta((params[0] - step[0]) / cfg.learning_rate, (params[1] - step[1]) / cfg.learning_rate);
    Eigen::Matrix2d a = m.entries + cfg.metric_regularizer * Eigen::Matrix2d::Identity();
    Eigen::Vector2d residual = a * delta - Eigen::Vector2d(grad[0], grad[1]);
    EXPECT_LT(residual.norm(), 1e-14);

    cfg.metric_regularizer = 0;
    MetricTensor singular{Eigen::MatrixXd::Zero(2, 2)};
    EXPECT_THROW(qng_step(params, grad, singular, cfg), NumericalFailure);
}

TEST(qng_step, descent_sanity) {
    Rng rng(9);
    TrainConfig cfg;
    cfg.learning_rate = 0.01;
    cfg.metric_regularizer = 1e-3;
    int improved = 0;
    const int trials = 100;
    for (int t = 0; t < trials; t++) {
        auto kind = kAllKinds[t % 4];
        auto c = build_ansatz(kind, 6, 2);
        auto params = random_params(c.n_params, rng, 1.0);
        auto batch = random_batch(6, 10, rng);
        auto geom = minibatch_geometry(c, params, batch);
        auto next = qng_step(params, geom.gradient, geom.metric, cfg);
        improved += batch_loss(c, next, batch) < geom.loss;
    }
    EXPECT_GE(improved, 95);
}

TEST(train_config, validation) {
    TrainConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.minibatch = 7;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.learning_rate = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.metric_regularizer = -1;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    EXPECT_EQ(metric_mode_from_string("block_diagonal"), MetricMode::block_diagonal);
    EXPECT_THROW(metric_mode_from_string("diag"), std::invalid_argument);
}

TEST(train_run, shape_and_determinism) {
    auto d = small_dataset(1);
    auto cfg = small_config();
    for (auto kind : kAllKinds) {
        auto a = train_run(build_ansatz(kind, 4, 2), d, cfg, 7);
        auto b = train_run(build_ansatz(kind, 4, 2), d, cfg, 7);
        EXPECT_EQ(a, b);
        ASSERT_EQ(a.epochs.size(), cfg.epochs);
        EXPECT_EQ(a.ansatz, kind);
        for (size_t e = 0; e < a.epochs.size(); e++) {
            const auto &s = a.epochs[e];
            EXPECT_EQ(s.epoch, e + 1);
            for (double acc : {s.train_accuracy, s.validation_accuracy, s.near_zero_fraction}) {
                EXPECT_GE(acc, 0.0);
                EXPECT_LE(acc, 1.0);
            }
        }
    }
    auto other = train_run(build_sn(4, 2), d, cfg, 8);
    EXPECT_NE(other.final_params, train_run(build_sn(4, 2), d, cfg, 7).final_params);
}

TEST(train_run, rejects_mismatched_inputs) {
    auto d = small_dataset(2);
    auto cfg = small_config();
    EXPECT_THROW(train_run(build_sn(5, 1), d, cfg, 0), std::invalid_argument);
    cfg.train_per_epoch = 60;
    cfg.minibatch = 5;
    EXPECT_THROW(train_run(build_sn(4, 1), d, cfg, 0), std::invalid_argument);
}

TEST(train_run, sn_run_is_invariant_under_dataset_relabeling) {
    auto d = small_dataset(3);
    auto relabeled = d;
    std::vector<size_t> perm = {2, 0, 3, 1};
    for (auto &s : relabeled.samples) {
        s.graph = s.graph.relabeled(perm);
    }
    auto cfg = small_config();
    auto a = train_run(build_sn(4, 3), d, cfg, 11);
    auto b = train_run(build_sn(4, 3), relabeled, cfg, 11);
    ASSERT_EQ(a.epochs.size(), b.epochs.size());
    for (size_t e = 0; e < a.epochs.size(); e++) {
        EXPECT_EQ(a.epochs[e].train_accuracy, b.epochs[e].train_accuracy);
        EXPECT_EQ(a.epochs[e].validation_accuracy, b.epochs[e].validation_accuracy);
        EXPECT_EQ(a.epochs[e].near_zero_fraction, b.epochs[e].near_zero_fraction);
        EXPECT_NEAR(a.epochs[e].loss, b.epochs[e].loss, 1e-10);
    }
    for (size_t j = 0; j < a.final_params.size(); j++) {
        EXPECT_NEAR(a.final_params[j], b.final_params[j], 1e-9);
    }
}

TEST(aggregate, examples) {
    std::vector<RunRecord> two = {make_record(0, {0.5, 0.8}), make_record(1, {0.5, 0.9})};
    auto agg = aggregate_seeds(two);
    ASSERT_EQ(agg.size(), 2u);
    EXPECT_EQ(agg[0].epoch, 1u);
    EXPECT_EQ(agg[0].ci95, 0.0);
    EXPECT_NEAR(agg[1].mean, 0.85, 1e-15);
    double s = std::sqrt(0.005);
    EXPECT_NEAR(agg[1].ci95, 1.96 * s / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(agg[1].ci95, 0.098, 5e-4);

    std::vector<RunRecord> same = {make_record(0, {0.7}), make_record(1, {0.7}), make_record(2, {0.7})};
    EXPECT_EQ(aggregate_seeds(same)[0].ci95, 0.0);
    EXPECT_EQ(aggregate_seeds(same)[0].mean, 0.7);

    std::vector<RunRecord> three = {make_record(0, {0.1}), make_record(1, {0.35}), make_record(2, {0.93})};
    std::vector<RunRecord> reversed(three.rbegin(), three.rend());
    EXPECT_EQ(aggregate_seeds(three)[0].mean, aggregate_seeds(reversed)[0].mean);

    std::vector<RunRecord> one = {make_record(0, {0.5})};
    EXPECT_THROW(aggregate_seeds(one), std::invalid_argument);
    std::vector<RunRecord> ragged = {make_record(0, {0.5}), make_record(1, {0.5, 0.6})};
    EXPECT_THROW(aggregate_seeds(ragged), std::invalid_argument);
}
