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

#include <bitset>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace permqc {

using Rng = std::mt19937_64;

/// Thrown when rejection sampling cannot fill a class within its attempt budget.
class GenerationFailure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an enumeration is requested at a size it cannot handle.
class UnsupportedSize : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Simple undirected labeled graph on 1..16 nodes.
///
/// Edges live in a bitset over the unordered pairs (i, j), i < j, in row-major
/// order: (0,1), (0,2), ..., (0,n-1), (1,2), ...
class Graph {
   public:
    static constexpr size_t kMaxNodes = 16;
    static constexpr size_t kMaxEdges = kMaxNodes * (kMaxNodes - 1) / 2;
    using EdgeBits = std::bitset<kMaxEdges>;

    explicit Graph(size_t n);
    Graph(size_t n, std::span<const std::pair<size_t, size_t>> edges);

    static Graph complete(size_t n);
    static Graph path(size_t n);
    static Graph cycle(size_t n);
    static Graph star(size_t n);

    size_t num_nodes() const { return n_; }
    size_t num_pairs() const { return n_ * (n_ - 1) / 2; }
    size_t num_edges() const { return bits_.count(); }

    /// Position of pair (i, j) in the row-major edge order. Order of i, j is irrelevant.
    size_t pair_index(size_t i, size_t j) const;

    bool has_edge(size_t i, size_t j) const;
    void set_edge(size_t i, size_t j, bool present = true);

    const EdgeBits &edge_bits() const { return bits_; }

    /// Edge list in row-major order.
    std::vector<std::pair<size_t, size_t>> edges() const;
    /// Neighbour bitmask per node.
    std::vector<uint32_t> adjacency() const;
    std::vector<size_t> neighbors(size_t v) const;

    /// Image under the node relabeling v -> perm[v].
    Graph relabeled(std::span<const size_t> perm) const;

    /// Edge bits packed into an integer (bit k = pair k). Requires n <= 11.
    uint64_t code() const;

    bool operator==(const Graph &other) const = default;

   private:
    size_t n_;
    EdgeBits bits_;
};

/// G(n, p): each pair is present independently with probability p.
///
/// One uniform draw per pair in row-major order decides the edge (u < p), so
/// two calls with the same generator state and p1 <= p2 give nested edge sets.
Graph erdos_renyi(size_t n, double p, Rng &rng);

bool is_connected(const Graph &g);
bool is_bipartite(const Graph &g);
/// Held-Karp style bitmask DP anchored at node 0. False for n < 3.
bool has_hamiltonian_cycle(const Graph &g);
/// Bitmask DP over all start nodes. True for n = 1.
bool has_hamiltonian_path(const Graph &g);

enum class GraphProperty { connected, bipartite, hamiltonian_cycle, hamiltonian_path };

std::string to_string(GraphProperty property);
/// Accepts the names produced by to_string. Throws std::invalid_argument otherwise.
GraphProperty property_from_string(const std::string &name);
bool evaluate(GraphProperty property, const Graph &g);

struct GraphSample {
    Graph graph;
    /// +1 when the property holds, -1 otherwise.
    int label;
};

struct Dataset {
    GraphProperty property = GraphProperty::connected;
    size_t num_nodes = 0;
    std::vector<GraphSample> samples;
    size_t train_per_epoch = 100;

    std::span<const GraphSample> train() const;
    std::span<const GraphSample> validation() const;
    size_t count_label(int label) const;
};

struct DatasetOptions {
    size_t train_per_epoch = 100;
    /// Maximum draws per requested sample before giving up.
    size_t attempts_per_sample = 10000;
};

/// Balanced dataset by rejection sampling: p ~ Uniform(0, 1) per draw, then
/// G(n, p), kept while its class is still short. Output order is shuffled.
/// Throws std::invalid_argument for odd totals, GenerationFailure on stalls.
Dataset generate_balanced_dataset(
    GraphProperty property, size_t n, size_t total, Rng &rng, const DatasetOptions &options = {});

/// Smallest code() over all n! relabelings.
uint64_t canonical_code(const Graph &g);

/// 2^(n(n-1)/2). Throws UnsupportedSize for n > 11.
uint64_t count_labeled_graphs(size_t n);

/// Number of isomorphism classes of graphs on n nodes, by canonical-form
/// enumeration. Throws UnsupportedSize for n > 7.
uint64_t count_unlabeled_graphs(size_t n);

struct CurvePoint {
    double p;
    double connectedness;
};

/// Monte-Carlo estimate of P(connected) for G(n, p) at each grid point.
///
/// Sample k uses the same random stream at every grid point, so the curve is
/// nondecreasing in p for any seed.
std::vector<CurvePoint> connectedness_curve(
    size_t n, std::span<const double> p_grid, size_t samples_per_point, uint64_t seed);

}  // namespace permqc
