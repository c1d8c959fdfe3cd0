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

#include "permqc/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "permqc/random.hpp"

namespace permqc {

Graph::Graph(size_t n) : n_(n) {
    if (n < 1 || n > kMaxNodes) {
        throw std::invalid_argument("graph node count must be in [1, 16], got " + std::to_string(n));
    }
}

Graph::Graph(size_t n, std::span<const std::pair<size_t, size_t>> edges) : Graph(n) {
    for (auto [i, j] : edges) {
        set_edge(i, j);
    }
}

Graph Graph::complete(size_t n) {
    Graph g(n);
    for (size_t k = 0; k < g.num_pairs(); k++) {
        g.bits_.set(k);
    }
    return g;
}

Graph Graph::path(size_t n) {
    Graph g(n);
    for (size_t v = 0; v + 1 < n; v++) {
        g.set_edge(v, v + 1);
    }
    return g;
}

Graph Graph::cycle(size_t n) {
    Graph g = path(n);
    if (n >= 3) {
        g.set_edge(n - 1, 0);
    }
    return g;
}

Graph Graph::star(size_t n) {
    Graph g(n);
    for (size_t v = 1; v < n; v++) {
        g.set_edge(0, v);
    }
    return g;
}

size_t Graph::pair_index(size_t i, size_t j) const {
    if (i == j || i >= n_ || j >= n_) {
        throw std::invalid_argument(
            "invalid node pair (" + std::to_string(i) + ", " + std::to_string(j) + ") for n=" + std::to_string(n_));
    }
    if (i > j) {
        std::swap(i, j);
    }
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

bool Graph::has_edge(size_t i, size_t j) const {
    return bits_.test(pair_index(i, j));
}

void Graph::set_edge(size_t i, size_t j, bool present) {
    bits_.set(pair_index(i, j), present);
}

std::vector<std::pair<size_t, size_t>> Graph::edges() const {
    std::vector<std::pair<size_t, size_t>> out;
    size_t k = 0;
    for (size_t i = 0; i < n_; i++) {
        for (size_t j = i + 1; j < n_; j++, k++) {
            if (bits_.test(k)) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

std::vector<uint32_t> Graph::adjacency() const {
    std::vector<uint32_t> adj(n_, 0);
    size_t k = 0;
    for (size_t i = 0; i < n_; i++) {
        for (size_t j = i + 1; j < n_; j++, k++) {
            if (bits_.test(k)) {
                adj[i] |= uint32_t{1} << j;
                adj[j] |= uint32_t{1} << i;
            }
        }
    }
    return adj;
}

std::vector<size_t> Graph::neighbors(size_t v) const {
    std::vector<size_t> out;
    for (size_t u = 0; u < n_; u++) {
        if (u != v && has_edge(u, v)) {
            out.push_back(u);
        }
    }
    return out;
}

Graph Graph::relabeled(std::span<const size_t> perm) const {
    if (perm.size() != n_) {
        throw std::invalid_argument("permutation size does not match node count");
    }
    Graph out(n_);
    for (auto [i, j] : edges()) {
        out.set_edge(perm[i], perm[j]);
    }
    return out;
}

uint64_t Graph::code() const {
    if (n_ > 11) {
        throw UnsupportedSize("edge code needs n <= 11");
    }
    return bits_.to_ullong();
}

Graph erdos_renyi(size_t n, double p, Rng &rng) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("edge probability must be in [0, 1], got " + std::to_string(p));
    }
    Graph g(n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            if (uniform01(rng) < p) {
                g.set_edge(i, j);
            }
        }
    }
    return g;
}

bool is_connected(const Graph &g) {
    auto adj = g.adjacency();
    uint32_t full = (uint32_t{1} << g.num_nodes()) - 1;
    uint32_t seen = 1;
    uint32_t frontier = 1;
    while (frontier) {
        uint32_t next = 0;
        for (uint32_t f = frontier; f; f &= f - 1) {
            next |= adj[std::countr_zero(f)];
        }
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == full;
}

bool is_bipartite(const Graph &g) {
    size_t n = g.num_nodes();
    auto adj = g.adjacency();
    std::vector<int> color(n, -1);
    std::vector<size_t> queue;
    for (size_t start = 0; start < n; start++) {
        if (color[start] != -1) {
            continue;
        }
        color[start] = 0;
        queue.assign(1, start);
        for (size_t head = 0; head < queue.size(); head++) {
            size_t v = queue[head];
            for (uint32_t m = adj[v]; m; m &= m - 1) {
                auto u = static_cast<size_t>(std::countr_zero(m));
                if (color[u] == -1) {
                    color[u] = 1 - color[v];
                    queue.push_back(u);
                } else if (color[u] == color[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool has_hamiltonian_cycle(const Graph &g) {
    size_t n = g.num_nodes();
    if (n < 3) {
        return false;
    }
    auto adj = g.adjacency();
    size_t full = (size_t{1} << n) - 1;
    // ends[mask]: nodes v such that some path starts at 0, covers exactly mask, and stops at v.
    std::vector<uint32_t> ends(full + 1, 0);
    ends[1] = 1;
    for (size_t mask = 1; mask <= full; mask += 2) {
        for (uint32_t e = ends[mask]; e; e &= e - 1) {
            auto v = std::countr_zero(e);
            for (uint32_t next = adj[v] & ~static_cast<uint32_t>(mask); next; next &= next - 1) {
                auto u = std::countr_zero(next);
                ends[mask | (size_t{1} << u)] |= uint32_t{1} << u;
            }
        }
    }
    return (ends[full] & adj[0]) != 0;
}

bool has_hamiltonian_path(const Graph &g) {
    size_t n = g.num_nodes();
    auto adj = g.adjacency();
    size_t full = (size_t{1} << n) - 1;
    std::vector<uint32_t> ends(full + 1, 0);
    for (size_t v = 0; v < n; v++) {
        ends[size_t{1} << v] = uint32_t{1} << v;
    }
    for (size_t mask = 1; mask <= full; mask++) {
        for (uint32_t e = ends[mask]; e; e &= e - 1) {
            auto v = std::countr_zero(e);
            for (uint32_t next = adj[v] & ~static_cast<uint32_t>(mask); next; next &= next - 1) {
                auto u = std::countr_zero(next);
                ends[mask | (size_t{1} << u)] |= uint32_t{1} << u;
            }
        }
    }
    return ends[full] != 0;
}

std::string to_string(GraphProperty property) {
    switch (property) {
        case GraphProperty::connected:
            return "connected";
        case GraphProperty::bipartite:
            return "bipartite";
        case GraphProperty::hamiltonian_cycle:
            return "hamiltonian_cycle";
        case GraphProperty::hamiltonian_path:
            return "hamiltonian_path";
    }
    return "?";
}

GraphProperty property_from_string(const std::string &name) {
    for (auto p : {GraphProperty::connected, GraphProperty::bipartite, GraphProperty::hamiltonian_cycle,
                   GraphProperty::hamiltonian_path}) {
        if (to_string(p) == name) {
            return p;
        }
    }
    throw std::invalid_argument(
        "unknown graph property '" + name + "' (expected connected, bipartite, hamiltonian_cycle or hamiltonian_path)");
}

bool evaluate(GraphProperty property, const Graph &g) {
    switch (property) {
        case GraphProperty::connected:
            return is_connected(g);
        case GraphProperty::bipartite:
            return is_bipartite(g);
        case GraphProperty::hamiltonian_cycle:
            return has_hamiltonian_cycle(g);
        case GraphProperty::hamiltonian_path:
            return has_hamiltonian_path(g);
    }
    return false;
}

std::span<const GraphSample> Dataset::train() const {
    return std::span(samples).first(std::min(train_per_epoch, samples.size()));
}

std::span<const GraphSample> Dataset::validation() const {
    return std::span(samples).subspan(std::min(train_per_epoch, samples.size()));
}

size_t Dataset::count_label(int label) const {
    return static_cast<size_t>(std::count_if(samples.begin(), samples.end(), [&](const GraphSample &s) {
        return s.label == label;
    }));
}

Dataset generate_balanced_dataset(
    GraphProperty property, size_t n, size_t total, Rng &rng, const DatasetOptions &options) {
    if (total % 2 != 0) {
        throw std::invalid_argument("dataset total must be even, got " + std::to_string(total));
    }
    Dataset out;
    out.property = property;
    out.num_nodes = n;
    out.train_per_epoch = options.train_per_epoch;
    out.samples.reserve(total);

    size_t want = total / 2;
    size_t positives = 0;
    size_t negatives = 0;
    size_t budget = options.attempts_per_sample * std::max<size_t>(total, 1);
    size_t attempts = 0;
    while (positives < want || negatives < want) {
        if (attempts++ >= budget) {
            throw GenerationFailure(
                "sampling stalled for property " + to_string(property) + " at n=" + std::to_string(n) + ": " +
                std::to_string(positives) + "/" + std::to_string(want) + " positive and " +
                std::to_string(negatives) + "/" + std::to_string(want) + " negative after " +
                std::to_string(budget) + " draws");
        }
        double p = uniform01(rng);
        Graph g = erdos_renyi(n, p, rng);
        bool label = evaluate(property, g);
        if (label && positives < want) {
            positives++;
            out.samples.push_back({std::move(g), +1});
        } else if (!label && negatives < want) {
            negatives++;
            out.samples.push_back({std::move(g), -1});
        }
    }
    shuffle_in_place(std::span(out.samples), rng);
    return out;
}

uint64_t canonical_code(const Graph &g) {
    size_t n = g.num_nodes();
    if (n > 11) {
        throw UnsupportedSize("canonical code needs n <= 11");
    }
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), size_t{0});
    uint64_t best = g.code();
    do {
        best = std::min(best, g.relabeled(perm).code());
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

uint64_t count_labeled_graphs(size_t n) {
    if (n > 11) {
        throw UnsupportedSize("labeled graph count overflows 64 bits for n > 11");
    }
    return uint64_t{1} << (n * (n - 1) / 2);
}

uint64_t count_unlabeled_graphs(size_t n) {
    if (n > 7) {
        throw UnsupportedSize(
            "unlabeled graph enumeration supports n <= 7, got " + std::to_string(n));
    }
    if (n <= 1) {
        return 1;
    }
    size_t pairs = n * (n - 1) / 2;

    // Every relabeling as a map from pair index to pair index.
    Graph scratch(n);
    std::vector<std::vector<uint8_t>> pair_maps;
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), size_t{0});
    do {
        std::vector<uint8_t> map(pairs);
        size_t k = 0;
        for (size_t i = 0; i < n; i++) {
            for (size_t j = i + 1; j < n; j++, k++) {
                map[k] = static_cast<uint8_t>(scratch.pair_index(perm[i], perm[j]));
            }
        }
        pair_maps.push_back(std::move(map));
    } while (std::next_permutation(perm.begin(), perm.end()));

    // A code is the class representative iff no relabeling produces a smaller one.
    uint64_t classes = 0;
    uint64_t limit = uint64_t{1} << pairs;
    for (uint64_t code = 0; code < limit; code++) {
        bool minimal = true;
        for (const auto &map : pair_maps) {
            uint64_t image = 0;
            for (uint64_t m = code; m; m &= m - 1) {
                image |= uint64_t{1} << map[std::countr_zero(m)];
            }
            if (image < code) {
                minimal = false;
                break;
            }
        }
        classes += minimal;
    }
    return classes;
}

std::vector<CurvePoint> connectedness_curve(
    size_t n, std::span<const double> p_grid, size_t samples_per_point, uint64_t seed) {
    for (double p : p_grid) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("grid probability outside [0, 1]: " + std::to_string(p));
        }
    }
    std::vector<size_t> hits(p_grid.size(), 0);
    for (size_t k = 0; k < samples_per_point; k++) {
        for (size_t i = 0; i < p_grid.size(); i++) {
            Rng rng = derived_rng(seed, k);
            hits[i] += is_connected(erdos_renyi(n, p_grid[i], rng));
        }
    }
    std::vector<CurvePoint> out;
    out.reserve(p_grid.size());
    for (size_t i = 0; i < p_grid.size(); i++) {
        double fraction = samples_per_point == 0 ? 0.0 : static_cast<double>(hits[i]) / samples_per_point;
        out.push_back({p_grid[i], fraction});
    }
    return out;
}

}  // namespace permqc
