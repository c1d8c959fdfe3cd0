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

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "permqc/experiments.hpp"

using namespace permqc;

namespace {

ExperimentConfig load_config(const std::string &config_file, const std::vector<std::string> &overrides) {
    ExperimentConfig config;
    if (!config_file.empty()) {
        config.apply_text(read_text_file(config_file));
    }
    for (const auto &kv : overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
        }
        config.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return config;
}

std::vector<double> parse_grid(const std::string &text) {
    std::vector<double> grid;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (!cur.empty()) {
                grid.push_back(parse_double(cur));
            }
            cur.clear();
        } else {
            cur += c;
        }
    }
    return grid;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Symmetry-restricted quantum circuit experiments on random graphs"};
    app.require_subcommand(1);

    std::string property = "connected";
    size_t n = 8;
    size_t total = 3000;
    uint64_t seed = 42;
    std::string out_path;
    auto *gen = app.add_subcommand("gen", "Generate a balanced labeled graph dataset");
    gen->add_option("--property", property, "connected, bipartite, hamiltonian_cycle or hamiltonian_path");
    gen->add_option("--n", n, "Nodes per graph")->check(CLI::Range(2, 16));
    gen->add_option("--total", total, "Number of graphs (even)");
    gen->add_option("--seed", seed, "Random seed");
    gen->add_option("--out", out_path, "Output CSV (default: <output dir>/dataset-<property>-<n>.csv)");

    std::string config_file;
    std::vector<std::string> overrides;
    std::string dataset_path;
    std::string train_out;
    auto *train = app.add_subcommand("train", "Train ansatzes over seeds and write raw and aggregate CSVs");
    train->add_option("--config", config_file, "key=value configuration file");
    train->add_option("--set", overrides, "Override one key, e.g. --set epochs=20");
    train->add_option("--dataset", dataset_path, "Dataset CSV (overrides the config)");
    train->add_option("--out", train_out, "Output directory (overrides the config)");

    size_t curve_n = 8;
    size_t points = 101;
    std::string grid_text;
    size_t samples = 1000;
    uint64_t curve_seed = 1;
    std::string curve_out;
    auto *curve = app.add_subcommand("curve", "Monte-Carlo connectedness probability of G(n, p)");
    curve->add_option("--n", curve_n, "Nodes per graph")->check(CLI::Range(1, 16));
    curve->add_option("--points", points, "Evenly spaced grid points over [0, 1]");
    curve->add_option("--grid", grid_text, "Explicit comma-separated grid (overrides --points)");
    curve->add_option("--samples", samples, "Graphs per grid point");
    curve->add_option("--seed", curve_seed, "Random seed");
    curve->add_option("--out", curve_out, "Output CSV (default: <output dir>/curve-<n>.csv)");

    size_t count_n = 8;
    auto *count = app.add_subcommand("count", "Labeled and unlabeled graph counts");
    count->add_option("--n", count_n, "Nodes")->required();

    auto *show = app.add_subcommand("show-config", "Print the effective training configuration");
    show->add_option("--config", config_file, "key=value configuration file");
    show->add_option("--set", overrides, "Override one key");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (*gen) {
            auto prop = property_from_string(property);
            std::filesystem::path path = out_path.empty()
                ? default_output_dir(".") / ("dataset-" + property + "-" + std::to_string(n) + ".csv")
                : std::filesystem::path(out_path);
            auto d = cmd_gen(prop, n, total, seed, path);
            std::cout << "wrote " << path.string() << " (" << d.count_label(+1) << " positive, " << d.count_label(-1)
                      << " negative)\n";
        } else if (*train) {
            auto config = load_config(config_file, overrides);
            if (!dataset_path.empty()) {
                config.dataset = dataset_path;
            }
            if (!train_out.empty()) {
                config.output_dir = train_out;
            }
            auto result = cmd_train(config);
            std::cout << "wrote " << result.raw_csv.string();
            if (!result.aggregate_csv.empty()) {
                std::cout << " and " << result.aggregate_csv.string();
            }
            std::cout << " (" << result.records.size() << " runs)\n";
        } else if (*curve) {
            auto grid = grid_text.empty() ? uniform_grid(points) : parse_grid(grid_text);
            std::filesystem::path path = curve_out.empty()
                ? default_output_dir(".") / ("curve-" + std::to_string(curve_n) + ".csv")
                : std::filesystem::path(curve_out);
            auto c = cmd_curve(curve_n, grid, samples, curve_seed, path);
            std::cout << "wrote " << path.string() << " (" << c.size() << " points)\n";
        } else if (*count) {
            auto report = cmd_count(count_n);
            std::cout << "n=" << report.n << " labeled=" << report.labeled;
            if (!report.unlabeled) {
                std::cout << '\n';
                throw UnsupportedSize("unlabeled count is only supported for n <= 7");
            }
            std::cout << " unlabeled=" << *report.unlabeled << '\n';
        } else if (*show) {
            std::cout << load_config(config_file, overrides).to_text();
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
