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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "permqc/training.hpp"

namespace permqc {

/// Environment variable naming the default output directory.
inline constexpr const char *kOutputDirEnv = "PERMQC_OUTPUT_DIR";

/// Directory from $PERMQC_OUTPUT_DIR, or `fallback` when unset.
std::filesystem::path default_output_dir(const std::filesystem::path &fallback = "results");

// ---- Dataset files -------------------------------------------------------------

/// CSV with header `id,n,edges,label`; edges as `i-j` pairs joined by `;`.
std::string dataset_to_csv(const Dataset &dataset);

/// Parses dataset CSV text. Every label is re-checked against the property
/// oracle; a mismatch throws std::runtime_error.
Dataset dataset_from_csv(const std::string &text, GraphProperty property, size_t train_per_epoch = 100);

struct DatasetMeta {
    GraphProperty property = GraphProperty::connected;
    size_t n = 0;
    uint64_t seed = 0;
    size_t total = 0;
    size_t positives = 0;
    size_t negatives = 0;
};

/// `<dataset path>.meta`
std::filesystem::path meta_path(const std::filesystem::path &dataset_path);

/// Writes the dataset CSV and its key=value sidecar.
void write_dataset(const Dataset &dataset, uint64_t seed, const std::filesystem::path &path);

DatasetMeta read_dataset_meta(const std::filesystem::path &dataset_path);

/// Loads a dataset, taking the property from the sidecar.
Dataset read_dataset(const std::filesystem::path &path, size_t train_per_epoch = 100);

// ---- Run records ---------------------------------------------------------------

/// Column stem used in aggregate files: Sn, Cn, entanglement, free_parameters.
std::string ansatz_stem(AnsatzKind kind);

inline constexpr const char *kRawHeader = "epoch,ansatz,seed,loss,train_acc,val_acc,near_zero_frac";

/// Raw rows (with header) for the given records, in order.
std::string records_to_csv(std::span<const RunRecord> records);
/// Inverse of records_to_csv; rows are grouped by (ansatz, seed) in first-seen order.
std::vector<RunRecord> records_from_csv(const std::string &text, GraphProperty property);

struct AggregateTable {
    std::vector<AnsatzKind> kinds;
    /// columns[k][e] for kind k, epoch row e.
    std::vector<std::vector<EpochAggregate>> columns;
};

/// Groups records by ansatz (in `kinds` order) and aggregates each group.
AggregateTable aggregate_by_ansatz(std::span<const RunRecord> records, std::span<const AnsatzKind> kinds);

/// Header `epoch,<stem>_mean,<stem>_ci95,...`.
std::string aggregate_to_csv(const AggregateTable &table);
AggregateTable aggregate_from_csv(const std::string &text);

// ---- Configuration -------------------------------------------------------------

struct ExperimentConfig {
    GraphProperty property = GraphProperty::connected;
    size_t n_qubits = 8;
    std::vector<AnsatzKind> ansatzes = {
        AnsatzKind::sn_invariant, AnsatzKind::cn_invariant, AnsatzKind::free_parameters,
        AnsatzKind::strongly_entangling};
    /// Layer overrides; kinds not listed use default_layers.
    std::map<AnsatzKind, size_t> layers;
    TrainConfig train;
    std::filesystem::path dataset;
    std::filesystem::path output_dir = default_output_dir();
    /// Worker threads for independent runs; 0 means hardware concurrency.
    size_t threads = 0;

    /// Applies one `key=value` setting. Throws std::invalid_argument for unknown
    /// keys or malformed values.
    void set(const std::string &key, const std::string &value);
    /// Applies a flat key=value text (blank lines and `#` comments ignored).
    void apply_text(const std::string &text);
    /// Every key with its current value, one per line, loadable by apply_text.
    std::string to_text() const;

    void validate() const;
};

// ---- Commands ------------------------------------------------------------------

/// Generates a balanced dataset and writes it with its sidecar.
Dataset cmd_gen(GraphProperty property, size_t n, size_t total, uint64_t seed, const std::filesystem::path &out_path);

struct TrainOutputs {
    std::vector<RunRecord> records;
    AggregateTable aggregate;
    std::filesystem::path raw_csv;
    std::filesystem::path aggregate_csv;
    std::vector<std::filesystem::path> run_csvs;
};

/// Trains every (ansatz, seed) pair on the configured dataset and writes
/// `runs/<stem>-seed<k>.csv`, `raw.csv` and `aggregate.csv` under output_dir.
TrainOutputs cmd_train(const ExperimentConfig &config);

/// Writes the curve CSV (`p,connectedness`).
std::vector<CurvePoint> cmd_curve(
    size_t n, std::span<const double> grid, size_t samples, uint64_t seed, const std::filesystem::path &out_path);

std::string curve_to_csv(std::span<const CurvePoint> curve);
std::vector<CurvePoint> curve_from_csv(const std::string &text);

/// Evenly spaced grid of `points` values over [0, 1].
std::vector<double> uniform_grid(size_t points);

struct CountReport {
    size_t n = 0;
    uint64_t labeled = 0;
    std::optional<uint64_t> unlabeled;
};

/// Labeled count always; unlabeled count by canonical enumeration when n <= 7.
CountReport cmd_count(size_t n);

// ---- Small file helpers ----------------------------------------------------------

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);
/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
double parse_double(const std::string &text);

}  // namespace permqc
