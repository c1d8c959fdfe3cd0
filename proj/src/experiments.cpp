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

#include "permqc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace permqc {

namespace {

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> lines_of(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!line.empty()) {
            out.push_back(line);
        }
    }
    return out;
}

uint64_t parse_u64(const std::string &text) {
    uint64_t v = 0;
    auto t = trim(text);
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        throw std::invalid_argument("expected a non-negative integer, got '" + text + "'");
    }
    return v;
}

int parse_label(const std::string &text) {
    auto t = trim(text);
    if (t == "1" || t == "+1") {
        return 1;
    }
    if (t == "-1") {
        return -1;
    }
    throw std::invalid_argument("label must be +1 or -1, got '" + text + "'");
}

void expect_header(const std::vector<std::string> &lines, const std::string &header, const std::string &what) {
    if (lines.empty() || lines[0] != header) {
        throw std::runtime_error(what + ": expected header '" + header + "'");
    }
}

std::map<std::string, std::string> parse_key_values(const std::string &text) {
    std::map<std::string, std::string> out;
    for (const auto &raw : lines_of(text)) {
        auto line = trim(raw);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("expected key=value, got '" + line + "'");
        }
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

template <typename T, typename F>
std::string join(const std::vector<T> &items, F &&fmt) {
    std::string out;
    for (size_t i = 0; i < items.size(); i++) {
        if (i) {
            out += ',';
        }
        out += fmt(items[i]);
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string &text) {
    auto t = trim(text);
    double v = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        throw std::invalid_argument("expected a number, got '" + text + "'");
    }
    return v;
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

std::filesystem::path default_output_dir(const std::filesystem::path &fallback) {
    if (const char *env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
        return env;
    }
    return fallback;
}

std::string dataset_to_csv(const Dataset &dataset) {
    std::string out = "id,n,edges,label\n";
    for (size_t i = 0; i < dataset.samples.size(); i++) {
        const auto &s = dataset.samples[i];
        out += std::to_string(i) + ',' + std::to_string(s.graph.num_nodes()) + ',';
        bool first = true;
        for (auto [a, b] : s.graph.edges()) {
            if (!first) {
                out += ';';
            }
            first = false;
            out += std::to_string(a) + '-' + std::to_string(b);
        }
        out += ',';
        out += s.label > 0 ? "1" : "-1";
        out += '\n';
    }
    return out;
}

Dataset dataset_from_csv(const std::string &text, GraphProperty property, size_t train_per_epoch) {
    auto lines = lines_of(text);
    expect_header(lines, "id,n,edges,label", "dataset");
    Dataset out;
    out.property = property;
    out.train_per_epoch = train_per_epoch;
    for (size_t row = 1; row < lines.size(); row++) {
        auto cols = split(lines[row], ',');
        if (cols.size() != 4) {
            throw std::runtime_error("dataset row " + std::to_string(row) + " does not have 4 columns");
        }
        size_t n = parse_u64(cols[1]);
        if (out.num_nodes == 0) {
            out.num_nodes = n;
        } else if (n != out.num_nodes) {
            throw std::runtime_error("dataset mixes graph sizes");
        }
        Graph g(n);
        if (!trim(cols[2]).empty()) {
            for (const auto &e : split(cols[2], ';')) {
                auto ends = split(e, '-');
                if (ends.size() != 2) {
                    throw std::runtime_error("malformed edge '" + e + "' in dataset row " + std::to_string(row));
                }
                size_t a = parse_u64(ends[0]);
                size_t b = parse_u64(ends[1]);
                if (a >= b) {
                    throw std::runtime_error("edge '" + e + "' must be written as i-j with i < j");
                }
                g.set_edge(a, b);
            }
        }
        int label = parse_label(cols[3]);
        if ((label > 0) != evaluate(property, g)) {
            throw std::runtime_error(
                "dataset row " + std::to_string(row) + " carries label " + std::to_string(label) +
                " but the " + to_string(property) + " oracle disagrees");
        }
        out.samples.push_back({std::move(g), label});
    }
    return out;
}

std::filesystem::path meta_path(const std::filesystem::path &dataset_path) {
    auto p = dataset_path;
    p += ".meta";
    return p;
}

void write_dataset(const Dataset &dataset, uint64_t seed, const std::filesystem::path &path) {
    write_text_file(path, dataset_to_csv(dataset));
    std::string meta;
    meta += "property=" + to_string(dataset.property) + "\n";
    meta += "n=" + std::to_string(dataset.num_nodes) + "\n";
    meta += "seed=" + std::to_string(seed) + "\n";
    meta += "total=" + std::to_string(dataset.samples.size()) + "\n";
    meta += "positives=" + std::to_string(dataset.count_label(+1)) + "\n";
    meta += "negatives=" + std::to_string(dataset.count_label(-1)) + "\n";
    write_text_file(meta_path(path), meta);
}

DatasetMeta read_dataset_meta(const std::filesystem::path &dataset_path) {
    auto kv = parse_key_values(read_text_file(meta_path(dataset_path)));
    auto get = [&](const std::string &key) {
        auto it = kv.find(key);
        if (it == kv.end()) {
            throw std::runtime_error("dataset metadata lacks '" + key + "'");
        }
        return it->second;
    };
    DatasetMeta meta;
    meta.property = property_from_string(get("property"));
    meta.n = parse_u64(get("n"));
    meta.seed = parse_u64(get("seed"));
    meta.total = parse_u64(get("total"));
    meta.positives = parse_u64(get("positives"));
    meta.negatives = parse_u64(get("negatives"));
    return meta;
}

Dataset read_dataset(const std::filesystem::path &path, size_t train_per_epoch) {
    auto meta = read_dataset_meta(path);
    auto dataset = dataset_from_csv(read_text_file(path), meta.property, train_per_epoch);
    if (dataset.samples.size() != meta.total || dataset.count_label(+1) != meta.positives ||
        (dataset.num_nodes != meta.n && !dataset.samples.empty())) {
        throw std::runtime_error("dataset " + path.string() + " does not match its metadata");
    }
    dataset.num_nodes = meta.n;
    return dataset;
}

std::string ansatz_stem(AnsatzKind kind) {
    switch (kind) {
        case AnsatzKind::sn_invariant:
            return "Sn";
        case AnsatzKind::cn_invariant:
            return "Cn";
        case AnsatzKind::strongly_entangling:
            return "entanglement";
        case AnsatzKind::free_parameters:
            return "free_parameters";
        case AnsatzKind::custom:
            return "custom";
    }
    return "?";
}

static AnsatzKind kind_from_stem(const std::string &stem) {
    for (auto k : {AnsatzKind::sn_invariant, AnsatzKind::cn_invariant, AnsatzKind::free_parameters,
                   AnsatzKind::strongly_entangling}) {
        if (ansatz_stem(k) == stem) {
            return k;
        }
    }
    throw std::invalid_argument("unknown ansatz column stem '" + stem + "'");
}

std::string records_to_csv(std::span<const RunRecord> records) {
    std::string out = std::string(kRawHeader) + "\n";
    for (const auto &r : records) {
        for (const auto &e : r.epochs) {
            out += std::to_string(e.epoch) + ',' + to_string(r.ansatz) + ',' + std::to_string(r.seed) + ',' +
                   format_double(e.loss) + ',' + format_double(e.train_accuracy) + ',' +
                   format_double(e.validation_accuracy) + ',' + format_double(e.near_zero_fraction) + '\n';
        }
    }
    return out;
}

std::vector<RunRecord> records_from_csv(const std::string &text, GraphProperty property) {
    auto lines = lines_of(text);
    expect_header(lines, kRawHeader, "raw run file");
    std::vector<RunRecord> out;
    for (size_t row = 1; row < lines.size(); row++) {
        auto cols = split(lines[row], ',');
        if (cols.size() != 7) {
            throw std::runtime_error("raw run row " + std::to_string(row) + " does not have 7 columns");
        }
        auto kind = ansatz_from_string(cols[1]);
        uint64_t seed = parse_u64(cols[2]);
        auto it = std::find_if(out.begin(), out.end(), [&](const RunRecord &r) {
            return r.ansatz == kind && r.seed == seed;
        });
        if (it == out.end()) {
            out.push_back({seed, kind, property, {}, {}});
            it = out.end() - 1;
        }
        it->epochs.push_back(
            {parse_u64(cols[0]), parse_double(cols[3]), parse_double(cols[4]), parse_double(cols[5]),
             parse_double(cols[6])});
    }
    return out;
}

AggregateTable aggregate_by_ansatz(std::span<const RunRecord> records, std::span<const AnsatzKind> kinds) {
    AggregateTable table;
    for (auto kind : kinds) {
        std::vector<RunRecord> group;
        for (const auto &r : records) {
            if (r.ansatz == kind) {
                group.push_back(r);
            }
        }
        table.kinds.push_back(kind);
        table.columns.push_back(aggregate_seeds(group));
    }
    return table;
}

std::string aggregate_to_csv(const AggregateTable &table) {
    std::string out = "epoch";
    for (auto k : table.kinds) {
        out += ',' + ansatz_stem(k) + "_mean," + ansatz_stem(k) + "_ci95";
    }
    out += '\n';
    size_t rows = table.columns.empty() ? 0 : table.columns[0].size();
    for (size_t e = 0; e < rows; e++) {
        out += std::to_string(table.columns[0][e].epoch);
        for (const auto &col : table.columns) {
            out += ',' + format_double(col.at(e).mean) + ',' + format_double(col.at(e).ci95);
        }
        out += '\n';
    }
    return out;
}

AggregateTable aggregate_from_csv(const std::string &text) {
    auto lines = lines_of(text);
    if (lines.empty()) {
        throw std::runtime_error("aggregate file is empty");
    }
    auto header = split(lines[0], ',');
    if (header.empty() || header[0] != "epoch" || header.size() % 2 != 1) {
        throw std::runtime_error("aggregate file has a malformed header");
    }
    AggregateTable table;
    for (size_t c = 1; c < header.size(); c += 2) {
        const auto &h = header[c];
        if (!h.ends_with("_mean") || header[c + 1] != h.substr(0, h.size() - 5) + "_ci95") {
            throw std::runtime_error("aggregate file has a malformed header");
        }
        table.kinds.push_back(kind_from_stem(h.substr(0, h.size() - 5)));
        table.columns.emplace_back();
    }
    for (size_t row = 1; row < lines.size(); row++) {
        auto cols = split(lines[row], ',');
        if (cols.size() != header.size()) {
            throw std::runtime_error("aggregate row " + std::to_string(row) + " has the wrong column count");
        }
        size_t epoch = parse_u64(cols[0]);
        for (size_t k = 0; k < table.kinds.size(); k++) {
            table.columns[k].push_back({epoch, parse_double(cols[1 + 2 * k]), parse_double(cols[2 + 2 * k])});
        }
    }
    return table;
}

void ExperimentConfig::set(const std::string &key, const std::string &value) {
    auto seeds_from = [](const std::string &v) {
        std::vector<uint64_t> s;
        for (const auto &part : split(v, ',')) {
            if (!trim(part).empty()) {
                s.push_back(parse_u64(part));
            }
        }
        return s;
    };
    if (key == "property") {
        property = property_from_string(value);
    } else if (key == "n_qubits") {
        n_qubits = parse_u64(value);
    } else if (key == "ansatzes") {
        ansatzes.clear();
        for (const auto &part : split(value, ',')) {
            if (!trim(part).empty()) {
                ansatzes.push_back(ansatz_from_string(trim(part)));
            }
        }
    } else if (key.starts_with("layers.")) {
        layers[ansatz_from_string(key.substr(7))] = parse_u64(value);
    } else if (key == "learning_rate") {
        train.learning_rate = parse_double(value);
    } else if (key == "metric_regularizer") {
        train.metric_regularizer = parse_double(value);
    } else if (key == "epochs") {
        train.epochs = parse_u64(value);
    } else if (key == "train_per_epoch") {
        train.train_per_epoch = parse_u64(value);
    } else if (key == "minibatch") {
        train.minibatch = parse_u64(value);
    } else if (key == "near_zero_epsilon") {
        train.near_zero_epsilon = parse_double(value);
    } else if (key == "seeds") {
        train.seeds = seeds_from(value);
    } else if (key == "init_scale") {
        train.init_scale = parse_double(value);
    } else if (key == "metric_mode") {
        train.metric_mode = metric_mode_from_string(value);
    } else if (key == "dataset") {
        dataset = value;
    } else if (key == "output_dir") {
        output_dir = value;
    } else if (key == "threads") {
        threads = parse_u64(value);
    } else {
        throw std::invalid_argument("unknown configuration key '" + key + "'");
    }
}

void ExperimentConfig::apply_text(const std::string &text) {
    for (const auto &[k, v] : parse_key_values(text)) {
        set(k, v);
    }
}

std::string ExperimentConfig::to_text() const {
    std::string out;
    out += "property=" + to_string(property) + "\n";
    out += "n_qubits=" + std::to_string(n_qubits) + "\n";
    out += "ansatzes=" + join(ansatzes, [](AnsatzKind k) { return to_string(k); }) + "\n";
    for (auto k : ansatzes) {
        auto it = layers.find(k);
        out += "layers." + to_string(k) + "=" + std::to_string(it == layers.end() ? default_layers(k) : it->second) +
               "\n";
    }
    out += "learning_rate=" + format_double(train.learning_rate) + "\n";
    out += "metric_regularizer=" + format_double(train.metric_regularizer) + "\n";
    out += "epochs=" + std::to_string(train.epochs) + "\n";
    out += "train_per_epoch=" + std::to_string(train.train_per_epoch) + "\n";
    out += "minibatch=" + std::to_string(train.minibatch) + "\n";
    out += "near_zero_epsilon=" + format_double(train.near_zero_epsilon) + "\n";
    out += "seeds=" + join(train.seeds, [](uint64_t s) { return std::to_string(s); }) + "\n";
    out += "init_scale=" + format_double(train.init_scale) + "\n";
    out += "metric_mode=" + to_string(train.metric_mode) + "\n";
    out += "dataset=" + dataset.string() + "\n";
    out += "output_dir=" + output_dir.string() + "\n";
    out += "threads=" + std::to_string(threads) + "\n";
    return out;
}

void ExperimentConfig::validate() const {
    if (ansatzes.empty()) {
        throw std::invalid_argument("at least one ansatz is required");
    }
    if (n_qubits < 3) {
        throw std::invalid_argument("n_qubits must be at least 3");
    }
    train.validate();
}

Dataset cmd_gen(GraphProperty property, size_t n, size_t total, uint64_t seed, const std::filesystem::path &out_path) {
    Rng rng(seed);
    auto dataset = generate_balanced_dataset(property, n, total, rng);
    write_dataset(dataset, seed, out_path);
    return dataset;
}

TrainOutputs cmd_train(const ExperimentConfig &config) {
    config.validate();
    if (config.dataset.empty()) {
        throw std::invalid_argument("no dataset configured");
    }
    if (!std::filesystem::exists(config.dataset)) {
        throw std::runtime_error("dataset not found: " + config.dataset.string());
    }
    auto dataset = read_dataset(config.dataset, config.train.train_per_epoch);
    if (dataset.property != config.property) {
        throw std::invalid_argument(
            "dataset property " + to_string(dataset.property) + " differs from configured " + to_string(config.property));
    }
    if (dataset.num_nodes != config.n_qubits) {
        throw std::invalid_argument("dataset graph size differs from n_qubits");
    }

    std::vector<CircuitIR> circuits;
    for (auto kind : config.ansatzes) {
        auto it = config.layers.find(kind);
        circuits.push_back(build_ansatz(
            kind, config.n_qubits, it == config.layers.end() ? std::nullopt : std::optional<size_t>(it->second)));
    }

    struct Job {
        size_t circuit;
        uint64_t seed;
    };
    std::vector<Job> jobs;
    for (size_t c = 0; c < circuits.size(); c++) {
        for (auto seed : config.train.seeds) {
            jobs.push_back({c, seed});
        }
    }

    TrainOutputs out;
    out.records.resize(jobs.size());
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (size_t j = next++; j < jobs.size(); j = next++) {
            try {
                out.records[j] = train_run(circuits[jobs[j].circuit], dataset, config.train, jobs[j].seed);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    size_t threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, jobs.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (size_t t = 0; t < threads; t++) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    for (const auto &r : out.records) {
        auto path = config.output_dir / "runs" / (ansatz_stem(r.ansatz) + "-seed" + std::to_string(r.seed) + ".csv");
        write_text_file(path, records_to_csv(std::span(&r, 1)));
        out.run_csvs.push_back(path);
    }
    out.raw_csv = config.output_dir / "raw.csv";
    write_text_file(out.raw_csv, records_to_csv(out.records));
    if (config.train.seeds.size() >= 2) {
        out.aggregate = aggregate_by_ansatz(out.records, config.ansatzes);
        out.aggregate_csv = config.output_dir / "aggregate.csv";
        write_text_file(out.aggregate_csv, aggregate_to_csv(out.aggregate));
    }
    return out;
}

std::string curve_to_csv(std::span<const CurvePoint> curve) {
    std::string out = "p,connectedness\n";
    for (const auto &pt : curve) {
        out += format_double(pt.p) + ',' + format_double(pt.connectedness) + '\n';
    }
    return out;
}

std::vector<CurvePoint> curve_from_csv(const std::string &text) {
    auto lines = lines_of(text);
    expect_header(lines, "p,connectedness", "curve file");
    std::vector<CurvePoint> out;
    for (size_t row = 1; row < lines.size(); row++) {
        auto cols = split(lines[row], ',');
        if (cols.size() != 2) {
            throw std::runtime_error("curve row " + std::to_string(row) + " does not have 2 columns");
        }
        out.push_back({parse_double(cols[0]), parse_double(cols[1])});
    }
    return out;
}

std::vector<double> uniform_grid(size_t points) {
    std::vector<double> grid;
    if (points == 1) {
        return {0.0};
    }
    for (size_t i = 0; i < points; i++) {
        grid.push_back(static_cast<double>(i) / static_cast<double>(points - 1));
    }
    return grid;
}

std::vector<CurvePoint> cmd_curve(
    size_t n, std::span<const double> grid, size_t samples, uint64_t seed, const std::filesystem::path &out_path) {
    auto curve = connectedness_curve(n, grid, samples, seed);
    write_text_file(out_path, curve_to_csv(curve));
    return curve;
}

CountReport cmd_count(size_t n) {
    CountReport report;
    report.n = n;
    report.labeled = count_labeled_graphs(n);
    if (n <= 7) {
        report.unlabeled = count_unlabeled_graphs(n);
    }
    return report;
}

}  // namespace permqc
