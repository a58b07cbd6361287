#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "listfair/dataset.hpp"
#include "listfair/metrics.hpp"
#include "listfair/stats.hpp"

namespace listfair {

enum class NormalizerScope { per_batch, global, theoretical };
enum class ExperimentKind { percf, rnd_grid, rnd_size };

[[nodiscard]] std::string to_string(NormalizerScope scope);
[[nodiscard]] std::string to_string(ExperimentKind kind);
[[nodiscard]] ExperimentKind parse_experiment_kind(const std::string& text);

struct ExperimentConfig {
    std::vector<std::filesystem::path> dataset_paths;
    std::size_t samples_per_cell = 100;
    std::size_t n = 1000;
    std::vector<double> perc_fs_grid = default_perc_fs_grid();
    std::vector<std::size_t> size_grid = {200, 500, 1000, 2000};
    std::uint64_t seed = 42;
    std::size_t step = 10;
    NormalizerScope normalizer_scope = NormalizerScope::per_batch;
    double ci_level = 0.95;
    std::size_t bootstrap_resamples = kDefaultBootstrapResamples;
    double bandwidth = 0.0;  // <= 0 selects Silverman's rule
    unsigned jobs = 1;       // not serialized; results never depend on it

    [[nodiscard]] static std::vector<double> default_perc_fs_grid();

    /// Throws ValueError on empty grids, zero counts or out-of-range values.
    void validate() const;
};

/// Reads a JSON config. Relative dataset paths resolve against the config
/// file's directory. Unknown keys are rejected.
/// `default_seed` applies when the file has no "seed" key.
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path,
                                           std::uint64_t default_seed = 42);
[[nodiscard]] ExperimentConfig parse_config(const std::string& json_text,
                                            const std::filesystem::path& base_dir,
                                            std::uint64_t default_seed = 42);
/// Fully resolved config (defaults filled in), deterministic key order.
[[nodiscard]] std::string config_json(const ExperimentConfig& cfg);

struct SampleRecord {
    std::size_t cell = 0;
    double cell_value = 0.0;  // perc_fs, n, or 0 for percf
    std::size_t sample = 0;
    std::uint64_t stream = 0;
    std::size_t n = 0;
    std::size_t n_f = 0;
    double raw_rnd = 0.0;
    double z = 0.0;
    double normalized_rnd = 0.0;
    std::vector<double> random_curve;        // percf only
    std::vector<double> alphabetical_curve;  // percf only
};

struct Summary {
    double mean = 0.0;
    double stddev = 0.0;
    ConfidenceInterval ci{0.0, 0.0, 0.0, 0};
};

struct CellAggregate {
    std::size_t cell = 0;
    double value = 0.0;
    Summary raw;
    double mean_normalized = 0.0;
    double z = 0.0;  // resolved batch Z; 0 under theoretical scope
};

struct PrefixAggregate {
    std::size_t k = 0;
    Summary random;
    Summary alphabetical;
};

struct NamedCurve {
    std::string name;
    XYSeries points;
};

struct DatasetResult {
    std::string dataset_id;
    double perc_f_dataset = 0.0;
    std::optional<double> z;  // resolved empirical Z, absent under theoretical scope
    std::vector<SampleRecord> records;
    std::vector<CellAggregate> cells;
    std::vector<PrefixAggregate> prefix;  // percf only
    std::vector<NamedCurve> curves;
};

struct ExperimentResult {
    ExperimentKind kind = ExperimentKind::percf;
    ExperimentConfig config;
    std::vector<DatasetResult> datasets;
};

/// Perc_f(k) curves under random and alphabetical ordering for
/// samples_per_cell proportional samples of size n.
[[nodiscard]] DatasetResult run_percf_experiment(const NameDataset& ds, const ExperimentConfig& cfg);

/// Mean rND of alphabetically ordered stratified samples per Perc_fs cell.
/// Empirical Z is the maximum raw rND of this run (per_batch); global scope
/// is resolved by run_experiment across datasets.
[[nodiscard]] DatasetResult run_rnd_vs_percfs(const NameDataset& ds, const ExperimentConfig& cfg);

/// Mean rND of alphabetically ordered proportional samples per size n.
[[nodiscard]] DatasetResult run_rnd_vs_size(const NameDataset& ds, const ExperimentConfig& cfg);

/// Loads every dataset in cfg and runs `kind`, resolving a global Z when
/// requested.
[[nodiscard]] ExperimentResult run_experiment(ExperimentKind kind, const ExperimentConfig& cfg);
[[nodiscard]] ExperimentResult run_experiment(ExperimentKind kind, const ExperimentConfig& cfg,
                                              std::span<const NameDataset> datasets);

/// Writes config.json, raw.csv, aggregate.csv and curves.csv into dir
/// (created if needed).
void write_results(const ExperimentResult& result, const std::filesystem::path& dir);

struct CandidateAudit {
    std::vector<PageAuditRow> rows;
    std::size_t below_cells = 0;
};

/// Sorts each `name,gender` list alphabetically and audits its first page.
/// perc_fd defaults to the list's own female share.
[[nodiscard]] CandidateAudit run_candidate_audit(std::span<const std::filesystem::path> list_paths,
                                                 std::span<const std::size_t> k1_values,
                                                 std::optional<double> perc_fd = std::nullopt);

}  // namespace listfair
