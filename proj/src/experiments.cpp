#include "listfair/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "listfair/error.hpp"
#include "listfair/ordering.hpp"
#include "listfair/sampling.hpp"
#include "parallel.hpp"
#include "text_util.hpp"

namespace listfair {

namespace {

// RandomSource::derived domains.
constexpr std::uint64_t kBootstrapDomain = 1;

constexpr double kPercFsKeyScale = 1e6;

using detail::format_g;

}  // namespace

std::string to_string(NormalizerScope scope) {
    switch (scope) {
        case NormalizerScope::per_batch: return "per_batch";
        case NormalizerScope::global: return "global";
        case NormalizerScope::theoretical: return "theoretical";
    }
    return "unknown";
}

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::percf: return "percf";
        case ExperimentKind::rnd_grid: return "rnd-grid";
        case ExperimentKind::rnd_size: return "rnd-size";
    }
    return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& text) {
    if (text == "percf") return ExperimentKind::percf;
    if (text == "rnd-grid") return ExperimentKind::rnd_grid;
    if (text == "rnd-size") return ExperimentKind::rnd_size;
    throw ValueError("unknown experiment '" + text + "', expected percf, rnd-grid or rnd-size");
}

std::vector<double> ExperimentConfig::default_perc_fs_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 19; ++i) grid.push_back(i / 20.0);
    return grid;
}

void ExperimentConfig::validate() const {
    if (samples_per_cell == 0) throw ValueError("samples_per_cell must be at least 1");
    if (n == 0) throw ValueError("n must be positive");
    if (step < 2) throw ValueError("step must be at least 2");
    if (perc_fs_grid.empty()) throw ValueError("perc_fs_grid must not be empty");
    if (size_grid.empty()) throw ValueError("size_grid must not be empty");
    for (double p : perc_fs_grid) {
        if (!(p > 0.0 && p < 1.0)) throw ValueError("perc_fs_grid entries must lie in (0, 1), got " + format_g(p));
    }
    for (std::size_t s : size_grid) {
        if (s < step) {
            throw ValueError("size_grid entry " + std::to_string(s) + " is smaller than step " + std::to_string(step));
        }
    }
    if (!(ci_level > 0.0 && ci_level < 1.0)) throw ValueError("ci_level must lie in (0, 1)");
    if (bootstrap_resamples == 0) throw ValueError("bootstrap_resamples must be at least 1");
    if (!std::isfinite(bandwidth)) throw ValueError("bandwidth must be finite");
}

namespace {

NormalizerScope parse_scope(const std::string& text) {
    if (text == "per_batch") return NormalizerScope::per_batch;
    if (text == "global") return NormalizerScope::global;
    if (text == "theoretical") return NormalizerScope::theoretical;
    throw ValueError("normalizer_scope must be per_batch, global or theoretical, got '" + text + "'");
}

template <typename T>
T get_as(const nlohmann::json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ValueError(std::string("config key '") + key + "' has the wrong type");
    }
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir,
                              std::uint64_t default_seed) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw FormatError("config must be a JSON object");

    static const std::vector<std::string> known = {"datasets",     "samples_per_cell", "n",
                                                   "perc_fs_grid", "size_grid",        "seed",
                                                   "step",         "normalizer_scope", "ci_level",
                                                   "bootstrap_resamples", "bandwidth"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ValueError("unknown config key '" + key + "'");
        }
    }

    ExperimentConfig cfg;
    cfg.seed = default_seed;
    if (!j.contains("datasets")) throw ValueError("config needs a 'datasets' list");
    for (const auto& p : get_as<std::vector<std::string>>(j, "datasets")) {
        std::filesystem::path path(p);
        cfg.dataset_paths.push_back(path.is_absolute() ? path : (base_dir / path).lexically_normal());
    }
    if (cfg.dataset_paths.empty()) throw ValueError("config 'datasets' must not be empty");
    if (j.contains("samples_per_cell")) cfg.samples_per_cell = get_as<std::size_t>(j, "samples_per_cell");
    if (j.contains("n")) cfg.n = get_as<std::size_t>(j, "n");
    if (j.contains("perc_fs_grid")) cfg.perc_fs_grid = get_as<std::vector<double>>(j, "perc_fs_grid");
    if (j.contains("size_grid")) cfg.size_grid = get_as<std::vector<std::size_t>>(j, "size_grid");
    if (j.contains("seed")) cfg.seed = get_as<std::uint64_t>(j, "seed");
    if (j.contains("step")) cfg.step = get_as<std::size_t>(j, "step");
    if (j.contains("normalizer_scope")) cfg.normalizer_scope = parse_scope(get_as<std::string>(j, "normalizer_scope"));
    if (j.contains("ci_level")) cfg.ci_level = get_as<double>(j, "ci_level");
    if (j.contains("bootstrap_resamples")) cfg.bootstrap_resamples = get_as<std::size_t>(j, "bootstrap_resamples");
    if (j.contains("bandwidth")) cfg.bandwidth = get_as<double>(j, "bandwidth");
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, std::uint64_t default_seed) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFileError("cannot open config " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.parent_path(), default_seed);
}

std::string config_json(const ExperimentConfig& cfg) {
    nlohmann::ordered_json j;
    j["datasets"] = nlohmann::ordered_json::array();
    for (const auto& p : cfg.dataset_paths) j["datasets"].push_back(p.string());
    j["samples_per_cell"] = cfg.samples_per_cell;
    j["n"] = cfg.n;
    j["perc_fs_grid"] = cfg.perc_fs_grid;
    j["size_grid"] = cfg.size_grid;
    j["seed"] = cfg.seed;
    j["step"] = cfg.step;
    j["normalizer_scope"] = to_string(cfg.normalizer_scope);
    j["ci_level"] = cfg.ci_level;
    j["bootstrap_resamples"] = cfg.bootstrap_resamples;
    j["bandwidth"] = cfg.bandwidth;
    return j.dump(2) + "\n";
}

namespace {

std::uint64_t stream_of(std::uint64_t cell_key, std::size_t samples_per_cell, std::size_t sample) {
    return cell_key * samples_per_cell + sample;
}

std::uint64_t perc_fs_key(double perc_fs) {
    return static_cast<std::uint64_t>(std::llround(perc_fs * kPercFsKeyScale));
}

Summary summarize(std::span<const double> values, const ExperimentConfig& cfg, std::uint64_t stream) {
    auto rng = RandomSource::derived(cfg.seed, kBootstrapDomain, stream);
    return {mean(values), sample_stddev(values), bootstrap_ci(values, cfg.ci_level, cfg.bootstrap_resamples, rng)};
}

double choose_bandwidth(std::span<const double> pooled_xs, const ExperimentConfig& cfg) {
    if (cfg.bandwidth > 0.0) return cfg.bandwidth;
    const bool distinct = std::any_of(pooled_xs.begin(), pooled_xs.end(),
                                      [&](double x) { return x != pooled_xs.front(); });
    return distinct ? silverman_bandwidth(pooled_xs) : 1.0;
}

// One alphabetical rND sample of an rND experiment.
SampleRecord rnd_record(const NameDataset& ds, std::size_t n, SampleMode mode, std::size_t cell, double value,
                        std::uint64_t cell_key, std::size_t sample, const ExperimentConfig& cfg) {
    thread_local CollationCache cache;
    const std::uint64_t stream = stream_of(cell_key, cfg.samples_per_cell, sample);
    RandomSource rng(cfg.seed, stream);
    auto s = draw_sample(ds, n, mode, rng);
    sort_alphabetical_in_place(s.individuals, cache);
    const auto genders = genders_of(s.individuals);

    SampleRecord rec;
    rec.cell = cell;
    rec.cell_value = value;
    rec.sample = sample;
    rec.stream = stream;
    rec.n = n;
    rec.n_f = static_cast<std::size_t>(std::count(genders.begin(), genders.end(), Gender::female));
    rec.raw_rnd = rnd_raw(genders, cfg.step).raw;
    return rec;
}

double batch_max(const DatasetResult& r) {
    double z = 0.0;
    for (const auto& rec : r.records) z = std::max(z, rec.raw_rnd);
    return z;
}

// Normalizes every record and aggregates per cell. `batch_z` is ignored under
// theoretical scope.
void finalize_rnd(DatasetResult& r, const ExperimentConfig& cfg, double batch_z) {
    const bool theoretical = cfg.normalizer_scope == NormalizerScope::theoretical;
    r.z = theoretical ? std::nullopt : std::optional<double>(batch_z);
    for (auto& rec : r.records) {
        rec.z = theoretical ? rnd_theoretical_normalizer(rec.n, rec.n_f, cfg.step) : batch_z;
        rec.normalized_rnd = rec.z > 0.0 ? rec.raw_rnd / rec.z : 0.0;
    }

    const std::size_t cells = r.records.size() / cfg.samples_per_cell;
    r.cells.assign(cells, {});
    detail::parallel_for(cells, cfg.jobs, [&](std::size_t c) {
        std::vector<double> raw;
        std::vector<double> normalized;
        double value = 0.0;
        for (std::size_t s = 0; s < cfg.samples_per_cell; ++s) {
            const auto& rec = r.records[c * cfg.samples_per_cell + s];
            raw.push_back(rec.raw_rnd);
            normalized.push_back(rec.normalized_rnd);
            value = rec.cell_value;
        }
        const auto& first = r.records[c * cfg.samples_per_cell];
        auto& agg = r.cells[c];
        agg.cell = c;
        agg.value = value;
        agg.raw = summarize(raw, cfg, first.stream);
        agg.mean_normalized = mean(normalized);
        agg.z = theoretical ? 0.0 : batch_z;
    });

    std::vector<XYPoint> means;
    std::vector<XYPoint> pooled;
    std::vector<double> xs;
    for (const auto& agg : r.cells) means.push_back({agg.value, agg.mean_normalized});
    for (const auto& rec : r.records) {
        pooled.push_back({rec.cell_value, rec.normalized_rnd});
        xs.push_back(rec.cell_value);
    }
    r.curves.clear();
    r.curves.push_back({"mean_normalized", means});
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    if (*lo < *hi) {
        std::vector<double> grid;
        constexpr int kPoints = 101;
        for (int i = 0; i < kPoints; ++i) grid.push_back(*lo + (*hi - *lo) * i / (kPoints - 1));
        r.curves.push_back({"smoothed_normalized", nadaraya_watson(pooled, grid, choose_bandwidth(xs, cfg))});
    }
}

DatasetResult collect_rnd_vs_percfs(const NameDataset& ds, const ExperimentConfig& cfg) {
    cfg.validate();
    DatasetResult r;
    r.dataset_id = ds.id();
    r.perc_f_dataset = demographics(ds).perc_f_dataset;
    const std::size_t spc = cfg.samples_per_cell;
    r.records.resize(cfg.perc_fs_grid.size() * spc);
    detail::parallel_for(r.records.size(), cfg.jobs, [&](std::size_t i) {
        const std::size_t cell = i / spc;
        const double p = cfg.perc_fs_grid[cell];
        try {
            r.records[i] = rnd_record(ds, cfg.n, SampleMode::stratified(p), cell, p, perc_fs_key(p), i % spc, cfg);
        } catch (const InfeasibleSampleError& e) {
            throw InfeasibleSampleError("cell perc_fs=" + format_g(p, 6) + ": " + e.what());
        }
    });
    return r;
}

DatasetResult collect_rnd_vs_size(const NameDataset& ds, const ExperimentConfig& cfg) {
    cfg.validate();
    DatasetResult r;
    r.dataset_id = ds.id();
    r.perc_f_dataset = demographics(ds).perc_f_dataset;
    const std::size_t spc = cfg.samples_per_cell;
    r.records.resize(cfg.size_grid.size() * spc);
    detail::parallel_for(r.records.size(), cfg.jobs, [&](std::size_t i) {
        const std::size_t cell = i / spc;
        const std::size_t n = cfg.size_grid[cell];
        r.records[i] = rnd_record(ds, n, SampleMode::proportional(), cell, static_cast<double>(n), n, i % spc, cfg);
    });
    return r;
}

}  // namespace

DatasetResult run_percf_experiment(const NameDataset& ds, const ExperimentConfig& cfg) {
    cfg.validate();
    DatasetResult r;
    r.dataset_id = ds.id();
    r.perc_f_dataset = demographics(ds).perc_f_dataset;
    const std::size_t spc = cfg.samples_per_cell;
    const std::size_t n = cfg.n;

    r.records.resize(spc);
    detail::parallel_for(spc, cfg.jobs, [&](std::size_t s) {
        thread_local CollationCache cache;
        const std::uint64_t stream = stream_of(0, spc, s);
        RandomSource rng(cfg.seed, stream);
        auto sample = draw_sample(ds, n, SampleMode::proportional(), rng);
        auto& rec = r.records[s];
        rec.sample = s;
        rec.stream = stream;
        rec.n = n;
        rec.random_curve = perc_f_curve(genders_of(sample.individuals)).values;
        sort_alphabetical_in_place(sample.individuals, cache);
        const auto alpha = genders_of(sample.individuals);
        rec.alphabetical_curve = perc_f_curve(alpha).values;
        rec.n_f = static_cast<std::size_t>(std::count(alpha.begin(), alpha.end(), Gender::female));
    });

    r.prefix.assign(n, {});
    detail::parallel_for(n, cfg.jobs, [&](std::size_t i) {
        std::vector<double> random_values(spc);
        std::vector<double> alpha_values(spc);
        for (std::size_t s = 0; s < spc; ++s) {
            random_values[s] = r.records[s].random_curve[i];
            alpha_values[s] = r.records[s].alphabetical_curve[i];
        }
        auto& agg = r.prefix[i];
        agg.k = i + 1;
        agg.random = summarize(random_values, cfg, 2 * i);
        agg.alphabetical = summarize(alpha_values, cfg, 2 * i + 1);
    });

    // Every k carries exactly spc points, so kernel regression over the pooled
    // (k, Perc_f) cloud equals regression over the per-k means; the bandwidth
    // still comes from the pooled abscissae.
    std::vector<double> pooled_xs;
    pooled_xs.reserve(n * spc);
    for (std::size_t s = 0; s < spc; ++s) {
        for (std::size_t k = 1; k <= n; ++k) pooled_xs.push_back(static_cast<double>(k));
    }
    const double h = choose_bandwidth(pooled_xs, cfg);
    std::vector<double> grid;
    std::vector<XYPoint> random_means;
    std::vector<XYPoint> alpha_means;
    XYSeries reference;
    for (const auto& agg : r.prefix) {
        const auto k = static_cast<double>(agg.k);
        grid.push_back(k);
        random_means.push_back({k, agg.random.mean});
        alpha_means.push_back({k, agg.alphabetical.mean});
        reference.push_back({k, r.perc_f_dataset});
    }
    r.curves.push_back({"random_smoothed", nadaraya_watson(random_means, grid, h)});
    r.curves.push_back({"alphabetical_smoothed", nadaraya_watson(alpha_means, grid, h)});
    r.curves.push_back({"reference", std::move(reference)});
    return r;
}

DatasetResult run_rnd_vs_percfs(const NameDataset& ds, const ExperimentConfig& cfg) {
    auto r = collect_rnd_vs_percfs(ds, cfg);
    finalize_rnd(r, cfg, batch_max(r));
    return r;
}

DatasetResult run_rnd_vs_size(const NameDataset& ds, const ExperimentConfig& cfg) {
    auto r = collect_rnd_vs_size(ds, cfg);
    finalize_rnd(r, cfg, batch_max(r));
    return r;
}

ExperimentResult run_experiment(ExperimentKind kind, const ExperimentConfig& cfg,
                                std::span<const NameDataset> datasets) {
    cfg.validate();
    ExperimentResult result;
    result.kind = kind;
    result.config = cfg;
    for (const auto& ds : datasets) {
        switch (kind) {
            case ExperimentKind::percf: result.datasets.push_back(run_percf_experiment(ds, cfg)); break;
            case ExperimentKind::rnd_grid: result.datasets.push_back(collect_rnd_vs_percfs(ds, cfg)); break;
            case ExperimentKind::rnd_size: result.datasets.push_back(collect_rnd_vs_size(ds, cfg)); break;
        }
    }
    if (kind == ExperimentKind::percf) return result;

    double global_z = 0.0;
    for (const auto& r : result.datasets) global_z = std::max(global_z, batch_max(r));
    for (auto& r : result.datasets) {
        finalize_rnd(r, cfg, cfg.normalizer_scope == NormalizerScope::global ? global_z : batch_max(r));
    }
    return result;
}

ExperimentResult run_experiment(ExperimentKind kind, const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<NameDataset> datasets;
    for (const auto& p : cfg.dataset_paths) datasets.push_back(load_canonical(p));
    return run_experiment(kind, cfg, datasets);
}

namespace {

void open_out(std::ofstream& out, const std::filesystem::path& path) {
    out.open(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
}

void write_percf(const ExperimentResult& result, std::ostream& raw, std::ostream& aggregate) {
    raw << "dataset,sample,stream,ordering,k,perc_f\n";
    aggregate << "dataset,k,random_mean,random_std,random_ci_lower,random_ci_upper,"
                 "alphabetical_mean,alphabetical_std,alphabetical_ci_lower,alphabetical_ci_upper,perc_f_dataset\n";
    for (const auto& d : result.datasets) {
        const auto id = detail::csv_field(d.dataset_id);
        for (const auto& rec : d.records) {
            for (const auto& [label, curve] : {std::pair{"random", &rec.random_curve},
                                               std::pair{"alphabetical", &rec.alphabetical_curve}}) {
                for (std::size_t i = 0; i < curve->size(); ++i) {
                    raw << id << ',' << rec.sample << ',' << rec.stream << ',' << label << ',' << i + 1 << ','
                        << format_g((*curve)[i]) << '\n';
                }
            }
        }
        for (const auto& p : d.prefix) {
            aggregate << id << ',' << p.k << ',' << format_g(p.random.mean) << ',' << format_g(p.random.stddev)
                      << ',' << format_g(p.random.ci.lower) << ',' << format_g(p.random.ci.upper) << ','
                      << format_g(p.alphabetical.mean) << ',' << format_g(p.alphabetical.stddev) << ','
                      << format_g(p.alphabetical.ci.lower) << ',' << format_g(p.alphabetical.ci.upper) << ','
                      << format_g(d.perc_f_dataset) << '\n';
        }
    }
}

void write_rnd(const ExperimentResult& result, std::ostream& raw, std::ostream& aggregate) {
    const char* value_name = result.kind == ExperimentKind::rnd_grid ? "perc_fs" : "size";
    raw << "dataset,cell," << value_name << ",sample,stream,n,n_f,raw_rnd,z,normalized_rnd\n";
    aggregate << "dataset,cell," << value_name
              << ",samples,raw_mean,raw_std,raw_ci_lower,raw_ci_upper,z,normalized_mean\n";
    for (const auto& d : result.datasets) {
        const auto id = detail::csv_field(d.dataset_id);
        for (const auto& rec : d.records) {
            raw << id << ',' << rec.cell << ',' << format_g(rec.cell_value) << ',' << rec.sample << ','
                << rec.stream << ',' << rec.n << ',' << rec.n_f << ',' << format_g(rec.raw_rnd) << ','
                << format_g(rec.z) << ',' << format_g(rec.normalized_rnd) << '\n';
        }
        for (const auto& c : d.cells) {
            aggregate << id << ',' << c.cell << ',' << format_g(c.value) << ',' << result.config.samples_per_cell
                      << ',' << format_g(c.raw.mean) << ',' << format_g(c.raw.stddev) << ','
                      << format_g(c.raw.ci.lower) << ',' << format_g(c.raw.ci.upper) << ','
                      << (d.z ? format_g(c.z) : std::string("theoretical")) << ',' << format_g(c.mean_normalized)
                      << '\n';
        }
    }
}

}  // namespace

void write_results(const ExperimentResult& result, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());

    {
        std::ofstream out;
        open_out(out, dir / "config.json");
        nlohmann::ordered_json j = nlohmann::ordered_json::parse(config_json(result.config));
        nlohmann::ordered_json wrapped;
        wrapped["experiment"] = to_string(result.kind);
        for (auto& [k, v] : j.items()) wrapped[k] = v;
        out << wrapped.dump(2) << '\n';
    }
    std::ofstream raw;
    std::ofstream aggregate;
    std::ofstream curves;
    open_out(raw, dir / "raw.csv");
    open_out(aggregate, dir / "aggregate.csv");
    open_out(curves, dir / "curves.csv");
    if (result.kind == ExperimentKind::percf) {
        write_percf(result, raw, aggregate);
    } else {
        write_rnd(result, raw, aggregate);
    }
    curves << "dataset,curve,x,y\n";
    for (const auto& d : result.datasets) {
        for (const auto& c : d.curves) {
            for (const auto& p : c.points) {
                curves << detail::csv_field(d.dataset_id) << ',' << c.name << ',' << format_g(p.x) << ','
                       << format_g(p.y) << '\n';
            }
        }
    }
    for (auto* f : {&raw, &aggregate, &curves}) {
        f->flush();
        if (!*f) throw Error("write failed in " + dir.string());
    }
}

CandidateAudit run_candidate_audit(std::span<const std::filesystem::path> list_paths,
                                   std::span<const std::size_t> k1_values, std::optional<double> perc_fd) {
    CandidateAudit audit;
    CollationCache cache;
    for (const auto& path : list_paths) {
        auto individuals = read_individuals_csv(path);
        if (individuals.empty()) throw ValueError(path.string() + ": list is empty");
        const auto women = static_cast<double>(std::count_if(
            individuals.begin(), individuals.end(), [](const Individual& i) { return is_female(i.gender); }));
        const double expected = perc_fd.value_or(women / static_cast<double>(individuals.size()));
        sort_alphabetical_in_place(individuals, cache);
        OrderedSample list{std::move(individuals), Ordering::alphabetical, {}};
        list.source.dataset_id = path.stem().string();
        auto row = page_audit(list, k1_values, expected, path.stem().string());
        audit.below_cells += row.below_count();
        audit.rows.push_back(std::move(row));
    }
    return audit;
}

}  // namespace listfair
