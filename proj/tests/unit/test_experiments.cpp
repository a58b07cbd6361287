#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "fixtures.hpp"
#include "listfair/error.hpp"
#include "listfair/experiments.hpp"

using namespace listfair;
using listfair::testing::TempDir;
using listfair::testing::read_file;
using listfair::testing::write_file;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.dataset_paths = {listfair::testing::fixture_dataset()};
    cfg.samples_per_cell = 6;
    cfg.n = 200;
    cfg.perc_fs_grid = {0.05, 0.5, 0.95};
    cfg.size_grid = {50, 200};
    cfg.bootstrap_resamples = 200;
    return cfg;
}

NameDataset fixture() { return load_canonical(listfair::testing::fixture_dataset()); }

// A popular male name at the head of the alphabet, everything else late.
NameDataset early_male_dataset() {
    return NameDataset("early", {{"Aaron", Gender::male, 4000},
                                 {"Abel", Gender::male, 1000},
                                 {"Maria", Gender::female, 3000},
                                 {"Teresa", Gender::female, 2000},
                                 {"Victor", Gender::male, 1000}});
}

}  // namespace

TEST_CASE("config parsing") {
    const auto cfg = parse_config(R"({"datasets": ["names.csv"], "n": 300, "perc_fs_grid": [0.3]})", "/data", 7);
    CHECK(cfg.dataset_paths.front() == std::filesystem::path("/data/names.csv"));
    CHECK(cfg.n == 300);
    CHECK(cfg.seed == 7);
    CHECK(cfg.samples_per_cell == 100);
    CHECK(cfg.perc_fs_grid == std::vector<double>{0.3});
    CHECK(cfg.normalizer_scope == NormalizerScope::per_batch);

    CHECK(parse_config(R"({"datasets": ["a.csv"], "seed": 9})", "/", 7).seed == 9);
    CHECK(ExperimentConfig::default_perc_fs_grid().size() == 19);
    CHECK(ExperimentConfig::default_perc_fs_grid()[9] == 0.5);

    CHECK_THROWS_AS((void)parse_config(R"({"datasets": ["a.csv"], "colour": 1})", "/"), ValueError);
    CHECK_THROWS_AS((void)parse_config(R"({"n": 5})", "/"), ValueError);
    CHECK_THROWS_AS((void)parse_config(R"({"datasets": ["a.csv"], "perc_fs_grid": []})", "/"), ValueError);
    CHECK_THROWS_AS((void)parse_config(R"({"datasets": ["a.csv"], "perc_fs_grid": [1.0]})", "/"), ValueError);
    CHECK_THROWS_AS((void)parse_config(R"({"datasets": ["a.csv"], "samples_per_cell": 0})", "/"), ValueError);
    CHECK_THROWS_AS((void)parse_config(R"({"datasets": ["a.csv"], "size_grid": [5]})", "/"), ValueError);
    CHECK_THROWS_AS((void)parse_config(R"({"datasets": ["a.csv"], "n": "ten"})", "/"), ValueError);
    CHECK_THROWS_AS((void)parse_config("{not json", "/"), FormatError);

    // The resolved config round-trips.
    const auto again = parse_config(config_json(cfg), "/elsewhere", 1);
    CHECK(config_json(again) == config_json(cfg));
}

TEST_CASE("percf experiment bookkeeping and random-order parity") {
    auto cfg = small_config();
    cfg.samples_per_cell = 40;
    cfg.n = 300;
    const auto ds = fixture();
    const auto r = run_percf_experiment(ds, cfg);
    REQUIRE(r.records.size() == 40);
    for (const auto& rec : r.records) {
        CHECK(rec.random_curve.size() == 300);
        CHECK(rec.alphabetical_curve.size() == 300);
        CHECK(rec.random_curve.back() == doctest::Approx(rec.alphabetical_curve.back()));
    }
    REQUIRE(r.prefix.size() == 300);
    const auto& at50 = r.prefix[49];
    CHECK(at50.k == 50);
    CHECK(at50.random.ci.lower <= r.perc_f_dataset);
    CHECK(at50.random.ci.upper >= r.perc_f_dataset);
    REQUIRE(r.curves.size() == 3);
    CHECK(r.curves[0].name == "random_smoothed");
    CHECK(r.curves[0].points.size() == 300);
    CHECK(r.curves[2].points[0].y == r.perc_f_dataset);
}

TEST_CASE("percf experiment exposes an early-alphabet male name") {
    auto cfg = small_config();
    cfg.samples_per_cell = 50;
    cfg.n = 500;
    const auto r = run_percf_experiment(early_male_dataset(), cfg);
    const auto& at10 = r.prefix[9];
    CHECK(at10.alphabetical.mean < at10.random.ci.lower);
}

TEST_CASE("rnd-grid experiment") {
    const auto cfg = small_config();
    const auto r = run_rnd_vs_percfs(fixture(), cfg);
    CHECK(r.records.size() == 3 * cfg.samples_per_cell);
    REQUIRE(r.cells.size() == 3);
    REQUIRE(r.z.has_value());
    for (const auto& rec : r.records) {
        CHECK(rec.raw_rnd <= *r.z);
        CHECK(rec.normalized_rnd <= 1.0);
        CHECK(rec.n == 200);
        CHECK(rec.n_f == stratified_female_count(rec.cell_value, 200));
    }
    CHECK(r.cells[1].value == 0.5);
    CHECK(r.cells[1].raw.mean > r.cells[0].raw.mean);
    CHECK(r.cells[1].raw.mean > r.cells[2].raw.mean);
}

TEST_CASE("cells do not depend on the rest of the grid") {
    auto full = small_config();
    auto only_mid = small_config();
    only_mid.perc_fs_grid = {0.5};
    const auto a = run_rnd_vs_percfs(fixture(), full);
    const auto b = run_rnd_vs_percfs(fixture(), only_mid);
    for (std::size_t s = 0; s < full.samples_per_cell; ++s) {
        const auto& ra = a.records[full.samples_per_cell + s];
        const auto& rb = b.records[s];
        CHECK(ra.stream == rb.stream);
        CHECK(ra.raw_rnd == rb.raw_rnd);
        CHECK(ra.n_f == rb.n_f);
    }
    CHECK(a.cells[1].raw.ci.lower == b.cells[0].raw.ci.lower);
}

TEST_CASE("rnd-size experiment with one sample per cell") {
    auto cfg = small_config();
    cfg.samples_per_cell = 1;
    const auto r = run_rnd_vs_size(fixture(), cfg);
    REQUIRE(r.cells.size() == 2);
    for (std::size_t c = 0; c < 2; ++c) {
        CHECK(r.cells[c].raw.mean == r.records[c].raw_rnd);
        CHECK(r.records[c].n == cfg.size_grid[c]);
    }
}

TEST_CASE("normalizer scopes") {
    auto cfg = small_config();
    const std::vector<NameDataset> both = {fixture(), early_male_dataset()};

    cfg.normalizer_scope = NormalizerScope::global;
    const auto global = run_experiment(ExperimentKind::rnd_grid, cfg, both);
    REQUIRE(global.datasets.size() == 2);
    CHECK(*global.datasets[0].z == *global.datasets[1].z);
    double max_raw = 0.0;
    for (const auto& d : global.datasets)
        for (const auto& rec : d.records) max_raw = std::max(max_raw, rec.raw_rnd);
    CHECK(*global.datasets[0].z == max_raw);

    cfg.normalizer_scope = NormalizerScope::per_batch;
    const auto batch = run_experiment(ExperimentKind::rnd_grid, cfg, both);
    CHECK(*batch.datasets[0].z != *batch.datasets[1].z);

    cfg.normalizer_scope = NormalizerScope::theoretical;
    const auto theo = run_experiment(ExperimentKind::rnd_grid, cfg, both);
    CHECK_FALSE(theo.datasets[0].z.has_value());
    for (const auto& d : theo.datasets) {
        for (const auto& rec : d.records) {
            CHECK(rec.z == rnd_theoretical_normalizer(rec.n, rec.n_f, cfg.step));
            CHECK(rec.normalized_rnd >= 0.0);
            CHECK(rec.normalized_rnd <= 1.0);
        }
    }
}

TEST_CASE("infeasible stratification names the cell") {
    const NameDataset men("men", {{"Rui", Gender::male, 5}});
    try {
        (void)run_rnd_vs_percfs(men, small_config());
        FAIL("expected InfeasibleSampleError");
    } catch (const InfeasibleSampleError& e) {
        CHECK(std::string(e.what()).find("perc_fs=0.05") != std::string::npos);
    }
}

TEST_CASE("results directory is byte-identical across runs and job counts") {
    auto cfg = small_config();
    TempDir a("exp-a"), b("exp-b");
    for (auto kind : {ExperimentKind::percf, ExperimentKind::rnd_grid, ExperimentKind::rnd_size}) {
        cfg.jobs = 1;
        write_results(run_experiment(kind, cfg), a.path());
        cfg.jobs = 4;
        write_results(run_experiment(kind, cfg), b.path());
        for (const char* f : {"config.json", "raw.csv", "aggregate.csv", "curves.csv"}) {
            const auto left = read_file(a / f);
            CHECK(!left.empty());
            CHECK(left == read_file(b / f));
        }
    }
    const auto raw = read_file(a / "raw.csv");
    CHECK(raw.rfind("dataset,cell,size,sample,stream,n,n_f,raw_rnd,z,normalized_rnd\n", 0) == 0);
    CHECK(read_file(a / "config.json").find("\"experiment\": \"rnd-size\"") != std::string::npos);
}

TEST_CASE("candidate audit over list files") {
    TempDir dir("audit");
    // AC-shaped: 83 candidates, 28 women; first page F F M M M | M F M M | F M M F M M.
    std::ostringstream ac;
    ac << "name,gender\n";
    const std::string head = "FFMMMMFMMFMMFMM";
    char buf[32];
    for (std::size_t i = 0; i < head.size(); ++i) {
        std::snprintf(buf, sizeof buf, "A%02zu", i);
        ac << buf << ',' << head[i] << '\n';
    }
    for (int i = 0; i < 23; ++i) ac << "Maria" << i << ",F\n";
    for (int i = 0; i < 45; ++i) ac << "Paulo" << i << ",M\n";
    write_file(dir / "AC.csv", ac.str());
    write_file(dir / "women.csv", "name,gender\nZoe,F\nAna,F\nBia,F\nCida,F\nDalva,F\n");

    const std::vector<std::size_t> ks = {5, 9, 15};
    const std::vector<std::filesystem::path> one = {dir / "AC.csv"};
    const auto audit = run_candidate_audit(one, ks, 0.34);
    REQUIRE(audit.rows.size() == 1);
    const auto& row = audit.rows[0];
    CHECK(row.list_id == "AC");
    CHECK(row.size == 83);
    CHECK(row.per_k1.at(5) == doctest::Approx(0.4));
    CHECK(row.per_k1.at(9) == doctest::Approx(3.0 / 9));
    CHECK(row.per_k1.at(15) == doctest::Approx(5.0 / 15));
    CHECK(audit.below_cells == 2);

    const auto derived = run_candidate_audit(one, ks);
    CHECK(derived.rows[0].perc_fd == doctest::Approx(28.0 / 83));

    const std::vector<std::size_t> small = {1, 3, 5};
    const std::vector<std::filesystem::path> women = {dir / "women.csv"};
    CHECK(run_candidate_audit(women, small, 1.0).below_cells == 0);
    CHECK_THROWS_AS((void)run_candidate_audit(women, ks), ValueError);

    write_file(dir / "bad.csv", "name,gender\nAna,F\nBob\n");
    const std::vector<std::filesystem::path> bad = {dir / "bad.csv"};
    try {
        (void)run_candidate_audit(bad, small);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("bad.csv:3") != std::string::npos);
    }
}
