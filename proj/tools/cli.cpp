#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "listfair/dataset.hpp"
#include "listfair/error.hpp"
#include "listfair/experiments.hpp"
#include "listfair/metrics.hpp"
#include "listfair/ordering.hpp"
#include "listfair/sampling.hpp"

namespace listfair::cli {

namespace {

constexpr std::uint64_t kFallbackSeed = 42;

/// Raised for bad flag values that CLI11 cannot validate on its own.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("LISTFAIR_SEED"); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
            return v;
        } catch (const std::exception&) {
            throw UsageError(std::string("LISTFAIR_SEED is not an unsigned integer: ") + env);
        }
    }
    return kFallbackSeed;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + out_path);
    f << text;
    if (!f) throw Error("write failed: " + out_path);
}

YearRange parse_years(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) throw std::invalid_argument(text);
        std::size_t u1 = 0;
        std::size_t u2 = 0;
        const std::string a = text.substr(0, colon);
        const std::string b = text.substr(colon + 1);
        YearRange r{std::stoi(a, &u1), std::stoi(b, &u2)};
        if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument(text);
        return r;
    } catch (const std::exception&) {
        throw UsageError("--years must look like A:B, got '" + text + "'");
    }
}

NormalizerSpec parse_normalizer(const std::string& text) {
    if (text == "theoretical") return NormalizerSpec::theoretical();
    if (text.rfind("fixed:", 0) == 0) {
        const std::string z = text.substr(6);
        try {
            std::size_t used = 0;
            const double v = std::stod(z, &used);
            if (used != z.size()) throw std::invalid_argument(z);
            return NormalizerSpec::fixed(v);
        } catch (const std::exception&) {
            throw UsageError("--normalizer fixed:Z needs a number, got '" + z + "'");
        }
    }
    throw UsageError("--normalizer must be theoretical or fixed:Z, got '" + text + "'");
}

std::string curve_csv(const PrefixProportionCurve& curve) {
    std::ostringstream os;
    os << "k,perc_f\n";
    char buf[64];
    for (std::size_t k = 1; k <= curve.n; ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.6f\n", k, curve.at(k));
        os << buf;
    }
    return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"listfair: gender balance audits of alphabetically ordered name lists", "listfair"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    app.footer("Exit codes: 0 success, 1 usage error, 2 data or validation error.\n"
               "LISTFAIR_SEED supplies the seed when --seed is absent (fallback 42).");

    // convert-ssa
    auto* convert = app.add_subcommand("convert-ssa", "Merge SSA yob<YEAR>.txt files into a canonical dataset CSV");
    std::string ssa_dir, ssa_years, ssa_out, ssa_id = "US";
    convert->add_option("--dir", ssa_dir, "Directory holding yob<YEAR>.txt files")->required();
    convert->add_option("--years", ssa_years, "Inclusive year range A:B")->required();
    convert->add_option("--out", ssa_out, "Output canonical CSV (stdout if absent)");
    convert->add_option("--id", ssa_id, "Dataset id")->capture_default_str();

    // sample
    auto* sample = app.add_subcommand("sample", "Draw a seeded sample from a canonical dataset");
    std::string sample_dataset, sample_mode = "proportional", sample_out;
    std::size_t sample_n = 0;
    std::optional<double> sample_perc_fs;
    std::optional<std::uint64_t> sample_seed;
    std::uint64_t sample_stream = 0;
    sample->add_option("--dataset", sample_dataset, "Canonical dataset CSV")->required();
    sample->add_option("--n", sample_n, "Sample size")->required();
    auto* mode_opt = sample->add_option("--mode", sample_mode, "proportional (default) or stratified")
                         ->check(CLI::IsMember({"proportional", "stratified"}));
    sample->add_option("--perc-fs", sample_perc_fs, "Exact female share; implies stratified mode")
        ->check(CLI::Range(0.0, 1.0));
    sample->add_option("--seed", sample_seed, "64-bit seed (default: LISTFAIR_SEED or 42)");
    sample->add_option("--stream", sample_stream, "Substream index")->capture_default_str();
    sample->add_option("--out", sample_out, "Output sample CSV (stdout if absent)");

    // sort
    auto* sort = app.add_subcommand("sort", "Sort a sample alphabetically by first name");
    std::string sort_in, sort_out;
    std::size_t sort_page = 0;
    sort->add_option("--in", sort_in, "Sample CSV (position,name,gender) or name,gender list")->required();
    sort->add_option("--out", sort_out, "Output CSV (stdout if absent)");
    sort->add_option("--page-size", sort_page, "Emit a page,position,name,gender dump with this page size")
        ->check(CLI::PositiveNumber);

    // curve
    auto* curve = app.add_subcommand("curve", "Perc_f(k) prefix curve of a list in its given order");
    std::string curve_in, curve_out;
    curve->add_option("--in", curve_in, "Sample CSV")->required();
    curve->add_option("--out", curve_out, "Output k,perc_f CSV (stdout if absent)");

    // rnd
    auto* rnd_cmd = app.add_subcommand("rnd", "rND of a list in its given order");
    std::string rnd_in, rnd_norm = "theoretical", rnd_out;
    std::size_t rnd_step = 10;
    bool rnd_json = false;
    rnd_cmd->add_option("--in", rnd_in, "Sample CSV")->required();
    rnd_cmd->add_option("--step", rnd_step, "Checkpoint step")->capture_default_str()->check(CLI::PositiveNumber);
    rnd_cmd->add_option("--normalizer", rnd_norm, "theoretical or fixed:Z")->capture_default_str();
    rnd_cmd->add_flag("--json", rnd_json, "Print the full JSON report");
    rnd_cmd->add_option("--out", rnd_out, "Output file (stdout if absent)");

    // parity
    auto* parity = app.add_subcommand("parity", "Exact binomial parity test of a list's female share");
    std::string parity_in;
    double parity_ref = 0.0;
    bool parity_json = false;
    parity->add_option("--in", parity_in, "Sample CSV")->required();
    parity->add_option("--reference", parity_ref, "Reference female share")->required()->check(CLI::Range(0.0, 1.0));
    parity->add_flag("--json", parity_json, "Print JSON");

    // audit
    auto* audit = app.add_subcommand("audit", "First-page audit of alphabetically sorted name,gender lists");
    std::vector<std::string> audit_in;
    std::string audit_pages = "5,9,15", audit_out;
    std::optional<double> audit_perc_fd;
    audit->add_option("--in", audit_in, "One or more list CSVs")->required();
    audit->add_option("--page-sizes", audit_pages, "Comma-separated page sizes k1")->capture_default_str();
    audit->add_option("--perc-fd", audit_perc_fd, "Expected female share (default: each list's own share)")
        ->check(CLI::Range(0.0, 1.0));
    audit->add_option("--out", audit_out, "Output CSV (stdout if absent)");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Run a seeded experiment suite");
    std::string exp_kind, exp_config, exp_out;
    unsigned exp_jobs = 1;
    std::optional<std::uint64_t> exp_seed;
    experiment->add_option("kind", exp_kind, "percf, rnd-grid or rnd-size")
        ->required()
        ->check(CLI::IsMember({"percf", "rnd-grid", "rnd-size"}));
    experiment->add_option("--config", exp_config, "JSON config file")->required();
    experiment->add_option("--out", exp_out, "Results directory")->required();
    experiment->add_option("--jobs", exp_jobs, "Worker threads (results do not depend on it)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    experiment->add_option("--seed", exp_seed, "Override the config seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*convert) {
            const auto ds = load_ssa_yearfiles(ssa_dir, parse_years(ssa_years), ssa_id);
            std::ostringstream os;
            write_canonical(ds, os);
            emit(os.str(), ssa_out, out);
        } else if (*sample) {
            SampleMode mode = SampleMode::proportional();
            if (sample_perc_fs) {
                if (mode_opt->count() > 0 && sample_mode == "proportional") {
                    throw UsageError("--perc-fs conflicts with --mode proportional");
                }
                mode = SampleMode::stratified(*sample_perc_fs);
            } else if (sample_mode == "stratified") {
                throw UsageError("--mode stratified needs --perc-fs");
            }
            const auto ds = load_canonical(sample_dataset);
            RandomSource rng(resolve_seed(sample_seed), sample_stream);
            const auto s = draw_sample(ds, sample_n, mode, rng);
            std::ostringstream os;
            write_sample_csv(s.individuals, os);
            emit(os.str(), sample_out, out);
        } else if (*sort) {
            Sample s{read_individuals_csv(sort_in), {}};
            const auto sorted = sort_alphabetical(std::move(s));
            std::ostringstream os;
            if (sort_page > 0) {
                write_pages_csv(paginate(sorted, sort_page), os);
            } else {
                write_sample_csv(sorted.individuals, os);
            }
            emit(os.str(), sort_out, out);
        } else if (*curve) {
            const auto individuals = read_individuals_csv(curve_in);
            if (individuals.empty()) throw ValueError(curve_in + ": list is empty");
            emit(curve_csv(perc_f_curve(genders_of(individuals))), curve_out, out);
        } else if (*rnd_cmd) {
            const auto normalizer = parse_normalizer(rnd_norm);
            const auto genders = genders_of(read_individuals_csv(rnd_in));
            const auto report = rnd(genders, rnd_step, normalizer);
            std::string text;
            if (rnd_json) {
                text = rnd_report_json(report) + "\n";
            } else {
                nlohmann::ordered_json j = nlohmann::ordered_json::parse(rnd_report_json(report));
                text = "raw " + j["raw"].dump() + "\nz " + j["z"].dump() + "\nmode " + to_string(report.mode) +
                       "\nnormalized " + j["normalized"].dump() + "\n";
            }
            emit(text, rnd_out, out);
        } else if (*parity) {
            const auto individuals = read_individuals_csv(parity_in);
            const auto r = statistical_parity(individuals, Demographics{parity_ref, 1.0 - parity_ref});
            nlohmann::ordered_json j;
            j["n"] = r.n;
            j["female"] = r.female;
            j["perc_f_sample"] = r.perc_f_sample;
            j["perc_f_reference"] = r.perc_f_reference;
            j["p_value"] = r.p_value;
            j["alpha"] = kParityAlpha;
            j["passes"] = r.passes;
            if (parity_json) {
                out << j.dump(2) << '\n';
            } else {
                char buf[256];
                std::snprintf(buf, sizeof buf, "n %zu\nfemale %zu\nperc_f_sample %.6g\np_value %.6g\n%s\n", r.n,
                              r.female, r.perc_f_sample, r.p_value, r.passes ? "PASS" : "FAIL");
                out << buf;
            }
        } else if (*audit) {
            std::vector<std::size_t> pages;
            std::stringstream ss(audit_pages);
            for (std::string item; std::getline(ss, item, ',');) {
                try {
                    std::size_t used = 0;
                    const long v = std::stol(item, &used);
                    if (used != item.size() || v <= 0) throw std::invalid_argument(item);
                    pages.push_back(static_cast<std::size_t>(v));
                } catch (const std::exception&) {
                    throw UsageError("--page-sizes entries must be positive integers, got '" + item + "'");
                }
            }
            if (pages.empty()) throw UsageError("--page-sizes must not be empty");
            std::vector<std::filesystem::path> paths(audit_in.begin(), audit_in.end());
            const auto result = run_candidate_audit(paths, pages, audit_perc_fd);
            std::ostringstream os;
            write_audit_csv(result.rows, os);
            emit(os.str(), audit_out, out);
            err << "below-expected cells: " << result.below_cells << '\n';
        } else if (*experiment) {
            const auto kind = parse_experiment_kind(exp_kind);
            auto cfg = load_config(exp_config, resolve_seed(std::nullopt));
            if (exp_seed) cfg.seed = *exp_seed;
            cfg.jobs = exp_jobs;
            write_results(run_experiment(kind, cfg), exp_out);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const listfair::Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}

}  // namespace listfair::cli
