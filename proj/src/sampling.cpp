#include "listfair/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "listfair/error.hpp"
#include "text_util.hpp"

namespace listfair {

std::string SampleMode::describe() const {
    if (kind == Kind::proportional) return "proportional";
    return "stratified:" + detail::format_g(perc_fs, 6);
}

std::size_t stratified_female_count(double perc_fs, std::size_t n) {
    if (!(perc_fs >= 0.0 && perc_fs <= 1.0)) {
        throw ValueError("perc_fs must lie in [0, 1], got " + detail::format_g(perc_fs));
    }
    // The epsilon makes decimal grid points such as 0.45 * 10 round up as
    // written despite their binary representation.
    const double exact = perc_fs * static_cast<double>(n);
    const auto women = static_cast<std::size_t>(std::floor(exact + 0.5 + 1e-9));
    return std::min(women, n);
}

WeightedNamePool::WeightedNamePool(const NameDataset& ds, std::optional<Gender> only) {
    for (const auto& r : ds.records()) {
        if (only && r.gender != *only) continue;
        records_.push_back(&r);
        total_ += r.count;
        cumulative_.push_back(total_);
    }
}

const NameRecord& WeightedNamePool::draw(RandomSource& rng) const {
    const std::uint64_t u = rng.uniform_below(total_);
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return *records_[static_cast<std::size_t>(it - cumulative_.begin())];
}

Sample draw_sample(const NameDataset& ds, std::size_t n, SampleMode mode, RandomSource& rng) {
    if (n == 0) throw ValueError("sample size n must be positive");

    Sample s;
    s.provenance = {ds.id(), rng.seed(), rng.stream_index(), mode};
    s.individuals.reserve(n);

    if (mode.kind == SampleMode::Kind::proportional) {
        const WeightedNamePool pool(ds, std::nullopt);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& r = pool.draw(rng);
            s.individuals.push_back({r.name, r.gender});
        }
    } else {
        const std::size_t women = stratified_female_count(mode.perc_fs, n);
        const std::size_t men = n - women;
        const WeightedNamePool female_pool(ds, Gender::female);
        const WeightedNamePool male_pool(ds, Gender::male);
        if (women > 0 && female_pool.empty()) {
            throw InfeasibleSampleError("dataset '" + ds.id() + "' has no women but " +
                                        std::to_string(women) + " were requested");
        }
        if (men > 0 && male_pool.empty()) {
            throw InfeasibleSampleError("dataset '" + ds.id() + "' has no men but " +
                                        std::to_string(men) + " were requested");
        }
        for (std::size_t i = 0; i < women; ++i) {
            const auto& r = female_pool.draw(rng);
            s.individuals.push_back({r.name, r.gender});
        }
        for (std::size_t i = 0; i < men; ++i) {
            const auto& r = male_pool.draw(rng);
            s.individuals.push_back({r.name, r.gender});
        }
    }
    fisher_yates(std::span<Individual>(s.individuals), rng);
    return s;
}

void write_sample_csv(std::span<const Individual> individuals, std::ostream& out) {
    out << "position,name,gender\n";
    std::size_t pos = 0;
    for (const auto& ind : individuals) {
        out << ++pos << ',' << detail::csv_field(ind.name) << ',' << gender_letter(ind.gender) << '\n';
    }
}

std::vector<Individual> read_individuals_csv(std::istream& in, const std::string& source_name) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError(source_name + ": empty file");
    detail::strip_cr(line);
    detail::strip_bom(line);
    const auto header = detail::trim(line);
    bool positioned = false;
    if (header == "position,name,gender") {
        positioned = true;
    } else if (header != "name,gender") {
        throw FormatError(source_name + ": bad header '" + line +
                          "', expected position,name,gender or name,gender");
    }

    std::vector<Individual> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (detail::trim(line).empty()) continue;
        const auto where = detail::location(source_name, line_no);
        if (!detail::is_valid_utf8(line)) throw FormatError(where + ": invalid UTF-8");
        auto fields = detail::split_csv_line(line);
        const std::size_t expected = positioned ? 3 : 2;
        if (!fields || fields->size() != expected) {
            throw FormatError(where + ": expected " + std::to_string(expected) + " fields");
        }
        std::size_t col = 0;
        if (positioned) {
            const auto pos = detail::parse_u64(detail::trim((*fields)[0]));
            if (!pos || *pos != out.size() + 1) {
                throw FormatError(where + ": position must be " + std::to_string(out.size() + 1));
            }
            col = 1;
        }
        auto& name = (*fields)[col];
        if (name.empty() || detail::has_control_chars(name)) throw ValueError(where + ": invalid name");
        const auto gender = parse_gender(detail::trim((*fields)[col + 1]));
        if (!gender) throw FormatError(where + ": gender must be F or M");
        out.push_back({std::move(name), *gender});
    }
    return out;
}

std::vector<Individual> read_individuals_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFileError("cannot open " + path.string());
    return read_individuals_csv(in, path.string());
}

}  // namespace listfair
