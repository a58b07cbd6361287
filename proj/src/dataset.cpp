#include "listfair/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "listfair/error.hpp"
#include "text_util.hpp"

namespace listfair {

std::optional<Gender> parse_gender(std::string_view text) noexcept {
    if (text == "F" || text == "f") return Gender::female;
    if (text == "M" || text == "m") return Gender::male;
    return std::nullopt;
}

NameDataset::NameDataset(std::string id, std::vector<NameRecord> records)
    : id_(std::move(id)), records_(std::move(records)) {
    std::set<std::pair<std::string_view, Gender>> seen;
    for (const auto& r : records_) {
        if (r.name.empty()) throw ValueError("dataset '" + id_ + "': empty name");
        if (detail::has_control_chars(r.name)) {
            throw ValueError("dataset '" + id_ + "': name contains control characters: " + r.name);
        }
        if (r.count == 0) {
            throw ValueError("dataset '" + id_ + "': count must be positive for " + r.name);
        }
        if (!seen.emplace(r.name, r.gender).second) {
            throw DuplicateError("dataset '" + id_ + "': duplicate record " + r.name + "," +
                                 gender_letter(r.gender));
        }
        (is_female(r.gender) ? female_count_ : male_count_) += r.count;
    }
    if (total_count() == 0) throw ValueError("dataset '" + id_ + "' has no individuals");
}

Demographics demographics(const NameDataset& ds) noexcept {
    const double f = static_cast<double>(ds.female_count()) / static_cast<double>(ds.total_count());
    return {f, static_cast<double>(ds.male_count()) / static_cast<double>(ds.total_count())};
}

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFileError("cannot open " + path.string());
    return in;
}

}  // namespace

NameDataset parse_canonical(std::istream& in, std::string id, const std::string& source_name) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError(source_name + ": empty file, expected header name,gender,count");
    detail::strip_cr(line);
    detail::strip_bom(line);
    if (detail::trim(line) != "name,gender,count") {
        throw FormatError(source_name + ": bad header '" + line + "', expected name,gender,count");
    }

    std::vector<NameRecord> records;
    std::set<std::pair<std::string, Gender>> seen;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (detail::trim(line).empty()) continue;
        const auto where = detail::location(source_name, line_no);
        if (!detail::is_valid_utf8(line)) throw FormatError(where + ": invalid UTF-8");
        auto fields = detail::split_csv_line(line);
        if (!fields || fields->size() != 3) {
            throw FormatError(where + ": expected 3 fields name,gender,count");
        }
        auto& name = (*fields)[0];
        const auto gender = parse_gender(detail::trim((*fields)[1]));
        if (!gender) throw FormatError(where + ": gender must be F or M, got '" + (*fields)[1] + "'");
        const auto count = detail::parse_u64(detail::trim((*fields)[2]));
        if (!count || *count == 0) {
            throw ValueError(where + ": count must be a positive integer, got '" + (*fields)[2] + "'");
        }
        if (name.empty()) throw ValueError(where + ": empty name");
        if (detail::has_control_chars(name)) throw ValueError(where + ": control character in name");
        if (!seen.emplace(name, *gender).second) {
            throw DuplicateError(where + ": duplicate record " + name + "," + gender_letter(*gender));
        }
        records.push_back({std::move(name), *gender, *count});
    }
    return NameDataset(std::move(id), std::move(records));
}

NameDataset load_canonical(const std::filesystem::path& path, std::string id) {
    auto in = open_input(path);
    return parse_canonical(in, std::move(id), path.string());
}

NameDataset load_canonical(const std::filesystem::path& path) {
    return load_canonical(path, path.stem().string());
}

void write_canonical(const NameDataset& ds, std::ostream& out) {
    out << "name,gender,count\n";
    for (const auto& r : ds.records()) {
        out << detail::csv_field(r.name) << ',' << gender_letter(r.gender) << ',' << r.count << '\n';
    }
}

void write_canonical(const NameDataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    write_canonical(ds, out);
    if (!out) throw Error("write failed: " + path.string());
}

NameDataset load_ssa_yearfiles(const std::filesystem::path& directory, YearRange years, std::string id) {
    if (years.first > years.last) {
        throw ValueError("year range " + std::to_string(years.first) + ":" + std::to_string(years.last) +
                         " is empty");
    }
    std::vector<int> missing;
    for (int y = years.first; y <= years.last; ++y) {
        if (!std::filesystem::is_regular_file(directory / ("yob" + std::to_string(y) + ".txt"))) {
            missing.push_back(y);
        }
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "missing SSA year file(s) in " << directory.string() << ":";
        for (int y : missing) msg << ' ' << y;
        throw MissingFileError(msg.str());
    }

    std::map<std::pair<std::string, Gender>, std::uint64_t> merged;
    for (int y = years.first; y <= years.last; ++y) {
        const auto path = directory / ("yob" + std::to_string(y) + ".txt");
        auto in = open_input(path);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            detail::strip_cr(line);
            if (line_no == 1) detail::strip_bom(line);
            if (detail::trim(line).empty()) continue;
            const auto where = detail::location(path.string(), line_no);
            auto fields = detail::split_csv_line(line);
            if (!fields || fields->size() != 3 || (*fields)[0].empty() ||
                detail::has_control_chars((*fields)[0]) || !detail::is_valid_utf8((*fields)[0])) {
                throw FormatError(where + ": malformed line, expected name,sex,count");
            }
            const auto gender = parse_gender((*fields)[1]);
            if (!gender) throw FormatError(where + ": sex must be F or M");
            const auto count = detail::parse_u64((*fields)[2]);
            if (!count || *count == 0) throw FormatError(where + ": count must be a positive integer");
            merged[{std::move((*fields)[0]), *gender}] += *count;
        }
    }

    std::vector<NameRecord> records;
    records.reserve(merged.size());
    for (auto& [key, count] : merged) records.push_back({key.first, key.second, count});
    return NameDataset(std::move(id), std::move(records));
}

}  // namespace listfair
