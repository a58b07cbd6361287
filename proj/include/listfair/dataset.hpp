#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "listfair/gender.hpp"

namespace listfair {

struct NameRecord {
    std::string name;
    Gender gender;
    std::uint64_t count;

    friend bool operator==(const NameRecord&, const NameRecord&) = default;
};

struct Demographics {
    double perc_f_dataset;
    double perc_m_dataset;
};

/// A country's name-frequency corpus. Immutable once built; the constructor
/// enforces every record-level and aggregate invariant.
class NameDataset {
public:
    /// Throws ValueError for empty names, control characters, zero counts or
    /// an empty total, and DuplicateError for a repeated (name, gender) pair.
    NameDataset(std::string id, std::vector<NameRecord> records);

    [[nodiscard]] const std::string& id() const noexcept { return id_; }
    [[nodiscard]] std::span<const NameRecord> records() const noexcept { return records_; }
    [[nodiscard]] std::uint64_t total_count() const noexcept { return female_count_ + male_count_; }
    [[nodiscard]] std::uint64_t female_count() const noexcept { return female_count_; }
    [[nodiscard]] std::uint64_t male_count() const noexcept { return male_count_; }

private:
    std::string id_;
    std::vector<NameRecord> records_;
    std::uint64_t female_count_ = 0;
    std::uint64_t male_count_ = 0;
};

[[nodiscard]] Demographics demographics(const NameDataset& ds) noexcept;

/// Reads a canonical `name,gender,count` CSV. The dataset id defaults to the
/// file stem.
[[nodiscard]] NameDataset load_canonical(const std::filesystem::path& path);
[[nodiscard]] NameDataset load_canonical(const std::filesystem::path& path, std::string id);
[[nodiscard]] NameDataset parse_canonical(std::istream& in, std::string id,
                                          const std::string& source_name = "<stream>");

void write_canonical(const NameDataset& ds, std::ostream& out);
void write_canonical(const NameDataset& ds, const std::filesystem::path& path);

struct YearRange {
    int first;
    int last;  // inclusive
};

/// Merges SSA `yob<YEAR>.txt` files for every year in `years`, summing counts
/// of identical (name, gender) pairs. Records come out sorted by
/// (name, gender), so the result does not depend on directory order.
[[nodiscard]] NameDataset load_ssa_yearfiles(const std::filesystem::path& directory,
                                             YearRange years, std::string id = "US");

}  // namespace listfair
