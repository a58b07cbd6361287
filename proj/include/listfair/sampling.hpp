#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "listfair/dataset.hpp"
#include "listfair/random.hpp"

namespace listfair {

struct Individual {
    std::string name;
    Gender gender;

    friend bool operator==(const Individual&, const Individual&) = default;
};

/// Either draw purely by frequency, or fix the female share exactly.
struct SampleMode {
    enum class Kind { proportional, stratified };
    Kind kind = Kind::proportional;
    double perc_fs = 0.0;  // only meaningful when stratified

    [[nodiscard]] static SampleMode proportional() { return {}; }
    [[nodiscard]] static SampleMode stratified(double perc_fs) {
        return {Kind::stratified, perc_fs};
    }
    [[nodiscard]] std::string describe() const;
};

struct Provenance {
    std::string dataset_id;
    std::uint64_t seed = 0;
    std::uint64_t stream_index = 0;
    SampleMode mode;
};

struct Sample {
    std::vector<Individual> individuals;
    Provenance provenance;

    [[nodiscard]] std::size_t size() const noexcept { return individuals.size(); }
};

/// In-place unbiased Fisher-Yates shuffle.
template <typename T>
void fisher_yates(std::span<T> items, RandomSource& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_below(i));
        using std::swap;
        swap(items[i - 1], items[j]);
    }
}

template <typename T>
[[nodiscard]] std::vector<T> fisher_yates(std::vector<T> items, RandomSource& rng) {
    fisher_yates(std::span<T>(items), rng);
    return items;
}

/// round(perc_fs * n) with halves rounded up.
[[nodiscard]] std::size_t stratified_female_count(double perc_fs, std::size_t n);

/// Draws n individuals with replacement, weighted by record count, then
/// shuffles the list. Stratified mode draws exactly
/// stratified_female_count(perc_fs, n) women from the female records and the
/// rest from the male records.
[[nodiscard]] Sample draw_sample(const NameDataset& ds, std::size_t n, SampleMode mode,
                                 RandomSource& rng);

/// Count-weighted draws over a fixed set of records, reusable across samples.
class WeightedNamePool {
public:
    /// Keeps records whose gender matches `only`, or all records if empty.
    WeightedNamePool(const NameDataset& ds, std::optional<Gender> only);

    [[nodiscard]] bool empty() const noexcept { return total_ == 0; }
    [[nodiscard]] std::uint64_t total() const noexcept { return total_; }
    [[nodiscard]] const NameRecord& draw(RandomSource& rng) const;

private:
    std::vector<const NameRecord*> records_;
    std::vector<std::uint64_t> cumulative_;
    std::uint64_t total_ = 0;
};

/// `position,name,gender` CSV, 1-based positions.
void write_sample_csv(std::span<const Individual> individuals, std::ostream& out);

/// Accepts `position,name,gender` (positions must run 1..N in order) or a
/// bare `name,gender` list.
[[nodiscard]] std::vector<Individual> read_individuals_csv(std::istream& in,
                                                           const std::string& source_name);
[[nodiscard]] std::vector<Individual> read_individuals_csv(const std::filesystem::path& path);

}  // namespace listfair
