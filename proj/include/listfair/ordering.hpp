#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "listfair/sampling.hpp"

namespace listfair {

/// Accent-stripped, upper-cased rendering of a name. Keys compare by plain
/// code-point order, which for UTF-8 is byte order.
struct CollationKey {
    std::string key;

    friend auto operator<=>(const CollationKey&, const CollationKey&) = default;
};

/// NFD, drop combining marks, upper-case (root locale).
[[nodiscard]] CollationKey collation_key(std::string_view name);

/// Memoizes collation_key for repeated names (experiments sort thousands of
/// samples drawn from the same few hundred names). Not thread-safe; give each
/// worker its own.
class CollationCache {
public:
    const std::string& key(const std::string& name);

private:
    std::unordered_map<std::string, std::string> keys_;
};

enum class Ordering { random, alphabetical };

struct OrderedSample {
    std::vector<Individual> individuals;
    Ordering ordering = Ordering::random;
    Provenance source;

    [[nodiscard]] std::size_t size() const noexcept { return individuals.size(); }
};

/// Keeps the sample's arrival order.
[[nodiscard]] OrderedSample as_random_order(Sample s);

/// Stable sort by collation key: equal keys keep their arrival order.
[[nodiscard]] OrderedSample sort_alphabetical(Sample s);
[[nodiscard]] OrderedSample sort_alphabetical(Sample s, CollationCache& cache);
void sort_alphabetical_in_place(std::vector<Individual>& individuals, CollationCache& cache);

struct Page {
    std::size_t index;  // 1-based
    std::size_t k1;
    std::vector<Individual> individuals;
};

/// ceil(N / k1) pages; all but the last hold exactly k1 individuals.
/// Throws ValueError when k1 == 0.
[[nodiscard]] std::vector<Page> paginate(const OrderedSample& os, std::size_t k1);

/// `page,position,name,gender`; position is 1-based within the whole list.
void write_pages_csv(std::span<const Page> pages, std::ostream& out);

}  // namespace listfair
