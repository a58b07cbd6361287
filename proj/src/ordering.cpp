#include "listfair/ordering.hpp"

#include <algorithm>
#include <ostream>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "listfair/error.hpp"
#include "text_util.hpp"

namespace listfair {

namespace {

const icu::Normalizer2& nfd() {
    static const icu::Normalizer2* instance = [] {
        UErrorCode status = U_ZERO_ERROR;
        const auto* n = icu::Normalizer2::getNFDInstance(status);
        if (U_FAILURE(status) || n == nullptr) throw Error("ICU NFD normalizer unavailable");
        return n;
    }();
    return *instance;
}

bool is_combining_mark(UChar32 c) {
    const auto type = u_charType(c);
    return type == U_NON_SPACING_MARK || type == U_ENCLOSING_MARK;
}

}  // namespace

CollationKey collation_key(std::string_view name) {
    // Upper-case first: a few upper-case mappings introduce combining marks
    // (U+01F0 -> J + U+030C), which the decomposition then strips.
    auto text = icu::UnicodeString::fromUTF8(icu::StringPiece(name.data(), static_cast<int32_t>(name.size())));
    text.toUpper(icu::Locale::getRoot());

    UErrorCode status = U_ZERO_ERROR;
    const icu::UnicodeString decomposed = nfd().normalize(text, status);
    if (U_FAILURE(status)) throw ValueError("cannot normalize name: " + std::string(name));

    icu::UnicodeString stripped;
    for (int32_t i = 0; i < decomposed.length();) {
        const UChar32 c = decomposed.char32At(i);
        if (!is_combining_mark(c)) stripped.append(c);
        i += U16_LENGTH(c);
    }
    CollationKey key;
    stripped.toUTF8String(key.key);
    return key;
}

const std::string& CollationCache::key(const std::string& name) {
    auto it = keys_.find(name);
    if (it == keys_.end()) it = keys_.emplace(name, collation_key(name).key).first;
    return it->second;
}

OrderedSample as_random_order(Sample s) {
    return {std::move(s.individuals), Ordering::random, std::move(s.provenance)};
}

void sort_alphabetical_in_place(std::vector<Individual>& individuals, CollationCache& cache) {
    std::vector<std::pair<const std::string*, std::size_t>> keyed;
    keyed.reserve(individuals.size());
    for (std::size_t i = 0; i < individuals.size(); ++i) {
        keyed.emplace_back(&cache.key(individuals[i].name), i);
    }
    // Index tiebreak makes the sort stable.
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        const int c = a.first->compare(*b.first);
        return c != 0 ? c < 0 : a.second < b.second;
    });
    std::vector<Individual> sorted;
    sorted.reserve(individuals.size());
    for (const auto& [key, idx] : keyed) sorted.push_back(std::move(individuals[idx]));
    individuals = std::move(sorted);
}

OrderedSample sort_alphabetical(Sample s, CollationCache& cache) {
    sort_alphabetical_in_place(s.individuals, cache);
    return {std::move(s.individuals), Ordering::alphabetical, std::move(s.provenance)};
}

OrderedSample sort_alphabetical(Sample s) {
    CollationCache cache;
    return sort_alphabetical(std::move(s), cache);
}

std::vector<Page> paginate(const OrderedSample& os, std::size_t k1) {
    if (k1 == 0) throw ValueError("page size k1 must be positive");
    std::vector<Page> pages;
    const auto& all = os.individuals;
    for (std::size_t start = 0; start < all.size(); start += k1) {
        const std::size_t end = std::min(all.size(), start + k1);
        pages.push_back({pages.size() + 1, k1,
                         std::vector<Individual>(all.begin() + static_cast<std::ptrdiff_t>(start),
                                                 all.begin() + static_cast<std::ptrdiff_t>(end))});
    }
    return pages;
}

void write_pages_csv(std::span<const Page> pages, std::ostream& out) {
    out << "page,position,name,gender\n";
    std::size_t pos = 0;
    for (const auto& page : pages) {
        for (const auto& ind : page.individuals) {
            out << page.index << ',' << ++pos << ',' << detail::csv_field(ind.name) << ','
                << gender_letter(ind.gender) << '\n';
        }
    }
}

}  // namespace listfair
