#include "listfair/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "listfair/error.hpp"
#include "text_util.hpp"

namespace listfair {

std::vector<Gender> genders_of(std::span<const Individual> individuals) {
    std::vector<Gender> out;
    out.reserve(individuals.size());
    for (const auto& ind : individuals) out.push_back(ind.gender);
    return out;
}

PrefixProportionCurve perc_f_curve(std::span<const Gender> genders) {
    PrefixProportionCurve curve;
    curve.n = genders.size();
    curve.values.reserve(genders.size());
    std::size_t women = 0;
    for (std::size_t k = 1; k <= genders.size(); ++k) {
        women += is_female(genders[k - 1]) ? 1 : 0;
        curve.values.push_back(static_cast<double>(women) / static_cast<double>(k));
    }
    curve.perc_f_sample = curve.values.empty() ? 0.0 : curve.values.back();
    return curve;
}

PrefixProportionCurve perc_f_curve(const OrderedSample& os) {
    const auto g = genders_of(os.individuals);
    return perc_f_curve(g);
}

std::string to_string(NormalizerMode mode) {
    switch (mode) {
        case NormalizerMode::empirical_batch: return "empirical_batch";
        case NormalizerMode::theoretical: return "theoretical";
        case NormalizerMode::fixed: return "fixed";
    }
    return "unknown";
}

std::vector<std::size_t> rnd_checkpoints(std::size_t n, std::size_t step) {
    if (step == 0) throw ValueError("rND step must be positive");
    std::vector<std::size_t> ks;
    for (std::size_t k = step; k <= n; k += step) ks.push_back(k);
    if (n % step != 0 && n > step) ks.push_back(n);
    return ks;
}

namespace {

// Raw rND from prefix female counts: prefix[k] = women among the first k.
RndReport raw_from_prefix(std::span<const std::size_t> prefix, std::size_t step) {
    const std::size_t n = prefix.size() - 1;
    // 1/log2(k) is unbounded at k = 1.
    if (step < 2) throw ValueError("rND step must be at least 2, got " + std::to_string(step));
    if (n < step) {
        throw SampleTooSmallError("rND needs at least " + std::to_string(step) + " individuals, got " +
                                  std::to_string(n));
    }
    const double overall = static_cast<double>(prefix[n]) / static_cast<double>(n);
    RndReport report;
    for (std::size_t k : rnd_checkpoints(n, step)) {
        const double discount = 1.0 / std::log2(static_cast<double>(k));
        const double deviation =
            std::abs(static_cast<double>(prefix[k]) / static_cast<double>(k) - overall);
        const double term = discount * deviation;
        report.checkpoints.push_back({k, discount, deviation, term});
        report.raw += term;
    }
    return report;
}

std::vector<std::size_t> prefix_counts(std::span<const Gender> genders) {
    std::vector<std::size_t> prefix(genders.size() + 1, 0);
    for (std::size_t i = 0; i < genders.size(); ++i) {
        prefix[i + 1] = prefix[i] + (is_female(genders[i]) ? 1 : 0);
    }
    return prefix;
}

std::vector<std::size_t> extreme_prefix(std::size_t n, std::size_t n_f, bool women_first) {
    std::vector<std::size_t> prefix(n + 1, 0);
    for (std::size_t k = 1; k <= n; ++k) {
        prefix[k] = women_first ? std::min(k, n_f) : (k > n - n_f ? k - (n - n_f) : 0);
    }
    return prefix;
}

}  // namespace

RndReport rnd_raw(std::span<const Gender> genders, std::size_t step) {
    const auto prefix = prefix_counts(genders);
    return raw_from_prefix(prefix, step);
}

RndReport rnd_raw(const OrderedSample& os, std::size_t step) {
    const auto g = genders_of(os.individuals);
    return rnd_raw(g, step);
}

double rnd_theoretical_normalizer(std::size_t n, std::size_t n_f, std::size_t step) {
    if (n_f > n) throw ValueError("n_f exceeds n");
    if (n_f == 0 || n_f == n) return 0.0;
    const auto first = extreme_prefix(n, n_f, true);
    const auto last = extreme_prefix(n, n_f, false);
    return std::max(raw_from_prefix(first, step).raw, raw_from_prefix(last, step).raw);
}

void apply_normalizer(RndReport& report, NormalizerSpec normalizer, std::size_t n, std::size_t n_f,
                      std::size_t step) {
    report.mode = normalizer.mode;
    switch (normalizer.mode) {
        case NormalizerMode::theoretical:
            report.z = rnd_theoretical_normalizer(n, n_f, step);
            break;
        case NormalizerMode::fixed:
            if (!(normalizer.z > 0.0)) {
                throw ValueError("fixed normalizer Z must be positive, got " + detail::format_g(normalizer.z));
            }
            report.z = normalizer.z;
            break;
        case NormalizerMode::empirical_batch:
            if (normalizer.z < 0.0) throw ValueError("batch normalizer Z must be non-negative");
            report.z = normalizer.z;
            break;
    }
    report.normalized = report.z > 0.0 ? report.raw / report.z : 0.0;
}

RndReport rnd(std::span<const Gender> genders, std::size_t step, NormalizerSpec normalizer) {
    auto report = rnd_raw(genders, step);
    const auto n_f = static_cast<std::size_t>(std::count(genders.begin(), genders.end(), Gender::female));
    apply_normalizer(report, normalizer, genders.size(), n_f, step);
    return report;
}

RndReport rnd(const OrderedSample& os, std::size_t step, NormalizerSpec normalizer) {
    const auto g = genders_of(os.individuals);
    return rnd(g, step, normalizer);
}

std::string rnd_report_json(const RndReport& report, int indent) {
    using detail::round_significant;
    nlohmann::ordered_json j;
    j["checkpoints"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checkpoints) {
        j["checkpoints"].push_back({{"k", c.k},
                                    {"discount", round_significant(c.discount, 6)},
                                    {"deviation", round_significant(c.deviation, 6)},
                                    {"term", round_significant(c.term, 6)}});
    }
    j["raw"] = round_significant(report.raw, 6);
    j["z"] = round_significant(report.z, 6);
    j["mode"] = to_string(report.mode);
    j["normalized"] = round_significant(report.normalized, 6);
    return j.dump(indent);
}

double binomial_two_sided_p(std::size_t successes, std::size_t trials, double p) {
    if (successes > trials) throw ValueError("successes exceed trials");
    if (!(p >= 0.0 && p <= 1.0)) throw ValueError("reference proportion must lie in [0, 1]");
    if (p == 0.0) return successes == 0 ? 1.0 : 0.0;
    if (p == 1.0) return successes == trials ? 1.0 : 0.0;

    const double n = static_cast<double>(trials);
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    const double log_n_fact = std::lgamma(n + 1.0);
    auto log_pmf = [&](std::size_t k) {
        const double kd = static_cast<double>(k);
        return log_n_fact - std::lgamma(kd + 1.0) - std::lgamma(n - kd + 1.0) + kd * log_p +
               (n - kd) * log_q;
    };

    // Outcomes at most as likely as the observed one (relative slack 1e-7).
    const double threshold = log_pmf(successes) + std::log1p(1e-7);
    double as_extreme = 0.0;
    double more_likely = 0.0;
    for (std::size_t k = 0; k <= trials; ++k) {
        const double lp = log_pmf(k);
        (lp <= threshold ? as_extreme : more_likely) += std::exp(lp);
    }
    return std::clamp(as_extreme / (as_extreme + more_likely), 0.0, 1.0);
}

ParityReport statistical_parity(std::span<const Gender> genders, const Demographics& reference) {
    if (genders.empty()) throw ValueError("parity test needs at least one individual");
    ParityReport r;
    r.n = genders.size();
    r.female = static_cast<std::size_t>(std::count(genders.begin(), genders.end(), Gender::female));
    r.perc_f_sample = static_cast<double>(r.female) / static_cast<double>(r.n);
    r.perc_f_reference = reference.perc_f_dataset;
    r.p_value = binomial_two_sided_p(r.female, r.n, reference.perc_f_dataset);
    r.passes = r.p_value >= kParityAlpha;
    return r;
}

ParityReport statistical_parity(std::span<const Individual> individuals, const Demographics& reference) {
    const auto g = genders_of(individuals);
    return statistical_parity(g, reference);
}

std::string to_string(AuditFlag flag) {
    return flag == AuditFlag::below ? "below" : "at_or_above";
}

std::size_t PageAuditRow::below_count() const {
    return static_cast<std::size_t>(
        std::count_if(flags.begin(), flags.end(), [](const auto& kv) { return kv.second == AuditFlag::below; }));
}

PageAuditRow page_audit(const OrderedSample& list, std::span<const std::size_t> k1_values, double perc_fd,
                        std::string list_id) {
    if (!(perc_fd >= 0.0 && perc_fd <= 1.0)) throw ValueError("perc_fd must lie in [0, 1]");
    const auto curve = perc_f_curve(list);
    PageAuditRow row;
    row.list_id = std::move(list_id);
    row.size = list.size();
    row.perc_fd = perc_fd;
    for (std::size_t k1 : k1_values) {
        if (k1 == 0 || k1 > list.size()) {
            throw ValueError("page size k1=" + std::to_string(k1) + " is invalid for a list of " +
                             std::to_string(list.size()));
        }
        const double share = curve.at(k1);
        row.per_k1[k1] = share;
        row.flags[k1] = share < perc_fd ? AuditFlag::below : AuditFlag::at_or_above;
    }
    return row;
}

void write_audit_csv(std::span<const PageAuditRow> rows, std::ostream& out) {
    out << "list_id,size,perc_fd,k1,perc_f,flag\n";
    for (const auto& row : rows) {
        for (const auto& [k1, share] : row.per_k1) {
            out << detail::csv_field(row.list_id) << ',' << row.size << ',' << detail::format_g(row.perc_fd, 6)
                << ',' << k1 << ',' << detail::format_g(share, 6) << ',' << to_string(row.flags.at(k1)) << '\n';
        }
    }
}

}  // namespace listfair
