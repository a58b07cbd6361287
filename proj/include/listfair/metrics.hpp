#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "listfair/dataset.hpp"
#include "listfair/ordering.hpp"

namespace listfair {

/// Perc_f(k) for k = 1..N, stored 0-based (values[k-1]).
struct PrefixProportionCurve {
    std::vector<double> values;
    std::size_t n = 0;
    double perc_f_sample = 0.0;

    [[nodiscard]] double at(std::size_t k) const { return values.at(k - 1); }
};

[[nodiscard]] std::vector<Gender> genders_of(std::span<const Individual> individuals);

[[nodiscard]] PrefixProportionCurve perc_f_curve(std::span<const Gender> genders);
[[nodiscard]] PrefixProportionCurve perc_f_curve(const OrderedSample& os);

enum class NormalizerMode { empirical_batch, theoretical, fixed };

[[nodiscard]] std::string to_string(NormalizerMode mode);

struct RndCheckpoint {
    std::size_t k;
    double discount;   // 1 / log2(k)
    double deviation;  // |women among first k / k - women / N|
    double term;       // discount * deviation
};

struct RndReport {
    std::vector<RndCheckpoint> checkpoints;
    double raw = 0.0;
    NormalizerMode mode = NormalizerMode::theoretical;
    double z = 0.0;
    double normalized = 0.0;
};

/// Checkpoints k = step, 2*step, ... (largest multiple <= N), plus N itself
/// when N is not a multiple of step.
[[nodiscard]] std::vector<std::size_t> rnd_checkpoints(std::size_t n, std::size_t step);

/// Raw (un-normalized) part only; mode/z/normalized are left at defaults.
/// Throws SampleTooSmallError when N < step, ValueError when step < 2.
[[nodiscard]] RndReport rnd_raw(std::span<const Gender> genders, std::size_t step = 10);
[[nodiscard]] RndReport rnd_raw(const OrderedSample& os, std::size_t step = 10);

/// Largest raw rND over the two extreme arrangements (all women first, all
/// women last). Zero when n_f is 0 or n.
[[nodiscard]] double rnd_theoretical_normalizer(std::size_t n, std::size_t n_f,
                                                std::size_t step = 10);

struct NormalizerSpec {
    NormalizerMode mode = NormalizerMode::theoretical;
    double z = 0.0;  // used by fixed and empirical_batch

    [[nodiscard]] static NormalizerSpec theoretical() { return {}; }
    [[nodiscard]] static NormalizerSpec fixed(double z) { return {NormalizerMode::fixed, z}; }
    [[nodiscard]] static NormalizerSpec empirical_batch(double batch_max) {
        return {NormalizerMode::empirical_batch, batch_max};
    }
};

/// raw / Z. A zero Z (degenerate list, or an all-zero batch) yields 0.
/// Throws ValueError for fixed mode with z <= 0.
[[nodiscard]] RndReport rnd(std::span<const Gender> genders, std::size_t step,
                            NormalizerSpec normalizer);
[[nodiscard]] RndReport rnd(const OrderedSample& os, std::size_t step, NormalizerSpec normalizer);

/// Rewrites mode/z/normalized of an existing report.
void apply_normalizer(RndReport& report, NormalizerSpec normalizer, std::size_t n,
                      std::size_t n_f, std::size_t step);

/// JSON object with checkpoints[], raw, z, mode, normalized (6 significant
/// digits).
[[nodiscard]] std::string rnd_report_json(const RndReport& report, int indent = 2);

struct ParityReport {
    std::size_t n = 0;
    std::size_t female = 0;
    double perc_f_sample = 0.0;
    double perc_f_reference = 0.0;
    double p_value = 1.0;
    bool passes = true;  // p_value >= alpha
};

inline constexpr double kParityAlpha = 0.05;

/// Two-sided exact binomial test of the female count against the reference
/// share.
[[nodiscard]] double binomial_two_sided_p(std::size_t successes, std::size_t trials, double p);
[[nodiscard]] ParityReport statistical_parity(std::span<const Gender> genders,
                                              const Demographics& reference);
[[nodiscard]] ParityReport statistical_parity(std::span<const Individual> individuals,
                                              const Demographics& reference);

enum class AuditFlag { below, at_or_above };

[[nodiscard]] std::string to_string(AuditFlag flag);

struct PageAuditRow {
    std::string list_id;
    std::size_t size = 0;
    double perc_fd = 0.0;
    std::map<std::size_t, double> per_k1;
    std::map<std::size_t, AuditFlag> flags;

    [[nodiscard]] std::size_t below_count() const;
};

/// First-page female share for each page size. Throws ValueError naming k1
/// when a page size is 0 or exceeds the list.
[[nodiscard]] PageAuditRow page_audit(const OrderedSample& list, std::span<const std::size_t> k1_values,
                                      double perc_fd, std::string list_id = "list");

/// `list_id,size,perc_fd,k1,perc_f,flag`, one line per page size.
void write_audit_csv(std::span<const PageAuditRow> rows, std::ostream& out);

}  // namespace listfair
