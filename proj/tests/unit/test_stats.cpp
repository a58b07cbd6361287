#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "listfair/error.hpp"
#include "listfair/stats.hpp"

using namespace listfair;

TEST_CASE("nadaraya_watson basic cases") {
    const std::vector<double> grid = {-5.0, 0.0, 1.5, 40.0};
    const XYSeries constant = {{0, 3.5}, {1, 3.5}, {7, 3.5}};
    for (const auto& p : nadaraya_watson(constant, grid, 0.7)) CHECK(p.y == doctest::Approx(3.5));

    const XYSeries single = {{2.0, -1.25}};
    const auto s = nadaraya_watson(single, grid, 3.0);
    REQUIRE(s.size() == grid.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s[i].x == grid[i]);
        CHECK(s[i].y == -1.25);
    }

    const XYSeries two = {{0, 0}, {2, 1}};
    const std::vector<double> mid = {1.0};
    for (double h : {0.01, 0.5, 1.0, 100.0}) CHECK(nadaraya_watson(two, mid, h)[0].y == doctest::Approx(0.5));

    // Far from every point the estimate degrades gracefully to the nearest one.
    const std::vector<double> far = {1e4};
    CHECK(nadaraya_watson(two, far, 0.1)[0].y == doctest::Approx(1.0));
}

TEST_CASE("nadaraya_watson errors") {
    const std::vector<double> grid = {0.0};
    CHECK_THROWS_AS((void)nadaraya_watson(XYSeries{}, grid, 1.0), ValueError);
    const XYSeries one = {{0, 1}};
    CHECK_THROWS_AS((void)nadaraya_watson(one, grid, 0.0), ValueError);
    CHECK_THROWS_AS((void)nadaraya_watson(one, grid, -2.0), ValueError);
    const XYSeries bad = {{0, NAN}};
    CHECK_THROWS_AS((void)nadaraya_watson(bad, grid, 1.0), ValueError);
}

TEST_CASE("property: kernel estimates stay within the data range and ignore point order") {
    std::mt19937_64 g(31);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int trial = 0; trial < 1000; ++trial) {
        XYSeries data(1 + g() % 25);
        for (auto& p : data) p = {u(g), u(g)};
        std::vector<double> grid(5);
        for (auto& x : grid) x = u(g) * 2;
        const double h = 0.05 + std::abs(u(g));
        const auto est = nadaraya_watson(data, grid, h);
        const auto [lo_it, hi_it] = std::minmax_element(
            data.begin(), data.end(), [](const XYPoint& a, const XYPoint& b) { return a.y < b.y; });
        const double lo = lo_it->y, hi = hi_it->y;
        std::shuffle(data.begin(), data.end(), g);
        const auto permuted = nadaraya_watson(data, grid, h);
        for (std::size_t i = 0; i < est.size(); ++i) {
            CHECK(est[i].y >= lo - 1e-9);
            CHECK(est[i].y <= hi + 1e-9);
            CHECK(permuted[i].y == doctest::Approx(est[i].y).epsilon(1e-9));
        }
    }
}

TEST_CASE("silverman bandwidth") {
    std::vector<double> xs(100);
    for (int i = 0; i < 100; ++i) xs[static_cast<std::size_t>(i)] = i + 1;
    // 1.06 * stdev(1..100) * 100^-0.2, evaluated independently in Python.
    CHECK(silverman_bandwidth(xs) == doctest::Approx(12.242663963097112).epsilon(1e-12));
    auto scaled = xs;
    for (auto& x : scaled) x *= 3.5;
    CHECK(silverman_bandwidth(scaled) == doctest::Approx(3.5 * silverman_bandwidth(xs)).epsilon(1e-12));
    CHECK_THROWS_AS((void)silverman_bandwidth(std::vector<double>{2, 2, 2}), ValueError);
    CHECK_THROWS_AS((void)silverman_bandwidth(std::vector<double>{2}), ValueError);
}

TEST_CASE("bootstrap_ci degenerate and binomial cases") {
    RandomSource rng(42, 0);
    const std::vector<double> same(37, 0.1);
    const auto d = bootstrap_ci(same, 0.95, 500, rng);
    CHECK(d.lower == 0.1);
    CHECK(d.upper == 0.1);

    std::vector<double> coin;
    for (int i = 0; i < 500; ++i) {
        coin.push_back(0.0);
        coin.push_back(1.0);
    }
    RandomSource rng2(42, 1);
    const auto ci = bootstrap_ci(coin, 0.95, 2000, rng2);
    CHECK(ci.lower >= 0.45);
    CHECK(ci.upper <= 0.55);
    CHECK(ci.lower <= 0.5);
    CHECK(ci.upper >= 0.5);
    // sd of the mean is 0.5/sqrt(1000) ~ 0.0158, so the half width is ~0.031.
    CHECK(ci.upper - ci.lower == doctest::Approx(2 * 1.96 * 0.5 / std::sqrt(1000.0)).epsilon(0.15));
    CHECK(ci.resamples == 2000);
    CHECK(ci.level == 0.95);
}

TEST_CASE("bootstrap_ci errors") {
    RandomSource rng(1, 1);
    CHECK_THROWS_AS((void)bootstrap_ci(std::vector<double>{}, 0.95, 10, rng), ValueError);
    const std::vector<double> v = {1.0, 2.0};
    CHECK_THROWS_AS((void)bootstrap_ci(v, 1.0, 10, rng), ValueError);
    CHECK_THROWS_AS((void)bootstrap_ci(v, 0.0, 10, rng), ValueError);
    CHECK_THROWS_AS((void)bootstrap_ci(v, 0.9, 0, rng), ValueError);
}

TEST_CASE("property: bootstrap intervals are deterministic and nested across levels") {
    std::mt19937_64 g(77);
    std::normal_distribution<double> nd(0.4, 0.2);
    for (std::uint64_t trial = 0; trial < 1000; ++trial) {
        std::vector<double> values(2 + g() % 30);
        for (auto& v : values) v = nd(g);
        RandomSource a(trial, 0), b(trial, 0), c(trial, 0);
        const auto wide = bootstrap_ci(values, 0.95, 200, a);
        const auto again = bootstrap_ci(values, 0.95, 200, b);
        const auto narrow = bootstrap_ci(values, 0.80, 200, c);
        CHECK(wide.lower == again.lower);
        CHECK(wide.upper == again.upper);
        CHECK(wide.lower <= narrow.lower);
        CHECK(narrow.upper <= wide.upper);
        CHECK(narrow.lower <= narrow.upper);
    }
}

TEST_CASE("quantile interpolation") {
    const std::vector<double> v = {1, 2, 3, 4};
    CHECK(quantile_sorted(v, 0.0) == 1.0);
    CHECK(quantile_sorted(v, 1.0) == 4.0);
    CHECK(quantile_sorted(v, 0.5) == 2.5);
    CHECK(sample_stddev(std::vector<double>{5}) == 0.0);
}
