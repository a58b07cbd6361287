#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "listfair/dataset.hpp"
#include "listfair/error.hpp"

using namespace listfair;
using listfair::testing::TempDir;
using listfair::testing::write_file;
using listfair::testing::read_file;

namespace {

NameDataset parse(const std::string& text) {
    std::istringstream in(text);
    return parse_canonical(in, "t", "test.csv");
}

}  // namespace

TEST_CASE("load_canonical derives counts and demographics") {
    const auto ds = parse("name,gender,count\nMaria,F,100\nJoão,M,50\n");
    CHECK(ds.total_count() == 150);
    CHECK(ds.female_count() == 100);
    CHECK(ds.male_count() == 50);
    CHECK(demographics(ds).perc_f_dataset == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(ds.records()[1].name == "João");
}

TEST_CASE("unisex names are one record per gender") {
    const auto ds = parse("name,gender,count\nAlex,F,10\nAlex,M,7\n");
    CHECK(ds.records().size() == 2);
    CHECK(ds.female_count() == 10);
}

TEST_CASE("canonical loader rejects bad input") {
    CHECK_THROWS_AS(parse("name,gender,count\nAna,F,0\n"), ValueError);
    CHECK_THROWS_AS(parse("name,gender,count\nAna,F,-3\n"), ValueError);
    CHECK_THROWS_AS(parse("name,gender,count\nAna,F,2.5\n"), ValueError);
    CHECK_THROWS_AS(parse("name,sex,count\nAna,F,1\n"), FormatError);
    CHECK_THROWS_AS(parse(""), FormatError);
    CHECK_THROWS_AS(parse("name,gender,count\nAna,X,1\n"), FormatError);
    CHECK_THROWS_AS(parse("name,gender,count\nAna,F\n"), FormatError);
    CHECK_THROWS_AS(parse("name,gender,count\nAna,F,1\nAna,f,2\n"), DuplicateError);
    CHECK_THROWS_AS(parse("name,gender,count\n\xC3\x28,F,1\n"), FormatError);
    CHECK_THROWS_AS(parse("name,gender,count\n"), ValueError);  // empty total

    try {
        parse("name,gender,count\nAna,F,1\nBia,F,zero\n");
        FAIL("expected ValueError");
    } catch (const ValueError& e) {
        CHECK(std::string(e.what()).find("test.csv:3") != std::string::npos);
    }
}

TEST_CASE("canonical loader accepts CRLF, BOM, lowercase gender and quoted commas") {
    const auto ds = parse("\xEF\xBB\xBFname,gender,count\r\n\"Smith, Jr\",m,3\r\nEve,f,1\r\n");
    REQUIRE(ds.records().size() == 2);
    CHECK(ds.records()[0].name == "Smith, Jr");
    CHECK(ds.records()[0].gender == Gender::male);
}

TEST_CASE("demographics edge cases") {
    const NameDataset all_f("f", {{"Ana", Gender::female, 9}});
    CHECK(demographics(all_f).perc_f_dataset == 1.0);
    CHECK(demographics(all_f).perc_m_dataset == 0.0);
    const NameDataset quarter("q", {{"Ana", Gender::female, 1}, {"Rui", Gender::male, 3}});
    CHECK(demographics(quarter).perc_f_dataset == 0.25);
    const NameDataset brazil("BR", {{"F", Gender::female, 33112101}, {"M", Gender::male, 42986632}});
    CHECK(demographics(brazil).perc_f_dataset == doctest::Approx(0.435).epsilon(0.002));
}

TEST_CASE("property: canonical round trip and demographics consistency") {
    std::mt19937_64 g(11);
    const std::vector<std::string> pool = {"Ana", "José", "Chloé", "Smith, Jr", "O'Neil", "Zoë", "Li", "Ávila"};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<NameRecord> records;
        for (const auto& name : pool) {
            for (Gender gender : {Gender::female, Gender::male}) {
                if (g() % 2) records.push_back({name, gender, 1 + g() % 100000});
            }
        }
        if (records.empty()) records.push_back({"Ana", Gender::female, 1});
        const NameDataset ds("rt", records);
        std::ostringstream out;
        write_canonical(ds, out);
        std::istringstream in(out.str());
        const auto back = parse_canonical(in, "rt");
        CHECK(std::equal(ds.records().begin(), ds.records().end(), back.records().begin(), back.records().end()));
        const double f = demographics(ds).perc_f_dataset;
        CHECK(std::abs(f * static_cast<double>(ds.total_count()) - static_cast<double>(ds.female_count())) <= 0.5);
        CHECK(demographics(ds).perc_f_dataset + demographics(ds).perc_m_dataset == doctest::Approx(1.0));
    }
}

TEST_CASE("SSA year files merge across years") {
    TempDir dir("ssa");
    write_file(dir / "yob2000.txt", "Emily,F,25953\r\nAnna,F,3\r\nJacob,M,34471\r\n");
    write_file(dir / "yob2001.txt", "Anna,F,4\nJacob,M,1\nAnna,M,5\n");
    const auto ds = load_ssa_yearfiles(dir.path(), {2000, 2001});
    const auto recs = ds.records();
    const auto anna = std::find_if(recs.begin(), recs.end(),
                                   [](const NameRecord& r) { return r.name == "Anna" && r.gender == Gender::female; });
    REQUIRE(anna != recs.end());
    CHECK(anna->count == 7);
    CHECK(ds.total_count() == 25953 + 7 + 34472 + 5);
    CHECK(std::is_sorted(recs.begin(), recs.end(), [](const NameRecord& a, const NameRecord& b) {
        return std::tie(a.name, a.gender) < std::tie(b.name, b.gender);
    }));

    // Result is independent of which year is read first.
    const auto single = load_ssa_yearfiles(dir.path(), {2001, 2001});
    TempDir swapped("ssa2");
    write_file(swapped / "yob2000.txt", read_file(dir / "yob2001.txt"));
    write_file(swapped / "yob2001.txt", read_file(dir / "yob2000.txt"));
    const auto ds2 = load_ssa_yearfiles(swapped.path(), {2000, 2001});
    CHECK(std::equal(recs.begin(), recs.end(), ds2.records().begin(), ds2.records().end()));
}

TEST_CASE("SSA loader errors") {
    TempDir dir("ssa-err");
    try {
        (void)load_ssa_yearfiles(dir.path(), {1999, 2000});
        FAIL("expected MissingFileError");
    } catch (const MissingFileError& e) {
        CHECK(std::string(e.what()).find("1999 2000") != std::string::npos);
    }
    write_file(dir / "yob1999.txt", "Ann,F,5\nBob;M;7\n");
    try {
        (void)load_ssa_yearfiles(dir.path(), {1999, 1999});
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("yob1999.txt:2") != std::string::npos);
    }
}
