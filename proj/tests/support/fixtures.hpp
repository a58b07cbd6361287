#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "listfair/sampling.hpp"

#ifndef LISTFAIR_DATA_DIR
#error "LISTFAIR_DATA_DIR must point at the bundled data directory"
#endif

namespace listfair::testing {

inline std::filesystem::path data_dir() { return LISTFAIR_DATA_DIR; }
inline std::filesystem::path fixture_dataset() { return data_dir() / "fixture_names.csv"; }

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("listfair-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }
    [[nodiscard]] std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Individual ind(const std::string& name, char g) {
    return {name, g == 'F' ? Gender::female : Gender::male};
}

/// The 10-person random-order sample ("column A").
inline std::vector<Individual> table2_column_a() {
    return {ind("Brian", 'M'), ind("Aaron", 'M'), ind("Christina", 'F'), ind("Brian", 'M'),
            ind("Christina", 'F'), ind("Amy", 'F'), ind("Ashley", 'F'), ind("Amy", 'F'),
            ind("Andrew", 'M'), ind("Brian", 'M')};
}

/// N individuals, `women` of them at the end (or start).
inline std::vector<Individual> block_list(std::size_t n, std::size_t women, bool women_last) {
    std::vector<Individual> out;
    for (std::size_t i = 0; i < n; ++i) {
        const bool female = women_last ? i >= n - women : i < women;
        out.push_back({"P" + std::to_string(i), female ? Gender::female : Gender::male});
    }
    return out;
}

/// An SP-shaped list: `size` people, round(share*size) women, first 15 after
/// sorting all male (their names start with "Aa").
inline std::vector<Individual> sp_shaped_list(std::size_t size = 1603, std::size_t women = 497) {
    static const char* kEarlyMen[] = {"Aarão", "Aaron", "Abdias", "Abel", "Abelardo", "Abílio", "Abner",
                                      "Abraão", "Acácio", "Adailton", "Adalberto", "Adão", "Adauto",
                                      "Ademar", "Ademir"};
    static const char* kWomen[] = {"Beatriz", "Carla", "Daniela", "Elaine", "Fernanda", "Gisele", "Helena",
                                   "Ingrid", "Joana", "Karina", "Luciana", "Mariana", "Natália", "Patrícia",
                                   "Renata", "Simone", "Tatiana", "Vanessa"};
    static const char* kMen[] = {"Bruno", "Carlos", "Diego", "Eduardo", "Fábio", "Gustavo", "Hugo",
                                 "Igor", "Jorge", "Leandro", "Marcos", "Nilton", "Otávio", "Paulo",
                                 "Ricardo", "Sérgio", "Tiago", "Vítor"};
    std::vector<Individual> out;
    for (const char* n : kEarlyMen) out.push_back({n, Gender::male});
    for (std::size_t i = 0; i < women; ++i) out.push_back({kWomen[i % 18], Gender::female});
    for (std::size_t i = 0; out.size() < size; ++i) out.push_back({kMen[i % 18], Gender::male});
    // Arrival order scrambled deterministically; sorting must put the Aa-men first.
    std::mt19937 g(7);
    std::shuffle(out.begin(), out.end(), g);
    return out;
}

}  // namespace listfair::testing
