#include <string>
#include <tuple>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "listfair/dataset.hpp"
#include "listfair/error.hpp"
#include "listfair/experiments.hpp"
#include "listfair/metrics.hpp"
#include "listfair/ordering.hpp"
#include "listfair/random.hpp"
#include "listfair/sampling.hpp"

namespace py = pybind11;
using namespace listfair;

namespace {

using PyPerson = std::tuple<std::string, std::string>;

Gender gender_from(const std::string& s) {
    const auto g = parse_gender(s);
    if (!g) throw ValueError("gender must be F or M, got '" + s + "'");
    return *g;
}

std::vector<Individual> to_individuals(const std::vector<PyPerson>& people) {
    std::vector<Individual> out;
    out.reserve(people.size());
    for (const auto& [name, g] : people) out.push_back({name, gender_from(g)});
    return out;
}

std::vector<PyPerson> to_python(const std::vector<Individual>& people) {
    std::vector<PyPerson> out;
    out.reserve(people.size());
    for (const auto& i : people) out.emplace_back(i.name, std::string(1, gender_letter(i.gender)));
    return out;
}

std::vector<Gender> to_genders(const std::vector<std::string>& letters) {
    std::vector<Gender> out;
    out.reserve(letters.size());
    for (const auto& s : letters) out.push_back(gender_from(s));
    return out;
}

NormalizerSpec normalizer_from(const std::string& mode, double z) {
    if (mode == "theoretical") return NormalizerSpec::theoretical();
    if (mode == "fixed") return NormalizerSpec::fixed(z);
    throw ValueError("normalizer must be 'theoretical' or 'fixed'");
}

py::dict report_dict(const RndReport& r) {
    py::list checkpoints;
    for (const auto& c : r.checkpoints) checkpoints.append(c.k);
    py::dict d;
    d["checkpoints"] = checkpoints;
    d["raw"] = r.raw;
    d["z"] = r.z;
    d["mode"] = to_string(r.mode);
    d["normalized"] = r.normalized;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gender-imbalance auditing of alphabetically ordered name lists";

    // Translators run newest first, so the base class goes in before its subclasses.
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ValueError>(m, "ValueError", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<MissingFileError>(m, "MissingFileError", PyExc_FileNotFoundError);

    py::class_<NameDataset>(m, "NameDataset")
        .def_property_readonly("id", &NameDataset::id)
        .def_property_readonly("female_count", &NameDataset::female_count)
        .def_property_readonly("male_count", &NameDataset::male_count)
        .def_property_readonly("total_count", &NameDataset::total_count)
        .def_property_readonly("perc_f", [](const NameDataset& ds) { return demographics(ds).perc_f_dataset; })
        .def("__len__", [](const NameDataset& ds) { return ds.records().size(); })
        .def("records", [](const NameDataset& ds) {
            std::vector<std::tuple<std::string, std::string, std::uint64_t>> out;
            for (const auto& r : ds.records()) out.emplace_back(r.name, std::string(1, gender_letter(r.gender)), r.count);
            return out;
        });

    m.def("load_dataset", py::overload_cast<const std::filesystem::path&>(&load_canonical), py::arg("path"),
          "Load a canonical name,gender,count CSV.");

    m.def(
        "draw_sample",
        [](const NameDataset& ds, std::size_t n, std::optional<double> perc_fs, std::uint64_t seed, std::uint64_t stream) {
            SampleMode mode;
            if (perc_fs) mode = {SampleMode::Kind::stratified, *perc_fs};
            RandomSource rng(seed, stream);
            return to_python(draw_sample(ds, n, mode, rng).individuals);
        },
        py::arg("dataset"), py::arg("n"), py::arg("perc_fs") = py::none(), py::arg("seed") = 42,
        py::arg("stream") = 0,
        "Draw n individuals; proportional unless perc_fs is given. Returns (name, gender) tuples.");

    m.def("collation_key", [](const std::string& name) { return py::bytes(collation_key(name).key); },
          py::arg("name"));

    m.def(
        "sort_alphabetical",
        [](const std::vector<PyPerson>& people) {
            return to_python(sort_alphabetical(Sample{to_individuals(people), {}}).individuals);
        },
        py::arg("people"));

    m.def(
        "perc_f_curve", [](const std::vector<std::string>& genders) { return perc_f_curve(to_genders(genders)).values; },
        py::arg("genders"), "Female share of every prefix, indexed from k=1.");

    m.def(
        "rnd",
        [](const std::vector<std::string>& genders, std::size_t step, const std::string& normalizer, double z) {
            return report_dict(rnd(to_genders(genders), step, normalizer_from(normalizer, z)));
        },
        py::arg("genders"), py::arg("step") = 10, py::arg("normalizer") = "theoretical", py::arg("z") = 0.0);

    m.def("rnd_theoretical_normalizer", &rnd_theoretical_normalizer, py::arg("n"), py::arg("n_f"),
          py::arg("step") = 10);

    m.def(
        "statistical_parity",
        [](const std::vector<std::string>& genders, double perc_f_reference) {
            const auto r = statistical_parity(to_genders(genders), Demographics{perc_f_reference, 1.0 - perc_f_reference});
            py::dict d;
            d["n"] = r.n;
            d["female"] = r.female;
            d["perc_f_sample"] = r.perc_f_sample;
            d["perc_f_reference"] = r.perc_f_reference;
            d["p_value"] = r.p_value;
            d["passes"] = r.passes;
            return d;
        },
        py::arg("genders"), py::arg("perc_f_reference"));

    m.def(
        "run_experiment",
        [](const std::string& kind, const std::filesystem::path& config, const std::filesystem::path& out,
           unsigned jobs) {
            auto cfg = load_config(config);
            cfg.jobs = jobs;
            const auto result = [&] {
                py::gil_scoped_release release;
                return run_experiment(parse_experiment_kind(kind), cfg);
            }();
            write_results(result, out);
        },
        py::arg("kind"), py::arg("config"), py::arg("out"), py::arg("jobs") = 1,
        "Run percf, rnd-grid or rnd-size and write its result files into out.");
}
