#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "motifvar/cluster.hpp"
#include "motifvar/error.hpp"
#include "motifvar/features.hpp"
#include "motifvar/io.hpp"
#include "motifvar/motif.hpp"
#include "motifvar/pipeline.hpp"
#include "motifvar/sax.hpp"
#include "motifvar/synth.hpp"
#include "motifvar/validity.hpp"

namespace py = pybind11;
using namespace motifvar;

namespace {

FeatureMatrix to_matrix(const std::vector<std::vector<double>>& rows) {
  std::vector<std::string> ids, columns;
  for (std::size_t i = 0; i < rows.size(); ++i) ids.push_back(std::to_string(i));
  for (std::size_t h = 0; h < (rows.empty() ? 0 : rows.front().size()); ++h) columns.push_back("x" + std::to_string(h));
  return FeatureMatrix(ids, columns, rows);
}

Partition to_partition(const std::vector<int>& labels) {
  Partition p;
  p.labels = labels;
  for (std::size_t i = 0; i < labels.size(); ++i) p.ids.push_back(std::to_string(i));
  for (int l : labels) p.k = std::max(p.k, l);
  return p;
}

Partition cluster(const std::vector<std::vector<double>>& rows, const std::string& algorithm, int k,
                  std::uint64_t seed, bool normalize) {
  auto matrix = to_matrix(rows);
  if (normalize) matrix = minmax_normalize(matrix);
  SuiteOptions options;
  options.algorithms = {algorithm};
  auto result = run_suite(matrix, k, seed, options);
  if (!result.failures.empty()) throw config_error(result.failures.begin()->second);
  return std::move(result.partitions.front());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Household variability from recurring consumption motifs";

  static py::exception<Error> error(m, "MotifvarError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (e.category() + ": " + e.what()).c_str());
    }
  });

  m.def("breakpoints", &breakpoints, py::arg("alphabet_size"));
  m.def(
      "symbolize_window",
      [](const std::vector<double>& values, int alphabet_size, double noise_floor) -> std::optional<std::string> {
        const auto word = symbolize_window(values, breakpoints(alphabet_size), noise_floor);
        if (!word) return std::nullopt;
        return word->str();
      },
      py::arg("values"), py::arg("alphabet_size") = 5, py::arg("noise_floor") = 100.0);

  py::class_<Partition>(m, "Partition")
      .def_readonly("algorithm", &Partition::algorithm)
      .def_readonly("labels", &Partition::labels)
      .def_readonly("k", &Partition::k)
      .def_readonly("centers", &Partition::centers)
      .def_readonly("memberships", &Partition::memberships)
      .def_readonly("trace", &Partition::trace)
      .def_readonly("parameters", &Partition::parameters);

  m.def("cluster", &cluster, py::arg("rows"), py::arg("algorithm"), py::arg("k"), py::arg("seed") = 1,
        py::arg("normalize") = true, "Partition rows with one of kmeans, fuzzy, som, hier, rfpam.");

  m.def(
      "corrected_rand", [](const std::vector<int>& a, const std::vector<int>& b) { return corrected_rand(a, b); },
      py::arg("a"), py::arg("b"));
  m.def(
      "mia",
      [](const std::vector<std::vector<double>>& rows, const std::vector<int>& labels, bool raw) {
        return mia(to_partition(labels), to_matrix(rows), raw ? MiaForm::raw : MiaForm::normalized);
      },
      py::arg("rows"), py::arg("labels"), py::arg("raw") = false);
  m.def(
      "cdi",
      [](const std::vector<std::vector<double>>& rows, const std::vector<int>& labels) {
        return cdi(to_partition(labels), to_matrix(rows));
      },
      py::arg("rows"), py::arg("labels"));

  m.def(
      "generate",
      [](const std::string& scenario_text) {
        std::istringstream in(scenario_text);
        const auto out = generate(parse_scenario(in));
        std::ostringstream csv;
        write_readings_csv(csv, out.readings);
        std::map<std::string, std::string> truth;
        for (const auto& t : out.truth) truth[t.household_id] = t.archetype;
        return py::make_tuple(csv.str(), truth);
      },
      py::arg("scenario_text"), "Returns (readings CSV text, {household_id: archetype}).");

  m.def(
      "run_pipeline",
      [](const std::string& config_json) {
        const auto config = run_config_from_json(nlohmann::json::parse(config_json));
        py::gil_scoped_release release;
        run_pipeline(config);
      },
      py::arg("config_json"));
  m.def(
      "default_config", [] { return to_json(RunConfig{}).dump(); }, "Default settings as JSON text.");
}
