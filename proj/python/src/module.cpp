// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wfa/approx.hpp"
#include "wfa/error.hpp"
#include "wfa/gram.hpp"
#include "wfa/hankel.hpp"
#include "wfa/io.hpp"
#include "wfa/minimize.hpp"
#include "wfa/sva.hpp"
#include "wfa/wfa.hpp"

namespace py = pybind11;
using namespace wfa;

namespace {

NumericOptions numeric(std::optional<double> tol) {
  NumericOptions o;
  if (tol) o.rel_cutoff = *tol;
  return o;
}

SvaOptions sva_options(const std::string& gram, std::optional<double> tol) {
  return SvaOptions{parse_gram_method(gram), numeric(tol)};
}

// Reports cross the boundary as their JSON text; the Python side parses it.
std::string report_text(const io::Json& j) { return io::dump(j); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weighted finite automata: minimization, spectral form, truncation bounds.";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result(
      [&]() { return py::exception<Error>(m, "WfaError", PyExc_ValueError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = std::string(to_string(e.kind())) + ": " + e.what();
      py::set_error(error.get_stored(), msg.c_str());
    }
  });

  py::class_<Wfa>(m, "Wfa")
      .def(py::init([](std::vector<std::string> symbols, Vector initial, Vector final,
                       std::vector<Matrix> transitions) {
             return Wfa(Alphabet(std::move(symbols)), std::move(initial), std::move(final),
                        std::move(transitions));
           }),
           py::arg("symbols"), py::arg("initial"), py::arg("final"), py::arg("transitions"))
      .def_property_readonly("symbols", [](const Wfa& w) { return w.alphabet().symbols(); })
      .def_property_readonly("states", &Wfa::states)
      .def_property_readonly("initial", &Wfa::initial)
      .def_property_readonly("final", &Wfa::final)
      .def_property_readonly("transitions", &Wfa::transitions)
      .def("__call__", [](const Wfa& w, const std::string& s) { return evaluate(w, s); })
      .def("__repr__", [](const Wfa& w) {
        return "<Wfa states=" + std::to_string(w.states()) +
               " symbols=" + std::to_string(w.symbols()) + ">";
      });

  py::class_<SvaForm>(m, "SvaForm")
      .def_readonly("wfa", &SvaForm::wfa)
      .def_readonly("singular_values", &SvaForm::singular_values)
      .def("__repr__", [](const SvaForm& s) {
        return "<SvaForm states=" + std::to_string(s.wfa.states()) + ">";
      });

  m.def("evaluate", py::overload_cast<const Wfa&, std::string_view>(&evaluate), py::arg("wfa"),
        py::arg("word"), "f(word) for a whitespace-separated word.");
  m.def("minimize", [](const Wfa& w, std::optional<double> tol) { return minimize(w, numeric(tol)); },
        py::arg("wfa"), py::arg("tol") = py::none());
  m.def("rank", [](const Wfa& w, std::optional<double> tol) { return rank(w, numeric(tol)); },
        py::arg("wfa"), py::arg("tol") = py::none());
  m.def("conjugate",
        [](const Wfa& w, const Matrix& q) { return conjugate(w, q); }, py::arg("wfa"),
        py::arg("q"));
  m.def("direct_sum", &direct_sum, py::arg("a"), py::arg("b"), py::arg("negate_b") = false);
  m.def("hadamard_product", &hadamard_product, py::arg("a"), py::arg("b"));
  m.def("grams",
        [](const Wfa& w, const std::string& method) {
          const GramPair g = compute_grams(w, parse_gram_method(method));
          return py::make_tuple(g.gp, g.gs);
        },
        py::arg("wfa"), py::arg("method") = "auto",
        "Returns (forward Gram, backward Gram).");
  m.def("compute_sva",
        [](const Wfa& w, const std::string& gram, std::optional<double> tol) {
          return compute_sva(w, sva_options(gram, tol));
        },
        py::arg("wfa"), py::arg("gram") = "auto", py::arg("tol") = py::none());
  m.def("hankel_singular_values",
        [](const Wfa& w, const std::string& gram, std::optional<double> tol) {
          return hankel_singular_values(w, sva_options(gram, tol));
        },
        py::arg("wfa"), py::arg("gram") = "auto", py::arg("tol") = py::none());
  m.def("sva_truncate", &sva_truncate, py::arg("sva"), py::arg("n_hat"));
  m.def("l2_distance_sq", &l2_distance_sq, py::arg("a"), py::arg("b"));
  m.def("_truncation_bound",
        [](const SvaForm& s, Eigen::Index n_hat) {
          return report_text(io::to_json(truncation_bound(s, n_hat)));
        },
        py::arg("sva"), py::arg("n_hat"));
  m.def("_sandwich_report",
        [](const SvaForm& s, Eigen::Index n_hat, double p) {
          return report_text(io::to_json(sandwich_report(s, n_hat, p)));
        },
        py::arg("sva"), py::arg("n_hat"), py::arg("p"));
  m.def("_load",
        [](const std::string& path, bool strict) -> py::object {
          io::LoadOptions o;
          o.strict = strict;
          io::Document d = io::load(path, o);
          if (auto* w = std::get_if<Wfa>(&d)) return py::cast(std::move(*w));
          return py::cast(std::get<SvaForm>(std::move(d)));
        },
        py::arg("path"), py::arg("strict") = false);
  m.def("save", py::overload_cast<const std::string&, const Wfa&>(&io::save), py::arg("path"),
        py::arg("wfa"));
  m.def("save", py::overload_cast<const std::string&, const SvaForm&>(&io::save),
        py::arg("path"), py::arg("sva"));
  m.def("to_json", [](const Wfa& w) { return report_text(io::to_json(w)); });
  m.def("to_json", [](const SvaForm& s) { return report_text(io::to_json(s)); });
}
