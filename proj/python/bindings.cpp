// Python bindings. Rationals cross the boundary as "p/q" strings and results
// as JSON text; the stunted package turns both into Python objects.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "stunted/errors.hpp"
#include "stunted/explorer.hpp"
#include "stunted/kneading.hpp"
#include "stunted/orbits.hpp"
#include "stunted/renorm.hpp"
#include "stunted/sawtooth.hpp"
#include "stunted/serialize.hpp"

namespace py = pybind11;
using namespace stunted;

namespace {

std::vector<Rat> rats(const std::vector<std::string>& xs) {
  std::vector<Rat> out;
  for (const auto& x : xs) out.push_back(Rat::parse(x));
  return out;
}

StuntedSawtoothMap make(const std::string& shape, const std::vector<std::string>& w) {
  return build_stunted(Shape::parse(shape), rats(w));
}

Budgets budgets(std::size_t max_period_exp, std::size_t tower_depth) {
  Budgets b;
  b.max_period_exp = max_period_exp;
  b.tower_depth = tower_depth;
  return b;
}

}  // namespace

PYBIND11_MODULE(_stunted, m) {
  m.doc() = "Stunted sawtooth maps in exact rational arithmetic";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ConstraintViolation>(m, "ConstraintViolation", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  m.def("describe", [](const std::string& shape, const std::vector<std::string>& w) {
    return to_json(make(shape, w)).dump();
  });
  m.def("evaluate", [](const std::string& shape, const std::vector<std::string>& w,
                       const std::string& x) { return make(shape, w)(Rat::parse(x)).str(); });
  m.def(
      "period_set",
      [](const std::string& shape, const std::vector<std::string>& w, std::size_t bound) {
        return to_json(period_set(make(shape, w).map(), bound)).dump();
      },
      py::arg("shape"), py::arg("w"), py::arg("bound"));
  m.def(
      "entropy",
      [](const std::string& shape, const std::vector<std::string>& w, const std::string& method,
         std::size_t n_max) {
        const auto f = make(shape, w).map();
        if (method == "markov") return to_json(entropy_markov(f)).dump();
        if (method == "lap") return to_json(entropy_lap(f, n_max)).dump();
        if (method == "bowen") {
          BowenOptions opts;
          opts.n_max = n_max;
          return to_json(entropy_bowen(f, opts)).dump();
        }
        throw PreconditionError("method must be markov, lap or bowen");
      },
      py::arg("shape"), py::arg("w"), py::arg("method") = "markov", py::arg("n_max") = 12);
  m.def(
      "kneading",
      [](const std::string& shape, const std::vector<std::string>& w, std::size_t depth) {
        return to_json(kneading_data(make(shape, w), depth)).dump();
      },
      py::arg("shape"), py::arg("w"), py::arg("depth"));
  m.def(
      "tower",
      [](const std::string& shape, const std::vector<std::string>& w, std::size_t depth) {
        return to_json(build_tower(make(shape, w), depth)).dump();
      },
      py::arg("shape"), py::arg("w"), py::arg("depth"));
  m.def(
      "classify",
      [](const std::string& shape, const std::vector<std::string>& w, std::size_t max_period_exp,
         std::size_t tower_depth) {
        py::gil_scoped_release release;
        return to_json(classify_escalating(make(shape, w), budgets(max_period_exp, tower_depth)))
            .dump();
      },
      py::arg("shape"), py::arg("w"), py::arg("max_period_exp") = 8, py::arg("tower_depth") = 6);
  m.def(
      "bisect",
      [](const std::string& shape, const std::vector<std::string>& lo,
         const std::vector<std::string>& hi, const std::string& tol) {
        py::gil_scoped_release release;
        ParameterLine line{Shape::parse(shape), rats(lo), rats(hi)};
        return to_json(bisect_boundary(line, Rat::parse(tol))).dump();
      },
      py::arg("shape"), py::arg("lo"), py::arg("hi"), py::arg("tol"));
}
