#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "moyal/field_io.hpp"
#include "moyal/fields.hpp"
#include "moyal/magnetic.hpp"
#include "moyal/modulation.hpp"
#include "moyal/verify.hpp"

namespace py = pybind11;
using namespace moyal;

namespace {

using Array = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

// Symbols are arrays of shape (N,) * 2n, axes x_1..x_n, xi_1..xi_n.
PhaseGrid grid_of(const Array& a) {
  if (a.ndim() % 2 != 0 || a.ndim() == 0) throw DimensionMismatch("symbol arrays need 2n axes");
  auto N = a.shape(0);
  for (py::ssize_t k = 1; k < a.ndim(); ++k)
    if (a.shape(k) != N) throw GridError("symbol arrays must have equal axes");
  return PhaseGrid(static_cast<int>(a.ndim() / 2), static_cast<int>(N));
}

SymbolField to_field(const Array& a) {
  PhaseGrid g = grid_of(a);
  return SymbolField(g, std::vector<cplx>(a.data(), a.data() + a.size()));
}

Array to_array(const SymbolField& f) {
  std::vector<py::ssize_t> shape(static_cast<std::size_t>(f.grid().axes()), f.grid().N());
  Array out(shape);
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

Array to_array(const DoubleField& F) {
  auto side = static_cast<py::ssize_t>(F.side());
  Array out({side, side});
  std::copy(F.values().begin(), F.values().end(), out.mutable_data());
  return out;
}

Window window_for(const CompositionLaw& law, const PhaseGrid& grid, const py::object& w) {
  if (py::isinstance<py::str>(w)) return resolve_window(law, grid, w.cast<std::string>());
  SymbolField h = to_field(w.cast<Array>());
  require_same_grid(h.grid(), grid);
  return make_window(law, h, "array");
}

CompositionLaw law_on(const std::string& name, const PhaseGrid& grid) {
  CompositionLaw law = find_law(name);
  require_law_grid(law, grid);
  return law;
}

}  // namespace

PYBIND11_MODULE(_moyal, m) {
  m.doc() = "Discrete symbol calculus on phase-space tori";

  auto base = py::register_exception<Error>(m, "MoyalError");
  py::register_exception<GridError>(m, "GridError", base.ptr());
  py::register_exception<GridMismatch>(m, "GridMismatch", base.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
  py::register_exception<SizeGuard>(m, "SizeGuard", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<IdempotencyFailure>(m, "IdempotencyFailure", base.ptr());
  py::register_exception<NonGridPoint>(m, "NonGridPoint", base.ptr());

  m.def("laws", &law_names);
  m.def("check_ids", &check_registry);
  m.attr("registry_version") = kRegistryVersion;

  m.def(
      "grid_info",
      [](int n, int N) {
        PhaseGrid g(n, N);
        std::vector<double> coords(static_cast<std::size_t>(N));
        for (int j = 0; j < N; ++j) coords[static_cast<std::size_t>(j)] = g.coordinate(j);
        py::dict d;
        d["n"] = n;
        d["N"] = N;
        d["delta"] = g.delta();
        d["weight"] = g.pairing_weight();
        d["coordinates"] = coords;
        return d;
      },
      py::arg("n"), py::arg("N"));

  m.def("gauss0", [](int n, int N) { return to_array(gauss0(PhaseGrid(n, N))); }, py::arg("n"), py::arg("N"));
  m.def("idempotent_gaussian", [](int n, int N) { return to_array(idempotent_gaussian(PhaseGrid(n, N))); },
        py::arg("n"), py::arg("N"));
  m.def(
      "gaussian",
      [](int n, int N, const std::vector<double>& center, double width, cplx c) {
        return to_array(gaussian(PhaseGrid(n, N), center, width, c));
      },
      py::arg("n"), py::arg("N"), py::arg("center"), py::arg("width") = 1.0, py::arg("c") = cplx(1.0));
  m.def(
      "random_fields",
      [](int n, int N, std::uint64_t seed, int count) {
        std::vector<Array> out;
        for (const auto& f : FieldSource(PhaseGrid(n, N), seed).take(count)) out.push_back(to_array(f));
        return out;
      },
      py::arg("n"), py::arg("N"), py::arg("seed"), py::arg("count") = 1);

  m.def(
      "compose",
      [](const Array& f, const Array& g, const std::string& law) {
        SymbolField a = to_field(f), b = to_field(g);
        require_same_grid(a.grid(), b.grid());
        return to_array(law_on(law, a.grid())(a, b));
      },
      py::arg("f"), py::arg("g"), py::arg("law") = "weyl");
  m.def("symplectic_fourier", [](const Array& f) { return to_array(symplectic_fourier(to_field(f))); });
  m.def("pair", [](const Array& f, const Array& g) { return pair(to_field(f), to_field(g)); });
  m.def("crichi_defect", [](const Array& f, const Array& g, const std::string& law) {
    SymbolField a = to_field(f), b = to_field(g);
    return check_integral_identity(law_on(law, a.grid()), a, b);
  }, py::arg("f"), py::arg("g"), py::arg("law") = "weyl");

  m.def(
      "mod_map",
      [](const Array& f, const std::string& law, const py::object& window) {
        SymbolField a = to_field(f);
        CompositionLaw L = law_on(law, a.grid());
        return to_array(mod_map(L, a, window_for(L, a.grid(), window)));
      },
      py::arg("f"), py::arg("law") = "weyl", py::arg("window") = "gauss0");
  m.def("stft", [](const Array& f, const Array& h) { return to_array(stft(to_field(f), to_field(h))); });
  m.def(
      "modulation_norm",
      [](const Array& f, double p, double q, const std::string& law, const py::object& window) {
        SymbolField a = to_field(f);
        CompositionLaw L = law_on(law, a.grid());
        return modulation_norm(L, a, ModNormSpec{p, q, window_for(L, a.grid(), window)});
      },
      py::arg("f"), py::arg("p") = 2.0, py::arg("q") = 2.0, py::arg("law") = "weyl", py::arg("window") = "gauss0");
  m.def(
      "idempotent_window_defects",
      [](int N) {
        Window w = idempotent_window(PhaseGrid(1, N), kInf);
        py::dict d;
        d["algebra"] = w.idempotency_defect;
        d["quadrature"] = w.oracle_idempotency_defect;
        d["realness"] = w.realness_defect;
        d["norm2"] = w.norm2;
        return d;
      },
      py::arg("N"));

  m.def(
      "verify_json",
      [](const std::string& law, int n, int N, std::uint64_t seed) {
        CheckReport r;
        {
          py::gil_scoped_release release;
          r = run_suite(law, n, N, seed);
        }
        return report_json(r).dump();
      },
      py::arg("law"), py::arg("n"), py::arg("N"), py::arg("seed") = 7);

  m.def("read_symbol", [](const std::string& path) { return to_array(read_symbol(path)); });
  m.def("write_symbol", [](const std::string& path, const Array& f) { write_symbol(path, to_field(f)); });
}
