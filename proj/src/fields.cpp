#include "moyal/fields.hpp"

#include <cmath>

#include "moyal/field_io.hpp"

namespace moyal {

SymbolField gaussian(const PhaseGrid& grid, const std::vector<double>& center, double width, cplx c) {
  if (static_cast<int>(center.size()) != grid.axes()) throw DimensionMismatch("Gaussian centre has the wrong dimension");
  double s = 2.0 * width * width;
  return SymbolField::from_function(grid, [&](const std::vector<double>& z) {
    double r = 0.0;
    for (std::size_t a = 0; a < z.size(); ++a) r += (z[a] - center[a]) * (z[a] - center[a]);
    return c * std::exp(-r / s);
  });
}

SymbolField gauss0(const PhaseGrid& grid) {
  return gaussian(grid, std::vector<double>(static_cast<std::size_t>(grid.axes()), 0.0), 1.0);
}

SymbolField idempotent_gaussian(const PhaseGrid& grid) {
  return gaussian(grid, std::vector<double>(static_cast<std::size_t>(grid.axes()), 0.0), std::sqrt(0.5),
                  std::pow(2.0, grid.n()));
}

FieldSource::FieldSource(const PhaseGrid& grid, std::uint64_t seed) : grid_(grid), rng_(seed) {}

double FieldSource::uniform(double lo, double hi) {
  // Explicit formula: std::uniform_real_distribution is not reproducible across libraries.
  double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

PhasePoint FieldSource::random_point(int max_steps) {
  std::vector<int> steps(static_cast<std::size_t>(grid_.axes()));
  for (auto& s : steps) s = static_cast<int>(rng_() % static_cast<std::uint64_t>(2 * max_steps + 1)) - max_steps;
  return grid_point_at_steps(grid_, steps);
}

SymbolField FieldSource::next() {
  int reach = std::max(0, static_cast<int>(std::floor(0.9 / grid_.delta())));
  SymbolField f(grid_);
  for (int t = 0; t < 3; ++t) {
    PhasePoint c = random_point(reach);
    double phase = uniform(0.0, 2.0 * kPi);
    f = f + gaussian(grid_, c.coords, 1.0, std::polar(1.0, phase));
  }
  return f;
}

std::vector<SymbolField> FieldSource::take(int count) {
  std::vector<SymbolField> out;
  for (int i = 0; i < count; ++i) out.push_back(next());
  return out;
}

std::vector<std::string> builtin_windows() { return {"gauss0", "idempotent"}; }

Window resolve_window(const CompositionLaw& law, const PhaseGrid& grid, const std::string& id) {
  if (id == "gauss0") return make_window(law, gauss0(grid), "gauss0");
  if (id == "idempotent") {
    if (law.name == "weyl" || law.name == "weyl-direct") return idempotent_window(grid);
    Window w = make_window(law, idempotent_gaussian(grid), "idempotent");
    if (!(w.idempotency_defect <= 1e-5)) throw IdempotencyFailure(w.idempotency_defect, 1e-5);
    return w;
  }
  SymbolField h = read_symbol(id);
  require_same_grid(h.grid(), grid);
  return make_window(law, h, id);
}

}  // namespace moyal
