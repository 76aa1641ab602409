#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "moyal/grid.hpp"
#include "moyal/laws.hpp"
#include "moyal/modulation.hpp"

namespace moyal {

// c * exp(-|Z - center|^2 / (2 width^2)).
SymbolField gaussian(const PhaseGrid& grid, const std::vector<double>& center, double width, cplx c = 1.0);

// exp(-|Z|^2 / 2).
SymbolField gauss0(const PhaseGrid& grid);

// 2^n exp(-|Z|^2).
SymbolField idempotent_gaussian(const PhaseGrid& grid);

// Sum of three unit-width Gaussians centred on random grid points within
// 0.9 of the origin, with random unit-modulus coefficients.
class FieldSource {
 public:
  FieldSource(const PhaseGrid& grid, std::uint64_t seed);

  SymbolField next();
  std::vector<SymbolField> take(int count);
  double uniform(double lo, double hi);
  PhasePoint random_point(int max_steps);

 private:
  PhaseGrid grid_;
  std::mt19937_64 rng_;
};

std::vector<std::string> builtin_windows();

// "gauss0", "idempotent", or a path to a symbol field file.
Window resolve_window(const CompositionLaw& law, const PhaseGrid& grid, const std::string& id);

}  // namespace moyal
