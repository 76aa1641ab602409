// Targets the grid cannot reach; each case states the target tolerance as is.
#include <cmath>

#include "doctest.h"
#include "moyal/fields.hpp"
#include "moyal/magnetic.hpp"
#include "moyal/modulation.hpp"

using namespace moyal;

TEST_CASE("closed_form_n16") {
  PhaseGrid g(1, 16);
  CompositionLaw law = weyl_law();
  SymbolField f = FieldSource(g, 1).next();
  Window h = make_window(law, gauss0(g), "gauss0");
  double d = relative_difference(mod_map(law, f, h, ModMapPath::ClosedForm), mod_map(law, f, h, ModMapPath::Generic));
  MESSAGE("closed form vs generic: " << d);
  CHECK(d <= 1e-6);
}

TEST_CASE("stft_threshold_1e8") {
  PhaseGrid g(1, 32);
  CompositionLaw law = weyl_law();
  SymbolField h = gauss0(g);
  SymbolField f = FieldSource(g, 2).next();
  DoubleField M = mod_map(law, f, make_window(law, h, "gauss0"));
  DoubleField V = stft_remapped(f, h);
  double mx = 0.0;
  for (auto v : V.values()) mx = std::max(mx, std::abs(v));
  double s = 0, s2 = 0;
  int count = 0;
  for (std::size_t i = 0; i < V.size(); ++i) {
    if (std::abs(V.values()[i]) <= 1e-8 * mx) continue;
    double r = std::abs(M.values()[i]) / std::abs(V.values()[i]);
    s += r;
    s2 += r * r;
    ++count;
  }
  double mean = s / count, sd = std::sqrt(std::max(0.0, s2 / count - mean * mean));
  MESSAGE("ratio spread over |V| > 1e-8 max: " << sd);
  CHECK(sd <= 1e-3);
}

TEST_CASE("idempotent_window_n16") {
  Window w = idempotent_window(PhaseGrid(1, 16), kInf);
  MESSAGE("oracle idempotency defect at N=16: " << w.oracle_idempotency_defect);
  CHECK(w.oracle_idempotency_defect <= 1e-6);
}

TEST_CASE("magnetic_oracle_n4") {
  PhaseGrid g(2, 4);
  auto f = FieldSource(g, 3).take(2);
  MagneticSetup s = magnetic_setup("magnetic-b1");
  double d = relative_difference(magnetic_compose(s.field, s.gauges.front().second, f[0], f[1]),
                                 magnetic_compose_direct(s.field, f[0], f[1]));
  MESSAGE("fast vs quadrature at N=4: " << d);
  CHECK(d <= 1e-3);
}

TEST_CASE("magnetic_aut_n6") {
  PhaseGrid g(2, 6);
  SymbolField f = FieldSource(g, 4).next();
  MagneticSetup s = magnetic_setup("magnetic-b1");
  PhasePoint Z = grid_point_at_steps(g, {1, 0, 0, -1});
  double d = relative_difference(magnetic_theta(s.field, Z, f), theta_translate(magnetic_law("magnetic-b1"), f, Z));
  MESSAGE("aut route vs e_{-Z} # f # e_Z at N=6: " << d);
  CHECK(d <= 1e-3);
}
