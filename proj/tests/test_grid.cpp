#include <cmath>

#include "doctest.h"
#include "moyal/fields.hpp"
#include "moyal/grid.hpp"

using namespace moyal;

TEST_CASE("grid geometry") {
  PhaseGrid g(1, 16);
  CHECK(g.delta() == doctest::Approx(std::sqrt(2 * kPi / 16)).epsilon(1e-15));
  CHECK(g.coordinate(8) == 0.0);
  CHECK(g.coordinate(0) == doctest::Approx(-8 * g.delta()));
  CHECK(g.pairing_weight() == doctest::Approx(1.0 / 16));
  CHECK(g.size() == 256);
  CHECK(g.config_size() == 16);
  CHECK(g.flat({3, 5}) == 3 * 16 + 5);
  CHECK(g.multi_index(53) == std::vector<int>{3, 5});
  CHECK(make_grid(2, 6).size() == 1296);
}

TEST_CASE("grid rejects bad sizes") {
  CHECK_THROWS_AS(PhaseGrid(1, 15), GridError);
  CHECK_THROWS_AS(PhaseGrid(0, 16), GridError);
  CHECK_THROWS_AS(PhaseGrid(1, 2), GridError);
}

TEST_CASE("grid points wrap on the torus") {
  PhaseGrid g(1, 8);
  PhasePoint X = grid_point_at_steps(g, {3, -2});
  PhasePoint Y = grid_point_at_steps(g, {2, 1});
  PhasePoint S = add(g, X, Y);
  CHECK(steps_of(g, S) == std::vector<int>{-3, -1});
  CHECK(steps_of(g, subtract(g, S, Y)) == steps_of(g, X));
  CHECK(steps_of(g, negate(g, origin(g))) == std::vector<int>{0, 0});
  CHECK_THROWS_AS(plane_wave(g, off_grid_point({0.1, 0.2})), NonGridPoint);
}

TEST_CASE("symplectic form is antisymmetric") {
  PhasePoint X = off_grid_point({1.0, 2.0, -0.5, 0.25});
  PhasePoint Y = off_grid_point({0.3, -1.0, 2.0, 1.5});
  CHECK(symplectic_form(X, Y) == doctest::Approx(-symplectic_form(Y, X)));
  CHECK(symplectic_form(X, X) == 0.0);
  // y.xi - x.eta
  CHECK(symplectic_form(X, Y) == doctest::Approx(0.3 * -0.5 + -1.0 * 0.25 - (1.0 * 2.0 + 2.0 * 1.5)));
}

TEST_CASE("pairing of the unit Gaussian") {
  // (2 pi)^{-n} int exp(-|Z|^2) dZ = 2^{-n}
  for (int n : {1, 2}) {
    PhaseGrid g(n, n == 1 ? 32 : 24);
    CHECK(pair(gauss0(g), gauss0(g)).real() == doctest::Approx(std::pow(0.5, n)).epsilon(1e-12));
  }
}

TEST_CASE("Fourier transform fixes the unit Gaussian") {
  PhaseGrid g(1, 48);
  CHECK(relative_difference(symplectic_fourier(gauss0(g)), gauss0(g)) < 1e-12);
}

TEST_CASE("Fourier transform of a plane wave is a Dirac mass") {
  PhaseGrid g(1, 16);
  for (auto steps : {std::vector<int>{0, 0}, {3, -5}, {-8, 7}}) {
    PhasePoint X = grid_point_at_steps(g, steps);
    CHECK(relative_difference(symplectic_fourier(plane_wave(g, X)), delta_field(g, X)) < 1e-12);
  }
}

TEST_CASE("Fourier transform is an involution and unitary") {
  for (int n : {1, 2}) {
    PhaseGrid g(n, n == 1 ? 16 : 6);
    FieldSource src(g, 3);
    for (int k = 0; k < 5; ++k) {
      SymbolField f = src.next(), h = src.next();
      CHECK(relative_difference(symplectic_fourier(symplectic_fourier(f)), f) < 1e-12);
      cplx a = hermitian_pair(symplectic_fourier(f), symplectic_fourier(h));
      CHECK(std::abs(a - hermitian_pair(f, h)) < 1e-12 * (std::abs(hermitian_pair(f, h)) + f.norm() * h.norm()));
    }
  }
}

TEST_CASE("translations shift values") {
  PhaseGrid g(1, 8);
  SymbolField f = FieldSource(g, 5).next();
  PhasePoint Z = grid_point_at_steps(g, {2, -1});
  SymbolField t = translate(f, Z);
  PhasePoint X = grid_point_at_steps(g, {1, 1});
  CHECK(std::abs(t.at(X) - f.at(subtract(g, X, Z))) == 0.0);
  CHECK(relative_difference(translate(t, negate(g, Z)), f) == 0.0);
}

TEST_CASE("fractional shift by whole steps matches translation") {
  PhaseGrid g(1, 16);
  SymbolField f = FieldSource(g, 9).next();
  PhasePoint Z = grid_point_at_steps(g, {2, -3});
  SymbolField t(g, fractional_shift(g, f.values(), {-2.0, 3.0}));
  CHECK(relative_difference(t, translate(f, Z)) < 1e-12);
}

TEST_CASE("random fields are reproducible Gaussian mixtures") {
  PhaseGrid g(1, 32);
  auto a = FieldSource(g, 7).take(3);
  auto b = FieldSource(g, 7).take(3);
  for (int k = 0; k < 3; ++k) CHECK(a[k].values() == b[k].values());
  CHECK(a[0].values() != a[1].values());
  // Centres within 0.9 of the origin, unit width: exp(-(7.09 - 0.9)^2 / 2) at the edge.
  double edge = 0.0;
  for (int j = 0; j < 32; ++j) {
    edge = std::max(edge, std::abs(a[0][g.flat({0, j})]));
    edge = std::max(edge, std::abs(a[0][g.flat({j, 0})]));
  }
  CHECK(edge < 1e-8);
}
