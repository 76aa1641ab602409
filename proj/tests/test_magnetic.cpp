#include <cmath>

#include "doctest.h"
#include "moyal/fields.hpp"
#include "moyal/magnetic.hpp"

using namespace moyal;

TEST_CASE("polynomial arithmetic") {
  Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  Polynomial p = x * x * 3.0 + x * y - Polynomial::constant(2, 2.0);
  double at[] = {1.5, -2.0};
  CHECK(p(at) == doctest::Approx(3 * 2.25 - 3.0 - 2.0));
  CHECK(p.degree() == 2);
  CHECK(p.derivative(0)(at) == doctest::Approx(6 * 1.5 - 2.0));
  CHECK((p - p).is_zero());
  Polynomial q = Polynomial::from_json(p.to_json(), 2);
  CHECK((q - p).is_zero());
  CHECK_THROWS_AS(Polynomial::from_json(nlohmann::json::parse(R"([{"var_powers":[1],"coeff":1}])"), 2), FormatError);
}

TEST_CASE("potentials generate their fields") {
  for (const auto& name : magnetic_names()) {
    MagneticSetup s = magnetic_setup(name);
    CHECK(s.field.is_closed());
    for (const auto& [gauge, A] : s.gauges) CHECK(A.generates(s.field));
  }
  CHECK(VectorPotential::symmetric_gauge(2.0).curl().at(0, 1, std::vector<double>{0.3, 0.1}.data()) == doctest::Approx(2.0));
  CHECK(VectorPotential::landau_gauge(2.0).curl().at(1, 0, std::vector<double>{0.3, 0.1}.data()) == doctest::Approx(-2.0));
}

TEST_CASE("field JSON validation") {
  MagneticField B = magnetic_setup("magnetic-linear").field;
  MagneticField back = MagneticField::from_json(B.to_json());
  double at[] = {0.7, -0.2};
  CHECK(back.at(0, 1, at) == doctest::Approx(0.7));

  // B_12 = x_3 in three dimensions is not closed.
  auto open = nlohmann::json::parse(
      R"({"kind":"magnetic_field","n":3,"components":[{"j":0,"k":1,"terms":[{"var_powers":[0,0,1],"coeff":1}]}]})");
  CHECK_THROWS_AS(MagneticField::from_json(open), FormatError);
  auto cubic = nlohmann::json::parse(
      R"({"kind":"magnetic_field","n":2,"components":[{"j":0,"k":1,"terms":[{"var_powers":[3,0],"coeff":1}]}]})");
  CHECK_THROWS_AS(MagneticField::from_json(cubic), FormatError);

  VectorPotential A = VectorPotential::from_json(VectorPotential::symmetric_gauge(0.5).to_json());
  CHECK(A.generates(MagneticField::constant(2, 0.5)));
}

TEST_CASE("flux and circulation of simple data") {
  MagneticField B = MagneticField::constant(2, 1.5);
  std::vector<double> a{0, 0}, b{2, 0}, c{0, 1};
  CHECK(triangle_flux(B, a, b, c) == doctest::Approx(1.5 * 1.0));
  CHECK(triangle_flux(B, a, c, b) == doctest::Approx(-1.5));
  VectorPotential A = VectorPotential::landau_gauge(1.0);  // (-x2, 0)
  CHECK(circulation(A, std::vector<double>{0, 1}, std::vector<double>{2, 1}) == doctest::Approx(-2.0));
}

TEST_CASE("Stokes consistency") {
  for (const auto& name : magnetic_names())
    for (const auto& [gauge, A] : magnetic_setup(name).gauges) CHECK(check_stokes(A, 20, 7).max_defect <= 1e-12);
}

TEST_CASE("gauge changes conjugate the kernels") {
  PhaseGrid g(2, 6);
  SymbolField f = FieldSource(g, 1).next();
  double b = 0.5;
  OperatorKernel s = op_magnetic(VectorPotential::symmetric_gauge(b), f);
  OperatorKernel l = op_magnetic(VectorPotential::landau_gauge(b), f);
  // symmetric - landau = grad(b x1 x2 / 2)
  auto rho = [&](std::size_t c) {
    double x1 = g.coordinate(static_cast<int>(c / 6)), x2 = g.coordinate(static_cast<int>(c % 6));
    return 0.5 * b * x1 * x2;
  };
  double worst = 0.0;
  for (std::size_t x = 0; x < 36; ++x)
    for (std::size_t y = 0; y < 36; ++y) {
      cplx expect = std::polar(1.0, rho(x) - rho(y)) * l.matrix(x, y);
      worst = std::max(worst, std::abs(s.matrix(x, y) - expect));
    }
  CHECK(worst < 1e-12 * l.matrix.norm());
  CHECK(relative_difference(magnetic_kernel_to_symbol(VectorPotential::symmetric_gauge(b), s), f) < 1e-12);
}

TEST_CASE("gauge covariance of the product") {
  for (const auto& name : {"magnetic-b1", "magnetic-b0.5", "magnetic-linear"}) {
    PhaseGrid g(2, 8);
    auto f = FieldSource(g, 2).take(2);
    CHECK(check_gauge_covariance(magnetic_setup(name), f[0], f[1]) <= 1e-6);
  }
}

TEST_CASE("zero field reduces to the Weyl product") {
  PhaseGrid g(2, 6);
  auto f = FieldSource(g, 3).take(2);
  MagneticField B(2);
  CHECK(relative_difference(magnetic_compose(B, VectorPotential::zero(2), f[0], f[1]), weyl_compose_fast(f[0], f[1])) < 1e-12);
  CHECK(relative_difference(magnetic_compose_direct(B, f[0], f[1]), weyl_compose_direct(f[0], f[1])) < 1e-12);
  PhasePoint Z = grid_point_at_steps(g, {1, -1, 2, 0});
  CHECK(relative_difference(magnetic_theta(B, Z, f[0]), translate(f[0], negate(g, Z))) < 1e-12);
}

TEST_CASE("magnetic product matches the continuum product of Gaussians") {
  // Constant field B_12 = 1; values from exact Gaussian integration (tests/oracles).
  PhaseGrid g(2, 16);
  SymbolField f = gaussian(g, {0.3, -0.2, 0.1, 0.4}, 1.0);
  SymbolField h = gaussian(g, {-0.2, 0.3, -0.4, 0.0}, 1.0);
  SymbolField p = magnetic_compose(MagneticField::constant(2, 1.0), VectorPotential::symmetric_gauge(1.0), f, h);
  const std::pair<std::vector<int>, cplx> frozen[] = {
      {{8, 8, 8, 8}, {4.263190949295844e-01, -1.500085797225066e-02}},
      {{9, 7, 8, 9}, {1.843414997042618e-01, 1.483117446844510e-03}},
      {{7, 8, 10, 7}, {3.998417773386389e-02, -1.081780442218319e-02}},
  };
  for (const auto& [idx, v] : frozen) CHECK(std::abs(p[g.flat(idx)] - v) < 3e-4);
}

TEST_CASE("direct quadrature approaches the fast product") {
  MagneticField B = MagneticField::constant(2, 1.0);
  VectorPotential A = VectorPotential::symmetric_gauge(1.0);
  double previous = 1.0;
  for (int N : {4, 6}) {
    PhaseGrid g(2, N);
    auto f = FieldSource(g, 4).take(2);
    double d = relative_difference(magnetic_compose(B, A, f[0], f[1]), magnetic_compose_direct(B, f[0], f[1]));
    CHECK(d < previous / 2);
    previous = d;
  }
  CHECK_THROWS_AS(magnetic_compose_direct(B, gauss0(PhaseGrid(2, 8)), gauss0(PhaseGrid(2, 8))), SizeGuard);
}

TEST_CASE("magnetic law axioms") {
  PhaseGrid g(2, 6);
  CompositionLaw law = magnetic_law("magnetic-linear");
  auto f = FieldSource(g, 5).take(3);
  SymbolField one = SymbolField::constant(g, 1.0);
  CHECK(check_integral_identity(law, f[0], f[1]) < 1e-6);
  CHECK(check_cyclicity(law, f[0], f[1], f[2]) < 1e-6);
  CHECK(relative_difference(law(f[0], f[1]).conj(), law(f[1].conj(), f[0].conj())) < 1e-10);
  CHECK(relative_difference(law(law(f[0], f[1]), f[2]), law(f[0], law(f[1], f[2]))) < 1e-8);
  CHECK(relative_difference(law(one, f[0]), f[0]) < 1e-8);
  CHECK_THROWS_AS(require_law_dimension(law, PhaseGrid(1, 16)), DimensionMismatch);
  CHECK_THROWS_AS(magnetic_compose(MagneticField::constant(2, 1.0), VectorPotential::symmetric_gauge(0.5), f[0], f[1]),
                  Error);
}

TEST_CASE("magnetic translations match e_{-Z} # f # e_Z as the grid refines") {
  for (const auto& name : {"magnetic-b1", "magnetic-b0.5", "magnetic-linear"}) {
    MagneticSetup s = magnetic_setup(name);
    double previous = 1.0;
    for (int N : {8, 12, 16}) {
      PhaseGrid g(2, N);
      SymbolField f = FieldSource(g, 7).next();
      PhasePoint Z = grid_point_at_steps(g, {1, 0, 0, -1});
      double d = relative_difference(magnetic_theta(s.field, Z, f), theta_translate(magnetic_law(name), f, Z));
      CHECK_MESSAGE(d < previous / 3, name << " N=" << N << " " << d);
      previous = d;
    }
    CHECK_MESSAGE(previous < 1e-3, name);
  }
}

TEST_CASE("magnetic Hypothesis C") {
  PhaseGrid g(2, 6);
  auto f = FieldSource(g, 6).take(2);
  for (const auto& name : {"magnetic-b1", "magnetic-linear"})
    CHECK(check_magnetic_hypothesis_c(magnetic_setup(name).field, f[0], f[1]).defect <= 1e-3);
}

TEST_CASE("cocycle relation") {
  PhaseGrid g(2, 8);
  PhasePoint X = grid_point_at_steps(g, {1, 1, 0, 1});
  PhasePoint Y = grid_point_at_steps(g, {1, -1, 1, -1});
  CocycleResult zero = check_cocycle(g, MagneticField(2), VectorPotential::zero(2), X, Y);
  CHECK(zero.sharp_full < 1e-12);
  for (const auto& name : {"magnetic-b1", "magnetic-b0.5"}) {
    MagneticSetup s = magnetic_setup(name);
    CocycleResult r = check_cocycle(g, s.field, s.gauges.front().second, X, Y);
    CHECK(r.sharp_defect < 1e-12);
    CHECK(r.pointwise_defect < 1e-12);
  }
  // Odd step sums put the kernel path between grid points.
  CHECK(std::isnan(check_cocycle(g, MagneticField::constant(2, 1.0), VectorPotential::symmetric_gauge(1.0),
                                 grid_point_at_steps(g, {1, 0, 0, 0}), Y)
                       .sharp_defect));
}
