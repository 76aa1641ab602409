#include "moyal/modulation.hpp"

#include <cmath>

#include "moyal/parallel.hpp"

namespace moyal {
namespace {

using Matrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Rows are the fields e_{sign X} # f (left) or f # e_{sign X} (right) for every grid X.
Matrix plane_wave_products(const CompositionLaw& law, const SymbolField& f, int sign) {
  const PhaseGrid& grid = f.grid();
  auto side = static_cast<Eigen::Index>(grid.size());
  Matrix rows(side, side);
  parallel_for(grid.size(), [&](std::size_t x) {
    PhasePoint X = grid_point(grid, x);
    SymbolField e = plane_wave(grid, sign > 0 ? X : negate(grid, X));
    SymbolField p = law(e, f);
    for (Eigen::Index z = 0; z < side; ++z) rows(static_cast<Eigen::Index>(x), z) = p[static_cast<std::size_t>(z)];
  });
  return rows;
}

Matrix delta_products(const CompositionLaw& law, const SymbolField& f) {
  const PhaseGrid& grid = f.grid();
  auto side = static_cast<Eigen::Index>(grid.size());
  Matrix rows(side, side);
  parallel_for(grid.size(), [&](std::size_t x) {
    SymbolField p = law(delta_field(grid, grid_point(grid, x)), f);
    for (Eigen::Index z = 0; z < side; ++z) rows(static_cast<Eigen::Index>(x), z) = p[static_cast<std::size_t>(z)];
  });
  return rows;
}

DoubleField gram(const PhaseGrid& grid, const Matrix& a, const Matrix& b) {
  Matrix p = (a * b.transpose()) * grid.pairing_weight();
  return DoubleField(grid, std::vector<cplx>(p.data(), p.data() + p.size()));
}

// c(X) = sum_Z a(Z) b(Z + X) on the torus.
std::vector<cplx> correlate(const PhaseGrid& grid, std::vector<cplx> a, std::vector<cplx> b) {
  auto dims = grid.dims();
  for (int ax = 0; ax < grid.axes(); ++ax) {
    spectral::centered_dft(a, dims, ax, +1);
    spectral::centered_dft(b, dims, ax, -1);
  }
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  for (int ax = 0; ax < grid.axes(); ++ax) spectral::centered_dft(a, dims, ax, +1);
  double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& v : a) v *= scale;
  return a;
}

enum class PhaseKind { HalfSigma, MinusSigma };

// (X, Y) -> phase(X, Y) w sum_Z e^{-i sigma(Y,Z)} window(Z) f(Z + X - s Y/2),
// with s = 1 when `half_shift` is set and s = 0 otherwise.
DoubleField windowed_transform(const SymbolField& f, const std::vector<cplx>& window, bool half_shift,
                               PhaseKind kind) {
  const PhaseGrid& grid = f.grid();
  std::size_t side = grid.size();
  double w = grid.pairing_weight();
  std::vector<PhasePoint> points(side);
  for (std::size_t i = 0; i < side; ++i) points[i] = grid_point(grid, i);
  std::vector<cplx> out(side * side);
  parallel_for(side, [&](std::size_t y) {
    const PhasePoint& Y = points[y];
    std::vector<cplx> shifted = f.values();
    if (half_shift) {
      auto s = steps_of(grid, Y);
      std::vector<double> t(s.size());
      for (std::size_t k = 0; k < s.size(); ++k) t[k] = -0.5 * s[k];
      shifted = fractional_shift(grid, std::move(shifted), t);
    }
    std::vector<cplx> a(side);
    for (std::size_t z = 0; z < side; ++z) a[z] = std::polar(1.0, -symplectic_form(Y, points[z])) * window[z];
    std::vector<cplx> c = correlate(grid, std::move(a), std::move(shifted));
    for (std::size_t x = 0; x < side; ++x) {
      double s = symplectic_form(points[x], Y);
      cplx phase = kind == PhaseKind::HalfSigma ? std::polar(1.0, 0.5 * s) : std::polar(1.0, -s);
      out[x * side + y] = phase * w * c[x];
    }
  });
  return DoubleField(grid, std::move(out));
}

}  // namespace

Window make_window(const CompositionLaw& law, const SymbolField& h, std::string id) {
  Window win{std::move(id), h};
  win.norm2 = h.norm();
  if (win.norm2 == 0.0) throw Error("window must be nonzero");
  double im = 0.0;
  for (const auto& v : h.values()) im = std::max(im, std::abs(v.imag()));
  win.realness_defect = im / h.max_abs();
  win.idempotency_defect = relative_difference(law(h, h), h);
  return win;
}

Window idempotent_window(const PhaseGrid& grid, double threshold) {
  double amp = std::pow(2.0, grid.n());
  SymbolField h = SymbolField::from_function(grid, [amp](const std::vector<double>& z) {
    double r = 0.0;
    for (double c : z) r += c * c;
    return cplx(amp * std::exp(-r));
  });
  Window win = make_window(weyl_law(), h, "idempotent");
  double promoted = win.idempotency_defect;
  try {
    SymbolField hh = weyl_compose_direct(h, h, Readout::GridSamples);
    win.oracle_idempotency_defect = relative_difference(hh, h);
    promoted = win.oracle_idempotency_defect;
  } catch (const SizeGuard&) {
  }
  if (!(promoted <= threshold)) throw IdempotencyFailure(promoted, threshold);
  return win;
}

void check_doubled_guard(const PhaseGrid& grid) {
  if ((grid.n() == 1 && grid.N() > 32) || (grid.n() == 2 && grid.N() > 6) || grid.n() > 2)
    throw SizeGuard("doubled-space maps are limited to n=1, N<=32 and n=2, N<=6");
}

DoubleField map_N(const CompositionLaw& law, const SymbolField& f, const SymbolField& g) {
  require_same_grid(f.grid(), g.grid());
  require_law_dimension(law, f.grid());
  check_doubled_guard(f.grid());
  return gram(f.grid(), plane_wave_products(law, f, +1), plane_wave_products(law, g, +1));
}

DoubleField map_M(const CompositionLaw& law, const SymbolField& f, const SymbolField& g) {
  require_same_grid(f.grid(), g.grid());
  require_law_dimension(law, f.grid());
  const PhaseGrid& grid = f.grid();
  check_doubled_guard(grid);
  DoubleField p = gram(grid, plane_wave_products(law, f, -1), plane_wave_products(law, g, +1));
  const GroupTables& tab = group_tables(grid);
  std::size_t side = grid.size();
  std::vector<cplx> v(side * side);
  for (std::size_t X = 0; X < side; ++X)
    for (std::size_t Y = 0; Y < side; ++Y) v[X * side + Y] = p(X, tab.sub(X, Y));
  return DoubleField(grid, std::move(v));
}

DoubleField map_M(const CompositionLaw& law, const TensorSum& T) {
  DoubleField out(T.grid());
  for (const auto& [l, r] : T.terms) out = out + map_M(law, l, r);
  return out;
}

DoubleField fourier_of_N(const CompositionLaw& law, const SymbolField& f, const SymbolField& g) {
  return apply_second_slot(apply_first_slot(map_N(law, f, g), symplectic_fourier), symplectic_fourier);
}

DoubleField map_R(const CompositionLaw& law, const SymbolField& f, const SymbolField& g) {
  DoubleField t = fourier_of_N(law, f, g);
  const GroupTables& tab = group_tables(f.grid());
  std::size_t side = t.side();
  std::vector<cplx> v(side * side);
  for (std::size_t X = 0; X < side; ++X)
    for (std::size_t Y = 0; Y < side; ++Y) v[X * side + Y] = t(tab.neg(X), tab.neg(Y));
  return DoubleField(f.grid(), std::move(v));
}

DoubleField map_R_delta(const CompositionLaw& law, const SymbolField& f, const SymbolField& g) {
  require_same_grid(f.grid(), g.grid());
  require_law_dimension(law, f.grid());
  check_doubled_guard(f.grid());
  return gram(f.grid(), delta_products(law, f), delta_products(law, g));
}

DoubleField mod_map(const CompositionLaw& law, const SymbolField& f, const Window& h, ModMapPath path) {
  require_same_grid(f.grid(), h.h.grid());
  require_law_dimension(law, f.grid());
  if (h.norm2 == 0.0) throw Error("window must be nonzero");
  if (path == ModMapPath::Auto) path = law.exact_trace ? ModMapPath::Trace : ModMapPath::Generic;
  const PhaseGrid& grid = f.grid();
  switch (path) {
    case ModMapPath::ClosedForm:
      if (law.name != "weyl" && law.name != "weyl-direct")
        throw Error("the closed-form modulation map exists for the Weyl law only");
      check_doubled_guard(grid);
      return windowed_transform(f, h.h.values(), true, PhaseKind::HalfSigma);
    case ModMapPath::Trace: {
      if (!law.exact_trace) throw Error("law " + law.name + " has no exact trace");
      check_doubled_guard(grid);
      const GroupTables& tab = group_tables(grid);
      std::size_t side = grid.size();
      std::vector<cplx> v(side * side);
      parallel_for(side, [&](std::size_t x) {
        SymbolField e = plane_wave(grid, grid_point(grid, tab.neg(x)));
        SymbolField spec = symplectic_fourier(law(h.h, law(e, f)));
        for (std::size_t y = 0; y < side; ++y) v[x * side + y] = spec[tab.sub(y, x)];
      });
      return DoubleField(grid, std::move(v));
    }
    default:
      return map_M(law, f, h.h);
  }
}

SymbolField mod_adjoint(const CompositionLaw& law, const DoubleField& G, const Window& h) {
  const PhaseGrid& grid = G.grid();
  require_same_grid(grid, h.h.grid());
  require_law_dimension(law, grid);
  check_doubled_guard(grid);
  std::size_t side = grid.size();
  std::vector<SymbolField> terms(side, SymbolField(grid));
  parallel_for(side, [&](std::size_t x) {
    std::vector<cplx> row(G.values().begin() + static_cast<std::ptrdiff_t>(x * side),
                          G.values().begin() + static_cast<std::ptrdiff_t>((x + 1) * side));
    bool zero = true;
    for (const auto& v : row) zero = zero && v == 0.0;
    if (zero) return;
    PhasePoint X = grid_point(grid, x);
    SymbolField gx = pointwise_compose(plane_wave(grid, negate(grid, X)),
                                       symplectic_fourier(SymbolField(grid, std::move(row))));
    terms[x] = law(law(plane_wave(grid, X), h.h), gx);
  });
  std::vector<cplx> acc(side);
  for (const auto& t : terms)
    for (std::size_t i = 0; i < side; ++i) acc[i] += t[i];
  double w = grid.pairing_weight();
  for (auto& v : acc) v *= w;
  return SymbolField(grid, std::move(acc));
}

DoubleField cross_window_operator(const CompositionLaw& law, const DoubleField& G, const Window& h,
                                  const Window& k) {
  return mod_map(law, mod_adjoint(law, G, k), h);
}

double check_morphism(const CompositionLaw& law, const SymbolField& f1, const SymbolField& f2,
                      const SymbolField& g1, const SymbolField& g2) {
  DoubleField lhs = diamond_compose(map_M(law, f1, f2), map_M(law, g1, g2));
  TensorSum boxed = box_compose(law, TensorSum(f1, f2), TensorSum(g1, g2));
  DoubleField rhs = map_M(law, boxed);
  return relative_difference(lhs, rhs);
}

double check_morphism_involution(const CompositionLaw& law, const SymbolField& f1, const SymbolField& f2) {
  return relative_difference(map_M(law, f1.conj(), f2.conj()), diamond_involution(map_M(law, f1, f2)));
}

UnitarityResult check_unitarity(const CompositionLaw& law, const SymbolField& f1,
                                const SymbolField& f2, const SymbolField& g1, const SymbolField& g2) {
  DoubleField mf = map_M(law, f1, f2);
  DoubleField mg = map_M(law, g1, g2);
  cplx lhs = double_pair(box_involution(mf), mg);
  cplx rhs = pair(f1.conj(), g1) * pair(f2.conj(), g2);
  cplx tl = twisted_pair(box_involution(mf), mg);
  cplx tr = twisted_pair(materialize(TensorSum(f1.conj(), f2.conj())), materialize(TensorSum(g1, g2)));
  return {lhs, rhs, std::abs(lhs - rhs) / (std::abs(rhs) + 1e-300),
          std::abs(tl - tr) / (std::abs(tr) + 1e-300)};
}

double lpq_norm(const DoubleField& F, double p, double q) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw Error("mixed norm exponents must be at least 1");
  std::size_t side = F.side();
  double w = F.grid().pairing_weight();
  double outer = 0.0;
  for (std::size_t Y = 0; Y < side; ++Y) {
    double inner = 0.0;
    for (std::size_t X = 0; X < side; ++X) {
      double a = std::abs(F(X, Y));
      inner = std::isinf(p) ? std::max(inner, a) : inner + std::pow(a, p);
    }
    if (!std::isinf(p)) inner = std::pow(w * inner, 1.0 / p);
    outer = std::isinf(q) ? std::max(outer, inner) : outer + std::pow(inner, q);
  }
  return std::isinf(q) ? outer : std::pow(w * outer, 1.0 / q);
}

double modulation_norm(const CompositionLaw& law, const SymbolField& f, const ModNormSpec& spec) {
  return lpq_norm(mod_map(law, f, spec.window), spec.p, spec.q);
}

DoubleField stft(const SymbolField& f, const SymbolField& h) {
  require_same_grid(f.grid(), h.grid());
  check_doubled_guard(f.grid());
  return windowed_transform(f, h.conj().values(), false, PhaseKind::MinusSigma);
}

DoubleField stft_remapped(const SymbolField& f, const SymbolField& h) {
  require_same_grid(f.grid(), h.grid());
  check_doubled_guard(f.grid());
  return windowed_transform(f, h.conj().values(), true, PhaseKind::MinusSigma);
}

}  // namespace moyal
