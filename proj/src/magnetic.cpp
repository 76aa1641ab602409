#include "moyal/magnetic.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "moyal/parallel.hpp"
#include "moyal/spectral.hpp"

namespace moyal {
namespace {

// Interior three-point rule on the unit simplex, exact through degree 2.
constexpr double kSimplex[3][2] = {{1.0 / 6.0, 1.0 / 6.0}, {2.0 / 3.0, 1.0 / 6.0}, {1.0 / 6.0, 2.0 / 3.0}};

// Two-point Gauss-Legendre nodes on [0, 1].
const double kGaussOffset = 0.5 / std::sqrt(3.0);

std::vector<double> config_coords(const PhaseGrid& grid, std::size_t c) {
  int n = grid.n();
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int k = n - 1; k >= 0; --k) {
    x[static_cast<std::size_t>(k)] = grid.coordinate(static_cast<int>(c % static_cast<std::size_t>(grid.N())));
    c /= static_cast<std::size_t>(grid.N());
  }
  return x;
}

void require_dimension(const PhaseGrid& grid, int n) {
  if (grid.n() != n) throw DimensionMismatch("magnetic data and grid differ in dimension");
}

// exp(-i circulation(x -> y)) on every pair of configuration points.
KernelMatrix circulation_phases(const PhaseGrid& grid, const VectorPotential& A, double sign) {
  require_dimension(grid, A.n());
  auto rows = static_cast<Eigen::Index>(grid.config_size());
  std::vector<std::vector<double>> pts(grid.config_size());
  for (std::size_t c = 0; c < pts.size(); ++c) pts[c] = config_coords(grid, c);
  KernelMatrix m(rows, rows);
  parallel_for(grid.config_size(), [&](std::size_t x) {
    for (std::size_t y = 0; y < pts.size(); ++y)
      m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) =
          std::polar(1.0, -sign * circulation(A, pts[x].data(), pts[y].data()));
  });
  return m;
}

void require_guard(const PhaseGrid& grid, int max_n2) {
  if (grid.n() == 2 && grid.N() > max_n2)
    throw SizeGuard("magnetic quadrature oracle is limited to N <= " + std::to_string(max_n2) + " for n = 2");
  if (grid.n() == 1 && grid.N() > 32) throw SizeGuard("magnetic quadrature oracle is limited to N <= 32 for n = 1");
  if (grid.n() > 2) throw SizeGuard("magnetic quadrature oracle needs n <= 2");
}

}  // namespace

MagneticField::MagneticField(int n) : n_(n) {
  if (n < 1) throw DimensionMismatch("magnetic field needs n >= 1");
  upper_.assign(static_cast<std::size_t>(n * (n - 1) / 2), Polynomial(n));
}

MagneticField MagneticField::constant(int n, double b12) {
  MagneticField B(n);
  if (n >= 2) B.set(0, 1, Polynomial::constant(n, b12));
  return B;
}

std::size_t MagneticField::slot(int j, int k) const {
  // j < k, row-major over the strict upper triangle.
  return static_cast<std::size_t>(j * n_ - j * (j + 1) / 2 + (k - j - 1));
}

Polynomial MagneticField::component(int j, int k) const {
  if (j == k) return Polynomial(n_);
  if (j < k) return upper_[slot(j, k)];
  return upper_[slot(k, j)] * -1.0;
}

void MagneticField::set(int j, int k, const Polynomial& p) {
  if (j == k) throw FormatError("diagonal magnetic components vanish");
  if (p.variables() != n_) throw DimensionMismatch("component in wrong variable count");
  if (j < k)
    upper_[slot(j, k)] = p;
  else
    upper_[slot(k, j)] = p * -1.0;
}

double MagneticField::at(int j, int k, const double* x) const {
  if (j == k) return 0.0;
  return j < k ? upper_[slot(j, k)](x) : -upper_[slot(k, j)](x);
}

int MagneticField::degree() const {
  int d = 0;
  for (const auto& p : upper_) d = std::max(d, p.degree());
  return d;
}

bool MagneticField::is_zero() const {
  for (const auto& p : upper_)
    if (!p.is_zero()) return false;
  return true;
}

bool MagneticField::is_closed(double tol) const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      for (int k = j + 1; k < n_; ++k) {
        Polynomial d = component(j, k).derivative(i) + component(k, i).derivative(j) +
                       component(i, j).derivative(k);
        if (!d.is_zero(tol)) return false;
      }
  return true;
}

nlohmann::json MagneticField::to_json() const {
  nlohmann::json comps = nlohmann::json::array();
  for (int j = 0; j < n_; ++j)
    for (int k = j + 1; k < n_; ++k)
      comps.push_back({{"j", j}, {"k", k}, {"terms", upper_[slot(j, k)].to_json()}});
  return {{"kind", "magnetic_field"}, {"n", n_}, {"components", comps}};
}

MagneticField MagneticField::from_json(const nlohmann::json& j) {
  try {
    int n = j.at("n").get<int>();
    MagneticField B(n);
    for (const auto& c : j.at("components")) {
      int a = c.at("j").get<int>();
      int b = c.at("k").get<int>();
      if (a < 0 || b < 0 || a >= n || b >= n) throw FormatError("magnetic component index out of range");
      B.set(a, b, Polynomial::from_json(c.at("terms"), n));
    }
    if (B.degree() > 2) throw FormatError("magnetic field components must have degree <= 2");
    if (!B.is_closed()) throw FormatError("magnetic field is not closed");
    return B;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad magnetic field: ") + e.what());
  }
}

VectorPotential::VectorPotential(int n, std::vector<Polynomial> components) : components_(std::move(components)) {
  if (static_cast<int>(components_.size()) != n) throw DimensionMismatch("vector potential needs n components");
  for (const auto& p : components_)
    if (p.variables() != n) throw DimensionMismatch("potential component in wrong variable count");
}

VectorPotential VectorPotential::zero(int n) {
  return VectorPotential(n, std::vector<Polynomial>(static_cast<std::size_t>(n), Polynomial(n)));
}

VectorPotential VectorPotential::symmetric_gauge(double b) {
  return VectorPotential(2, {Polynomial::variable(2, 1, -b / 2.0), Polynomial::variable(2, 0, b / 2.0)});
}

VectorPotential VectorPotential::landau_gauge(double b) {
  return VectorPotential(2, {Polynomial::variable(2, 1, -b), Polynomial(2)});
}

int VectorPotential::degree() const {
  int d = 0;
  for (const auto& p : components_) d = std::max(d, p.degree());
  return d;
}

MagneticField VectorPotential::curl() const {
  int n = this->n();
  MagneticField B(n);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) B.set(j, k, component(k).derivative(j) - component(j).derivative(k));
  return B;
}

bool VectorPotential::generates(const MagneticField& B, double tol) const {
  if (B.n() != n()) return false;
  MagneticField dA = curl();
  for (int j = 0; j < n(); ++j)
    for (int k = j + 1; k < n(); ++k)
      if (!(dA.component(j, k) - B.component(j, k)).is_zero(tol)) return false;
  return true;
}

nlohmann::json VectorPotential::to_json() const {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& p : components_) comps.push_back(p.to_json());
  return {{"kind", "vector_potential"}, {"n", n()}, {"components", comps}};
}

VectorPotential VectorPotential::from_json(const nlohmann::json& j) {
  try {
    int n = j.at("n").get<int>();
    std::vector<Polynomial> comps;
    for (const auto& c : j.at("components")) comps.push_back(Polynomial::from_json(c, n));
    VectorPotential A(n, std::move(comps));
    if (A.degree() > 3) throw FormatError("vector potential components must have degree <= 3");
    return A;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad vector potential: ") + e.what());
  }
}

double triangle_flux(const MagneticField& B, const double* a, const double* b, const double* c) {
  int n = B.n();
  std::vector<double> e1(static_cast<std::size_t>(n)), e2(static_cast<std::size_t>(n)), p(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    e1[static_cast<std::size_t>(k)] = b[k] - a[k];
    e2[static_cast<std::size_t>(k)] = c[k] - a[k];
  }
  double total = 0.0;
  for (const auto& node : kSimplex) {
    for (int k = 0; k < n; ++k)
      p[static_cast<std::size_t>(k)] = a[k] + node[0] * e1[static_cast<std::size_t>(k)] + node[1] * e2[static_cast<std::size_t>(k)];
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        double area = e1[static_cast<std::size_t>(j)] * e2[static_cast<std::size_t>(k)] -
                      e1[static_cast<std::size_t>(k)] * e2[static_cast<std::size_t>(j)];
        if (area != 0.0) total += area * B.at(j, k, p.data());
      }
  }
  return total / 6.0;
}

double triangle_flux(const MagneticField& B, const std::vector<double>& a, const std::vector<double>& b,
                     const std::vector<double>& c) {
  return triangle_flux(B, a.data(), b.data(), c.data());
}

double circulation(const VectorPotential& A, const double* x, const double* y) {
  int n = A.n();
  std::vector<double> p(static_cast<std::size_t>(n));
  double total = 0.0;
  for (double t : {0.5 - kGaussOffset, 0.5 + kGaussOffset}) {
    for (int k = 0; k < n; ++k) p[static_cast<std::size_t>(k)] = x[k] + t * (y[k] - x[k]);
    for (int k = 0; k < n; ++k) {
      double dk = y[k] - x[k];
      if (dk != 0.0) total += 0.5 * A.component(k)(p.data()) * dk;
    }
  }
  return total;
}

double circulation(const VectorPotential& A, const std::vector<double>& x, const std::vector<double>& y) {
  return circulation(A, x.data(), y.data());
}

cplx cocycle(const MagneticField& B, const PhasePoint& X, const PhasePoint& Y, const std::vector<double>& z) {
  int n = B.n();
  if (X.dimension() != n || Y.dimension() != n || static_cast<int>(z.size()) != n)
    throw DimensionMismatch("cocycle arguments differ in dimension");
  std::vector<double> b(z), c(z);
  for (int k = 0; k < n; ++k) {
    b[static_cast<std::size_t>(k)] += X.coords[static_cast<std::size_t>(k)];
    c[static_cast<std::size_t>(k)] = b[static_cast<std::size_t>(k)] + Y.coords[static_cast<std::size_t>(k)];
  }
  return std::polar(1.0, 0.5 * symplectic_form(X, Y) - triangle_flux(B, z, b, c));
}

SymbolField cocycle_field(const PhaseGrid& grid, const MagneticField& B, const PhasePoint& X,
                          const PhasePoint& Y) {
  require_dimension(grid, B.n());
  int n = grid.n();
  return SymbolField::from_function(grid, [&](const std::vector<double>& c) {
    return cocycle(B, X, Y, std::vector<double>(c.begin(), c.begin() + n));
  });
}

OperatorKernel op_magnetic(const VectorPotential& A, const SymbolField& f) {
  require_dimension(f.grid(), A.n());
  OperatorKernel K = weyl_op_kernel(f);
  K.matrix = K.matrix.cwiseProduct(circulation_phases(f.grid(), A, 1.0));
  return K;
}

SymbolField magnetic_kernel_to_symbol(const VectorPotential& A, const OperatorKernel& K) {
  require_dimension(K.grid, A.n());
  OperatorKernel plain{K.grid, K.matrix.cwiseProduct(circulation_phases(K.grid, A, -1.0))};
  return kernel_to_symbol(plain);
}

SymbolField magnetic_compose(const MagneticField& B, const VectorPotential& A, const SymbolField& f,
                             const SymbolField& g) {
  require_same_grid(f.grid(), g.grid());
  const PhaseGrid& grid = f.grid();
  require_dimension(grid, B.n());
  if (!A.generates(B)) throw Error("vector potential does not generate the magnetic field");
  KernelMatrix phase = circulation_phases(grid, A, 1.0);
  KernelMatrix kf = weyl_op_kernel(f).matrix.cwiseProduct(phase);
  KernelMatrix kg = weyl_op_kernel(g).matrix.cwiseProduct(phase);
  KernelMatrix prod = (kf * kg) * std::pow(grid.delta(), grid.n());
  return kernel_to_symbol({grid, prod.cwiseProduct(phase.conjugate())});
}

SymbolField magnetic_compose_direct(const MagneticField& B, const SymbolField& f, const SymbolField& g,
                                    Readout readout) {
  require_same_grid(f.grid(), g.grid());
  const PhaseGrid& grid = f.grid();
  require_dimension(grid, B.n());
  require_guard(grid, 6);
  int n = grid.n();
  quadrature::FluxFn flux = [&B, n](const double* x, const double* y, const double* z) {
    double a[8], b[8], c[8];
    for (int k = 0; k < n; ++k) {
      a[k] = x[k] - y[k] + z[k];
      b[k] = y[k] - z[k] + x[k];
      c[k] = z[k] - x[k] + y[k];
    }
    return triangle_flux(B, a, b, c);
  };
  const quadrature::FluxFn* hook = B.is_zero() ? nullptr : &flux;
  if (readout == Readout::GridSamples)
    return quadrature::grid_samples(grid, quadrature::refined_product(f, g, hook));
  SymbolField folded = quadrature::band_fold(
      grid, quadrature::refined_product(nyquist_rephase(f, false), nyquist_rephase(g, false), hook));
  return nyquist_rephase(folded, true);
}

SymbolField parallelogram_weight(const PhaseGrid& grid, const MagneticField& B, const PhasePoint& z) {
  require_dimension(grid, B.n());
  int n = grid.n();
  if (z.dimension() != n) throw DimensionMismatch("parallelogram edge has the wrong dimension");
  if (!z.on_grid()) throw NonGridPoint();
  std::vector<double> zc(z.coords.begin(), z.coords.begin() + n);
  std::size_t cs = grid.config_size();
  std::vector<cplx> v(grid.size());
  const double nodes_s[2] = {-kGaussOffset, kGaussOffset};
  // t runs over [0, 1] with the plane-wave orientation used here.
  const double nodes_t[2] = {0.5 - kGaussOffset, 0.5 + kGaussOffset};
  parallel_for(cs, [&](std::size_t x) {
    auto xc = config_coords(grid, x);
    std::vector<double> p(static_cast<std::size_t>(n));
    for (std::size_t y = 0; y < cs; ++y) {
      auto yc = config_coords(grid, y);
      double phase = 0.0;
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          double edge = yc[static_cast<std::size_t>(j)] * zc[static_cast<std::size_t>(k)] -
                        yc[static_cast<std::size_t>(k)] * zc[static_cast<std::size_t>(j)];
          if (edge == 0.0) continue;
          double integral = 0.0;
          for (double s : nodes_s)
            for (double t : nodes_t) {
              for (int q = 0; q < n; ++q)
                p[static_cast<std::size_t>(q)] = xc[static_cast<std::size_t>(q)] + s * yc[static_cast<std::size_t>(q)] +
                                                 t * zc[static_cast<std::size_t>(q)];
              integral += 0.25 * B.at(j, k, p.data());
            }
          phase += edge * integral;
        }
      v[x * cs + y] = std::polar(1.0, -phase);
    }
  });
  auto dims = grid.dims();
  for (int a = n; a < 2 * n; ++a) spectral::centered_dft(v, dims, a, -1);
  double scale = std::pow(grid.delta() / (2.0 * kPi), n);
  for (auto& x : v) x *= scale;
  return SymbolField(grid, std::move(v));
}

SymbolField mixed_product(const SymbolField& f, const SymbolField& g) {
  require_same_grid(f.grid(), g.grid());
  const PhaseGrid& grid = f.grid();
  int n = grid.n();
  int N = grid.N();
  std::size_t cs = grid.config_size();
  // diff[k * cs + l]: momentum index of xi_k - eta_l.
  std::vector<std::size_t> diff(cs * cs);
  for (std::size_t k = 0; k < cs; ++k)
    for (std::size_t l = 0; l < cs; ++l) {
      std::size_t rk = k, rl = l, out = 0, mul = 1;
      for (int a = 0; a < n; ++a) {
        int ik = static_cast<int>(rk % static_cast<std::size_t>(N));
        int il = static_cast<int>(rl % static_cast<std::size_t>(N));
        rk /= static_cast<std::size_t>(N);
        rl /= static_cast<std::size_t>(N);
        out += static_cast<std::size_t>(grid.wrap(ik - il + N / 2)) * mul;
        mul *= static_cast<std::size_t>(N);
      }
      diff[k * cs + l] = out;
    }
  double w = std::pow(grid.delta(), n);
  std::vector<cplx> v(grid.size());
  parallel_for(cs, [&](std::size_t x) {
    const cplx* fx = f.values().data() + x * cs;
    const cplx* gx = g.values().data() + x * cs;
    for (std::size_t k = 0; k < cs; ++k) {
      cplx s = 0.0;
      for (std::size_t l = 0; l < cs; ++l) s += fx[diff[k * cs + l]] * gx[l];
      v[x * cs + k] = w * s;
    }
  });
  return SymbolField(grid, std::move(v));
}

SymbolField magnetic_theta(const MagneticField& B, const PhasePoint& Z, const SymbolField& f) {
  const PhaseGrid& grid = f.grid();
  if (!Z.on_grid()) throw NonGridPoint();
  SymbolField shifted = translate(f, negate(grid, Z));
  if (B.is_zero()) return shifted;
  return mixed_product(parallelogram_weight(grid, B, Z), shifted);
}

HypothesisC check_magnetic_hypothesis_c(const MagneticField& B, const SymbolField& f, const SymbolField& g) {
  const PhaseGrid& grid = f.grid();
  require_dimension(grid, B.n());
  if (grid.n() == 2 && grid.N() > 8) throw SizeGuard("magnetic Hypothesis C is limited to N <= 8 for n = 2");
  return hypothesis_c_sum([&](const PhasePoint& Z) { return magnetic_theta(B, Z, f); }, f, g);
}

StokesResult check_stokes(const VectorPotential& A, int triangles, unsigned long long seed) {
  int n = A.n();
  MagneticField B = A.curl();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  for (int t = 0; t < triangles; ++t) {
    std::vector<double> a(static_cast<std::size_t>(n)), b(a), c(a);
    for (int k = 0; k < n; ++k) {
      a[static_cast<std::size_t>(k)] = u(rng);
      b[static_cast<std::size_t>(k)] = u(rng);
      c[static_cast<std::size_t>(k)] = u(rng);
    }
    double loop = circulation(A, a, b) + circulation(A, b, c) + circulation(A, c, a);
    double flux = triangle_flux(B, a, b, c);
    worst = std::max(worst, std::abs(loop - flux) / std::max(1.0, std::abs(flux)));
  }
  return {worst, triangles};
}

CocycleResult check_cocycle(const PhaseGrid& grid, const MagneticField& B, const VectorPotential& A,
                            const PhasePoint& X, const PhasePoint& Y) {
  int n = grid.n();
  SymbolField lhs = magnetic_compose(B, A, plane_wave(grid, X), plane_wave(grid, Y));
  SymbolField omega = cocycle_field(grid, B, X, Y);
  SymbolField wave = plane_wave(grid, add(grid, X, Y));
  SymbolField sharp = magnetic_compose(B, A, omega, wave);
  std::vector<cplx> pw(grid.size());
  for (std::size_t i = 0; i < pw.size(); ++i) pw[i] = omega[i] * wave[i];

  auto sx = steps_of(grid, X);
  auto sy = steps_of(grid, Y);
  bool even = true;
  for (int k = 0; k < n; ++k) even = even && ((sx[static_cast<std::size_t>(k)] + sy[static_cast<std::size_t>(k)]) % 2 == 0);
  CocycleResult r;
  r.sharp_full = relative_difference(lhs, sharp);
  r.pointwise_full = relative_difference(lhs.values(), pw);
  r.sharp_defect = r.pointwise_defect = std::nan("");
  if (!even) return r;
  // Rows whose kernel path m + (x+y)/2 -> -x -> -y stays on the grid.
  double ds = 0.0, dp = 0.0, den = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto idx = grid.multi_index(i);
    bool inside = true;
    for (int k = 0; k < n && inside; ++k) {
      int a = sx[static_cast<std::size_t>(k)], b = sy[static_cast<std::size_t>(k)];
      int p = idx[static_cast<std::size_t>(k)] + (a + b) / 2;
      for (int v : {p, p - a, p - a - b}) inside = inside && v >= 0 && v < grid.N();
    }
    if (!inside) continue;
    ds += std::norm(lhs[i] - sharp[i]);
    dp += std::norm(lhs[i] - pw[i]);
    den += std::norm(lhs[i]);
  }
  if (den > 0.0) {
    r.sharp_defect = std::sqrt(ds / den);
    r.pointwise_defect = std::sqrt(dp / den);
  }
  return r;
}

std::vector<std::string> magnetic_names() {
  return {"magnetic-b0", "magnetic-b0.5", "magnetic-b1", "magnetic-linear"};
}

bool is_magnetic_name(const std::string& name) {
  for (const auto& m : magnetic_names())
    if (m == name) return true;
  return false;
}

MagneticSetup magnetic_setup(const std::string& name) {
  auto constant_setup = [&](double b) {
    return MagneticSetup{name,
                         MagneticField::constant(2, b),
                         {{"symmetric", VectorPotential::symmetric_gauge(b)}, {"landau", VectorPotential::landau_gauge(b)}}};
  };
  if (name == "magnetic-b0") return constant_setup(0.0);
  if (name == "magnetic-b0.5") return constant_setup(0.5);
  if (name == "magnetic-b1") return constant_setup(1.0);
  if (name == "magnetic-linear") {
    // B_12 = x_1.
    MagneticField B(2);
    B.set(0, 1, Polynomial::variable(2, 0));
    Polynomial half_sq(2, {{{2, 0}, 0.5}});
    Polynomial cross(2, {{{1, 1}, -1.0}});
    return MagneticSetup{name,
                         B,
                         {{"transverse", VectorPotential(2, {Polynomial(2), half_sq})},
                          {"axial", VectorPotential(2, {cross, Polynomial(2)})}}};
  }
  throw FormatError("unknown magnetic law: " + name);
}

CompositionLaw magnetic_law(const std::string& name) {
  MagneticSetup s = magnetic_setup(name);
  auto B = std::make_shared<MagneticField>(s.field);
  auto A = std::make_shared<VectorPotential>(s.gauges.front().second);
  CompositionLaw law;
  law.name = name;
  law.compose = [B, A](const SymbolField& f, const SymbolField& g) { return magnetic_compose(*B, *A, f, g); };
  law.satisfies_c_expected = true;
  law.required_n = 2;
  law.exact_trace = true;
  law.to_kernel = [A](const SymbolField& f) { return op_magnetic(*A, f); };
  law.from_kernel = [A](const OperatorKernel& K) { return magnetic_kernel_to_symbol(*A, K); };
  return law;
}

CompositionLaw magnetic_direct_law(const std::string& name) {
  MagneticSetup s = magnetic_setup(name);
  auto B = std::make_shared<MagneticField>(s.field);
  CompositionLaw law;
  law.name = name + "-direct";
  law.compose = [B](const SymbolField& f, const SymbolField& g) { return magnetic_compose_direct(*B, f, g); };
  law.satisfies_c_expected = true;
  law.required_n = 2;
  auto A = std::make_shared<VectorPotential>(s.gauges.front().second);
  law.to_kernel = [A](const SymbolField& f) { return op_magnetic(*A, f); };
  law.from_kernel = [A](const OperatorKernel& K) { return magnetic_kernel_to_symbol(*A, K); };
  return law;
}

double check_gauge_covariance(const MagneticSetup& setup, const SymbolField& f, const SymbolField& g) {
  SymbolField ref = magnetic_compose(setup.field, setup.gauges.front().second, f, g);
  double worst = 0.0;
  for (std::size_t k = 1; k < setup.gauges.size(); ++k)
    worst = std::max(worst, relative_difference(magnetic_compose(setup.field, setup.gauges[k].second, f, g), ref));
  return worst;
}

}  // namespace moyal
