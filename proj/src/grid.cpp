#include "moyal/grid.hpp"

#include <algorithm>
#include <cmath>

namespace moyal {

PhaseGrid::PhaseGrid(int n, int N) : n_(n), N_(N) {
  if (n < 1) throw GridError("n must be at least 1");
  if (n > 3) throw GridError("n > 3 exceeds the memory guard");
  if (N % 2 != 0) throw GridError("N must be even");
  if (N < 4) throw GridError("N must be at least 4");
  delta_ = std::sqrt(2.0 * kPi / N);
  config_size_ = 1;
  for (int i = 0; i < n; ++i) config_size_ *= static_cast<std::size_t>(N);
  size_ = config_size_ * config_size_;
}

double PhaseGrid::volume_element() const { return std::pow(delta_, 2 * n_); }

double PhaseGrid::pairing_weight() const { return 1.0 / static_cast<double>(config_size_); }

std::size_t PhaseGrid::flat(const std::vector<int>& index) const {
  std::size_t f = 0;
  for (int j : index) f = f * static_cast<std::size_t>(N_) + static_cast<std::size_t>(wrap(j));
  return f;
}

std::vector<int> PhaseGrid::multi_index(std::size_t flat) const {
  std::vector<int> idx(static_cast<std::size_t>(axes()));
  for (int a = axes() - 1; a >= 0; --a) {
    idx[static_cast<std::size_t>(a)] = static_cast<int>(flat % static_cast<std::size_t>(N_));
    flat /= static_cast<std::size_t>(N_);
  }
  return idx;
}

PhaseGrid make_grid(int n, int N) { return PhaseGrid(n, N); }

PhasePoint grid_point(const PhaseGrid& grid, std::vector<int> index) {
  if (static_cast<int>(index.size()) != grid.axes())
    throw DimensionMismatch("grid index has the wrong number of axes");
  PhasePoint p;
  p.coords.resize(index.size());
  for (std::size_t a = 0; a < index.size(); ++a) {
    index[a] = grid.wrap(index[a]);
    p.coords[a] = grid.coordinate(index[a]);
  }
  p.grid_index = std::move(index);
  return p;
}

PhasePoint grid_point(const PhaseGrid& grid, std::size_t flat) {
  return grid_point(grid, grid.multi_index(flat));
}

PhasePoint grid_point_at_steps(const PhaseGrid& grid, const std::vector<int>& steps) {
  std::vector<int> idx(steps.size());
  for (std::size_t a = 0; a < steps.size(); ++a) idx[a] = steps[a] + grid.N() / 2;
  return grid_point(grid, std::move(idx));
}

PhasePoint off_grid_point(std::vector<double> coords) {
  if (coords.size() % 2 != 0) throw DimensionMismatch("phase point needs an even coordinate count");
  PhasePoint p;
  p.coords = std::move(coords);
  return p;
}

PhasePoint origin(const PhaseGrid& grid) {
  return grid_point(grid, std::vector<int>(static_cast<std::size_t>(grid.axes()), grid.N() / 2));
}

namespace {

const std::vector<int>& index_of(const PhaseGrid& grid, const PhasePoint& X) {
  if (!X.grid_index) throw NonGridPoint();
  if (static_cast<int>(X.grid_index->size()) != grid.axes())
    throw DimensionMismatch("phase point dimension differs from the grid");
  return *X.grid_index;
}

}  // namespace

std::vector<int> steps_of(const PhaseGrid& grid, const PhasePoint& X) {
  const auto& idx = index_of(grid, X);
  std::vector<int> s(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) s[a] = idx[a] - grid.N() / 2;
  return s;
}

PhasePoint negate(const PhaseGrid& grid, const PhasePoint& X) {
  auto s = steps_of(grid, X);
  for (int& v : s) v = -v;
  return grid_point_at_steps(grid, s);
}

PhasePoint add(const PhaseGrid& grid, const PhasePoint& X, const PhasePoint& Y) {
  auto s = steps_of(grid, X);
  auto t = steps_of(grid, Y);
  for (std::size_t a = 0; a < s.size(); ++a) s[a] += t[a];
  return grid_point_at_steps(grid, s);
}

PhasePoint subtract(const PhaseGrid& grid, const PhasePoint& X, const PhasePoint& Y) {
  return add(grid, X, negate(grid, Y));
}

double symplectic_form(const PhasePoint& X, const PhasePoint& Y) {
  if (X.coords.size() != Y.coords.size())
    throw DimensionMismatch("symplectic form of points of different dimension");
  std::size_t n = X.coords.size() / 2;
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += Y.coords[j] * X.coords[n + j] - X.coords[j] * Y.coords[n + j];
  return s;
}

SymbolField::SymbolField(const PhaseGrid& grid) : grid_(grid), values_(grid.size()) {}

SymbolField::SymbolField(const PhaseGrid& grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw DimensionMismatch("symbol field length differs from N^{2n}");
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error("symbol field contains a non-finite entry");
}

SymbolField SymbolField::constant(const PhaseGrid& grid, cplx value) {
  return SymbolField(grid, std::vector<cplx>(grid.size(), value));
}

cplx SymbolField::at(const PhasePoint& X) const { return values_[grid_.flat(index_of(grid_, X))]; }

SymbolField SymbolField::conj() const {
  std::vector<cplx> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::conj(values_[i]);
  return SymbolField(grid_, std::move(v));
}

SymbolField SymbolField::operator+(const SymbolField& o) const {
  require_same_grid(grid_, o.grid_);
  std::vector<cplx> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] + o.values_[i];
  return SymbolField(grid_, std::move(v));
}

SymbolField SymbolField::operator-(const SymbolField& o) const {
  require_same_grid(grid_, o.grid_);
  std::vector<cplx> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] - o.values_[i];
  return SymbolField(grid_, std::move(v));
}

SymbolField SymbolField::operator*(cplx s) const {
  std::vector<cplx> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * s;
  return SymbolField(grid_, std::move(v));
}

double SymbolField::norm() const { return std::sqrt(std::max(0.0, hermitian_pair(*this, *this).real())); }

double SymbolField::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

void require_same_grid(const PhaseGrid& a, const PhaseGrid& b) {
  if (a != b) throw GridMismatch();
}

double relative_difference(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("length mismatch in relative difference");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num) / (std::sqrt(den) + 1e-300);
}

double relative_difference(const SymbolField& a, const SymbolField& b) {
  require_same_grid(a.grid(), b.grid());
  return relative_difference(a.values(), b.values());
}

cplx pair(const SymbolField& f, const SymbolField& g) {
  require_same_grid(f.grid(), g.grid());
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
  return s * f.grid().pairing_weight();
}

cplx hermitian_pair(const SymbolField& f, const SymbolField& g) {
  require_same_grid(f.grid(), g.grid());
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::conj(f[i]) * g[i];
  return s * f.grid().pairing_weight();
}

SymbolField plane_wave(const PhaseGrid& grid, const PhasePoint& X) {
  if (!X.on_grid()) throw NonGridPoint("plane waves need a grid point (torus periodicity)");
  index_of(grid, X);
  int n = grid.n();
  std::vector<double> xc(X.coords);
  return SymbolField::from_function(grid, [&](const std::vector<double>& z) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += z[j] * xc[n + j] - xc[j] * z[n + j];
    return std::polar(1.0, s);
  });
}

SymbolField delta_field(const PhaseGrid& grid, const PhasePoint& X) {
  std::vector<cplx> v(grid.size());
  v[grid.flat(index_of(grid, X))] = 1.0 / grid.pairing_weight();
  return SymbolField(grid, std::move(v));
}

SymbolField translate(const SymbolField& f, const PhasePoint& Z) {
  const PhaseGrid& grid = f.grid();
  auto s = steps_of(grid, Z);
  std::vector<cplx> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto idx = grid.multi_index(i);
    for (std::size_t a = 0; a < idx.size(); ++a) idx[a] -= s[a];
    v[i] = f[grid.flat(idx)];
  }
  return SymbolField(grid, std::move(v));
}

SymbolField symplectic_fourier(const SymbolField& f) {
  const PhaseGrid& grid = f.grid();
  int n = grid.n();
  auto dims = grid.dims();
  std::vector<cplx> g = f.values();
  for (int a = 0; a < n; ++a) spectral::centered_dft(g, dims, a, -1);
  for (int a = n; a < 2 * n; ++a) spectral::centered_dft(g, dims, a, +1);
  double w = grid.pairing_weight();
  std::vector<cplx> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto idx = grid.multi_index(i);
    std::vector<int> swapped(idx.size());
    for (int j = 0; j < n; ++j) {
      swapped[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(n + j)];
      swapped[static_cast<std::size_t>(n + j)] = idx[static_cast<std::size_t>(j)];
    }
    out[i] = w * g[grid.flat(swapped)];
  }
  return SymbolField(grid, std::move(out));
}

spectral::Band axis_band(const PhaseGrid& grid, int axis) {
  return axis < grid.n() ? spectral::Band::Lower : spectral::Band::Upper;
}

SymbolField midpoint_interpolate(const SymbolField& f, const std::vector<int>& half_axes) {
  const PhaseGrid& grid = f.grid();
  std::vector<double> steps(static_cast<std::size_t>(grid.axes()), 0.0);
  for (int a : half_axes) {
    if (a < 0 || a >= grid.n()) throw DimensionMismatch("midpoint interpolation acts on x-axes only");
    steps[static_cast<std::size_t>(a)] = 0.5;
  }
  return SymbolField(grid, fractional_shift(grid, f.values(), steps));
}

std::vector<cplx> fractional_shift(const PhaseGrid& grid, std::vector<cplx> values,
                                   const std::vector<double>& steps) {
  auto dims = grid.dims();
  for (int a = 0; a < grid.axes(); ++a) {
    double t = steps[static_cast<std::size_t>(a)];
    if (t == 0.0) continue;
    spectral::shift(values, dims, a, t, axis_band(grid, a));
  }
  return values;
}

}  // namespace moyal
