#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "moyal/core.hpp"
#include "moyal/spectral.hpp"

namespace moyal {

// Matched torus model of phase space: 2n axes of N points with step
// delta = sqrt(2*pi/N), coordinates (j - N/2)*delta.
class PhaseGrid {
 public:
  PhaseGrid(int n, int N);

  int n() const { return n_; }
  int N() const { return N_; }
  double delta() const { return delta_; }
  int axes() const { return 2 * n_; }
  std::size_t size() const { return size_; }
  std::size_t config_size() const { return config_size_; }
  double volume_element() const;
  double pairing_weight() const;
  double coordinate(int j) const { return (j - N_ / 2) * delta_; }
  int wrap(int j) const { return ((j % N_) + N_) % N_; }
  spectral::Dims dims() const { return spectral::Dims(static_cast<std::size_t>(axes()), N_); }

  std::size_t flat(const std::vector<int>& index) const;
  std::vector<int> multi_index(std::size_t flat) const;

  bool operator==(const PhaseGrid& o) const { return n_ == o.n_ && N_ == o.N_; }
  bool operator!=(const PhaseGrid& o) const { return !(*this == o); }

 private:
  int n_;
  int N_;
  double delta_;
  std::size_t size_;
  std::size_t config_size_;
};

PhaseGrid make_grid(int n, int N);

struct PhasePoint {
  std::vector<double> coords;
  std::optional<std::vector<int>> grid_index;

  int dimension() const { return static_cast<int>(coords.size() / 2); }
  bool on_grid() const { return grid_index.has_value(); }
};

PhasePoint grid_point(const PhaseGrid& grid, std::vector<int> index);
PhasePoint grid_point(const PhaseGrid& grid, std::size_t flat);
// Grid point given by integer offsets (in steps) from the origin.
PhasePoint grid_point_at_steps(const PhaseGrid& grid, const std::vector<int>& steps);
PhasePoint off_grid_point(std::vector<double> coords);
PhasePoint origin(const PhaseGrid& grid);
std::vector<int> steps_of(const PhaseGrid& grid, const PhasePoint& X);

PhasePoint negate(const PhaseGrid& grid, const PhasePoint& X);
PhasePoint add(const PhaseGrid& grid, const PhasePoint& X, const PhasePoint& Y);
PhasePoint subtract(const PhaseGrid& grid, const PhasePoint& X, const PhasePoint& Y);

double symplectic_form(const PhasePoint& X, const PhasePoint& Y);

class SymbolField {
 public:
  explicit SymbolField(const PhaseGrid& grid);
  SymbolField(const PhaseGrid& grid, std::vector<cplx> values);

  static SymbolField constant(const PhaseGrid& grid, cplx value);

  template <class F>
  static SymbolField from_function(const PhaseGrid& grid, F&& fn) {
    std::vector<cplx> v(grid.size());
    std::vector<double> coords(static_cast<std::size_t>(grid.axes()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::size_t r = i;
      for (int a = grid.axes() - 1; a >= 0; --a) {
        coords[static_cast<std::size_t>(a)] = grid.coordinate(static_cast<int>(r % grid.N()));
        r /= static_cast<std::size_t>(grid.N());
      }
      v[i] = fn(coords);
    }
    return SymbolField(grid, std::move(v));
  }

  const PhaseGrid& grid() const { return grid_; }
  const std::vector<cplx>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  cplx operator[](std::size_t i) const { return values_[i]; }
  cplx at(const PhasePoint& X) const;

  SymbolField conj() const;
  SymbolField operator+(const SymbolField& o) const;
  SymbolField operator-(const SymbolField& o) const;
  SymbolField operator*(cplx s) const;
  double norm() const;
  double max_abs() const;

 private:
  PhaseGrid grid_;
  std::vector<cplx> values_;
};

inline SymbolField operator*(cplx s, const SymbolField& f) { return f * s; }

void require_same_grid(const PhaseGrid& a, const PhaseGrid& b);

// ||a - b|| / ||b|| in the Euclidean norm, with a tiny floor on the denominator.
double relative_difference(const std::vector<cplx>& a, const std::vector<cplx>& b);
double relative_difference(const SymbolField& a, const SymbolField& b);

cplx pair(const SymbolField& f, const SymbolField& g);
cplx hermitian_pair(const SymbolField& f, const SymbolField& g);

SymbolField plane_wave(const PhaseGrid& grid, const PhasePoint& X);
// Discrete Dirac mass: indicator of X divided by the pairing weight.
SymbolField delta_field(const PhaseGrid& grid, const PhasePoint& X);

// (T_Z f)(X) = f(X - Z).
SymbolField translate(const SymbolField& f, const PhasePoint& Z);

// (Ff)(Y) = w * sum_Z exp(-i sigma(Y, Z)) f(Z).
SymbolField symplectic_fourier(const SymbolField& f);

// Values at points shifted by +delta/2 along the listed x-axes; entry j holds
// the interpolant at index j + 1/2 on those axes.
SymbolField midpoint_interpolate(const SymbolField& f, const std::vector<int>& half_axes);

// Spectral shift by fractional steps along every axis. Position axes use the
// band [-N/2, N/2), momentum axes (-N/2, N/2], matching the plane waves on
// the grid.
std::vector<cplx> fractional_shift(const PhaseGrid& grid, std::vector<cplx> values,
                                   const std::vector<double>& steps);

spectral::Band axis_band(const PhaseGrid& grid, int axis);

}  // namespace moyal
