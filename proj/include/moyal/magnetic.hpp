#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "moyal/laws.hpp"
#include "moyal/polynomial.hpp"

namespace moyal {

// Polynomial 2-form on R^n; only the components j < k are stored.
class MagneticField {
 public:
  explicit MagneticField(int n);

  static MagneticField constant(int n, double b12);

  int n() const { return n_; }
  // B_jk, with B_kj = -B_jk and B_jj = 0.
  Polynomial component(int j, int k) const;
  void set(int j, int k, const Polynomial& p);
  double at(int j, int k, const double* x) const;
  int degree() const;
  bool is_zero() const;
  bool is_closed(double tol = 1e-12) const;

  nlohmann::json to_json() const;
  static MagneticField from_json(const nlohmann::json& j);

 private:
  std::size_t slot(int j, int k) const;
  int n_;
  std::vector<Polynomial> upper_;
};

class VectorPotential {
 public:
  VectorPotential(int n, std::vector<Polynomial> components);

  static VectorPotential zero(int n);
  static VectorPotential symmetric_gauge(double b);
  static VectorPotential landau_gauge(double b);

  int n() const { return static_cast<int>(components_.size()); }
  const Polynomial& component(int j) const { return components_[static_cast<std::size_t>(j)]; }
  int degree() const;

  // (dA)_jk = d_j A_k - d_k A_j.
  MagneticField curl() const;
  bool generates(const MagneticField& B, double tol = 1e-12) const;

  nlohmann::json to_json() const;
  static VectorPotential from_json(const nlohmann::json& j);

 private:
  std::vector<Polynomial> components_;
};

// Flux of B through the oriented simplex <a, b, c> (edges b - a, c - a).
double triangle_flux(const MagneticField& B, const double* a, const double* b, const double* c);
double triangle_flux(const MagneticField& B, const std::vector<double>& a, const std::vector<double>& b,
                     const std::vector<double>& c);

// Line integral of A along the segment from x to y.
double circulation(const VectorPotential& A, const double* x, const double* y);
double circulation(const VectorPotential& A, const std::vector<double>& x, const std::vector<double>& y);

// exp[(i/2) sigma(X, Y)] exp[-i flux(<z, z + x, z + x + y>)].
cplx cocycle(const MagneticField& B, const PhasePoint& X, const PhasePoint& Y, const std::vector<double>& z);

// The function z -> cocycle(B, X, Y, z) as a symbol constant in momentum.
SymbolField cocycle_field(const PhaseGrid& grid, const MagneticField& B, const PhasePoint& X,
                          const PhasePoint& Y);

OperatorKernel op_magnetic(const VectorPotential& A, const SymbolField& f);
SymbolField magnetic_kernel_to_symbol(const VectorPotential& A, const OperatorKernel& K);

// Gauge route: the symbol of Op^A(f) Op^A(g). Throws if dA != B.
SymbolField magnetic_compose(const MagneticField& B, const VectorPotential& A, const SymbolField& f,
                             const SymbolField& g);

// Double phase-space quadrature with the triangle-flux phase (oracle only).
SymbolField magnetic_compose_direct(const MagneticField& B, const SymbolField& f, const SymbolField& g,
                                    Readout readout = Readout::BandFold);

// Partial Fourier transform in y of exp{-i sum_jk y_j z_k int int B_jk(x + s y + t z)},
// s in [-1/2, 1/2], t in [-1, 0].
SymbolField parallelogram_weight(const PhaseGrid& grid, const MagneticField& B, const PhasePoint& z);

// (f * g)(x, xi) = delta^n sum_eta f(x, xi - eta) g(x, eta), periodic in eta.
SymbolField mixed_product(const SymbolField& f, const SymbolField& g);

// Weight * f(. + Z).
SymbolField magnetic_theta(const MagneticField& B, const PhasePoint& Z, const SymbolField& f);

HypothesisC check_magnetic_hypothesis_c(const MagneticField& B, const SymbolField& f, const SymbolField& g);

struct StokesResult {
  double max_defect;
  int triangles;
};

// Random triangles: circulation around the boundary against the flux of dA.
StokesResult check_stokes(const VectorPotential& A, int triangles, unsigned long long seed);

// e_X #^B e_Y against Omega #^B e_{X+Y} (sharp) and the pointwise product
// Omega e_{X+Y}. The plain defects are taken over the rows whose kernel path
// does not cross the torus seam; they need even step sums x + y and are NaN
// otherwise. The *_full defects cover the whole grid.
struct CocycleResult {
  double sharp_defect;
  double pointwise_defect;
  double sharp_full;
  double pointwise_full;
};

CocycleResult check_cocycle(const PhaseGrid& grid, const MagneticField& B, const VectorPotential& A,
                            const PhasePoint& X, const PhasePoint& Y);

struct MagneticSetup {
  std::string name;
  MagneticField field;
  std::vector<std::pair<std::string, VectorPotential>> gauges;
};

std::vector<std::string> magnetic_names();
bool is_magnetic_name(const std::string& name);
MagneticSetup magnetic_setup(const std::string& name);
// Product through the first shipped gauge.
CompositionLaw magnetic_law(const std::string& name);
CompositionLaw magnetic_direct_law(const std::string& name);

// Largest relative difference between the products of every shipped gauge.
double check_gauge_covariance(const MagneticSetup& setup, const SymbolField& f, const SymbolField& g);

}  // namespace moyal
