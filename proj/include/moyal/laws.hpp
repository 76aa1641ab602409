#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "moyal/grid.hpp"

namespace moyal {

using KernelMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Integral kernel of an operator on the configuration grid, rows x, columns y.
struct OperatorKernel {
  PhaseGrid grid;
  KernelMatrix matrix;
};

struct CompositionLaw {
  std::string name;
  std::function<SymbolField(const SymbolField&, const SymbolField&)> compose;
  bool is_commutative = false;
  bool satisfies_c_expected = false;
  // Laws defined only in one configuration dimension (magnetic: n = 2).
  std::optional<int> required_n;
  // pair(f, g) equals the normalized trace of f # g for all fields, exactly.
  bool exact_trace = false;
  // Operator representation, for laws that have one.
  std::function<OperatorKernel(const SymbolField&)> to_kernel;
  std::function<SymbolField(const OperatorKernel&)> from_kernel;

  SymbolField operator()(const SymbolField& f, const SymbolField& g) const { return compose(f, g); }
};

CompositionLaw pointwise_law();
// Normative Weyl product through operator kernels.
CompositionLaw weyl_law();
// Weyl product through the double phase-space quadrature.
CompositionLaw weyl_direct_law();

void require_law_dimension(const CompositionLaw& law, const PhaseGrid& grid);

SymbolField pointwise_compose(const SymbolField& f, const SymbolField& g);

// The quadrature runs on the refined torus with M = 2N points per axis and
// step delta/2. BandFold projects its result onto the plane waves of the
// grid (the discrete symbol algebra); GridSamples reads it at grid points.
enum class Readout { BandFold, GridSamples };

SymbolField weyl_compose_direct(const SymbolField& f, const SymbolField& g,
                                Readout readout = Readout::BandFold);

// Prefactor of the refined quadrature: pi^{-2n} (delta/2)^{4n}.
double weyl_direct_prefactor(const PhaseGrid& grid);

// Multiplies the plane-wave coefficients of f on the Nyquist lines by the
// unimodular phases that make e_P # e_{-P} = 1 for every grid point P
// (conjugate phases when `inverse` is set). Identity away from those lines.
SymbolField nyquist_rephase(const SymbolField& f, bool inverse);

OperatorKernel weyl_op_kernel(const SymbolField& f);
SymbolField kernel_to_symbol(const OperatorKernel& K);
SymbolField weyl_compose_fast(const SymbolField& f, const SymbolField& g);

// Theta_Z(f) = e_{-Z} # f # e_Z.
SymbolField theta_translate(const CompositionLaw& law, const SymbolField& f, const PhasePoint& Z);

double check_integral_identity(const CompositionLaw& law, const SymbolField& f, const SymbolField& g);
double check_cyclicity(const CompositionLaw& law, const SymbolField& f1, const SymbolField& f2,
                       const SymbolField& f3);

struct HypothesisC {
  cplx lhs;
  cplx rhs;
  double defect;
};

HypothesisC check_hypothesis_c(const CompositionLaw& law, const SymbolField& f, const SymbolField& g);
// Same double sum with an arbitrary translation family Z -> Theta_Z(f).
HypothesisC hypothesis_c_sum(const std::function<SymbolField(const PhasePoint&)>& theta,
                             const SymbolField& f, const SymbolField& g);

namespace quadrature {

// Exponent of the extra phase exp(-i * flux(x, y, z)) of the magnetic
// integrand, evaluated at configuration coordinates.
using FluxFn = std::function<double(const double* x, const double* y, const double* z)>;

// Samples of f on the refined grid (trigonometric interpolation).
std::vector<cplx> refine(const SymbolField& f);

// c * sum_Y sum_Z exp(-2i sigma(X-Y, X-Z)) exp(-i flux) f(Y) g(Z) at every
// refined point X; Y and Z run over the refined grid.
std::vector<cplx> refined_product(const SymbolField& f, const SymbolField& g, const FluxFn* flux);

SymbolField band_fold(const PhaseGrid& grid, const std::vector<cplx>& refined);
SymbolField grid_samples(const PhaseGrid& grid, const std::vector<cplx>& refined);
SymbolField read_out(const PhaseGrid& grid, const std::vector<cplx>& refined, Readout readout);

}  // namespace quadrature

}  // namespace moyal
