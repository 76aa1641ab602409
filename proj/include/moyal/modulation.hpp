#pragma once

#include <limits>
#include <string>

#include "moyal/doubled.hpp"
#include "moyal/laws.hpp"

namespace moyal {

struct Window {
  std::string id;
  SymbolField h;
  double norm2 = 0.0;
  double realness_defect = 0.0;
  // ||h # h - h|| / ||h|| under the law the window was built for.
  double idempotency_defect = 0.0;
  // Same defect with the product read from the quadrature at grid points;
  // NaN when the quadrature is not available on the grid.
  double oracle_idempotency_defect = std::numeric_limits<double>::quiet_NaN();
};

Window make_window(const CompositionLaw& law, const SymbolField& h, std::string id);

// h(X) = 2^n exp(-|X|^2) under the Weyl law. Throws IdempotencyFailure when the
// defect (quadrature read-out where available) exceeds `threshold`.
Window idempotent_window(const PhaseGrid& grid, double threshold = 1e-5);

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ModNormSpec {
  double p = 2.0;
  double q = 2.0;
  Window window;
};

void check_doubled_guard(const PhaseGrid& grid);

// (X, Y) -> <e_X # f, e_Y # g>.
DoubleField map_N(const CompositionLaw& law, const SymbolField& f, const SymbolField& g);
// (X, Y) -> <e_{-X} # f, e_{X-Y} # g>.
DoubleField map_M(const CompositionLaw& law, const SymbolField& f, const SymbolField& g);
DoubleField map_M(const CompositionLaw& law, const TensorSum& T);
// (F (x) F) applied to map_N, as computed.
DoubleField fourier_of_N(const CompositionLaw& law, const SymbolField& f, const SymbolField& g);
// (X, Y) -> fourier_of_N(-X, -Y); equals the delta route below.
DoubleField map_R(const CompositionLaw& law, const SymbolField& f, const SymbolField& g);
// (X, Y) -> <delta_X # f, delta_Y # g>.
DoubleField map_R_delta(const CompositionLaw& law, const SymbolField& f, const SymbolField& g);

// Generic: the pairings of map_M. Trace: M(X, Y) = F(h # e_{-X} # f)(Y - X),
// valid for laws with an exact trace. ClosedForm (Weyl only):
// e^{(i/2) sigma(X,Y)} w sum_Z e^{-i sigma(Y,Z)} h(Z) f(Z + X - Y/2).
// Auto picks Trace when the law allows it and Generic otherwise.
enum class ModMapPath { Auto, Generic, Trace, ClosedForm };

DoubleField mod_map(const CompositionLaw& law, const SymbolField& f, const Window& h,
                    ModMapPath path = ModMapPath::Auto);

// w^2 sum_{X,Y} G(X, Y) e_X # h # e_{Y-X}.
SymbolField mod_adjoint(const CompositionLaw& law, const DoubleField& G, const Window& h);

DoubleField cross_window_operator(const CompositionLaw& law, const DoubleField& G, const Window& h,
                                  const Window& k);

double check_morphism(const CompositionLaw& law, const SymbolField& f1, const SymbolField& f2,
                      const SymbolField& g1, const SymbolField& g2);
double check_morphism_involution(const CompositionLaw& law, const SymbolField& f1,
                                 const SymbolField& f2);

struct UnitarityResult {
  cplx lhs;
  cplx rhs;
  double defect;
  // The same comparison in the twisted duality; informational.
  double twisted_defect;
};

UnitarityResult check_unitarity(const CompositionLaw& law, const SymbolField& f1,
                                const SymbolField& f2, const SymbolField& g1, const SymbolField& g2);

double lpq_norm(const DoubleField& F, double p, double q);
double modulation_norm(const CompositionLaw& law, const SymbolField& f, const ModNormSpec& spec);

// V(X, Y) = e^{-i sigma(X,Y)} w sum_Z e^{-i sigma(Y,Z)} conj(h(Z)) f(Z + X).
DoubleField stft(const SymbolField& f, const SymbolField& h);
// (X, Y) -> V(X - Y/2, Y), the half step taken by spectral interpolation.
DoubleField stft_remapped(const SymbolField& f, const SymbolField& h);

}  // namespace moyal
