#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "moyal/grid.hpp"
#include "moyal/laws.hpp"

namespace moyal {

// Function on the doubled grid, row-major over (first index X, second index Y).
class DoubleField {
 public:
  explicit DoubleField(const PhaseGrid& grid);
  DoubleField(const PhaseGrid& grid, std::vector<cplx> values);

  const PhaseGrid& grid() const { return grid_; }
  const std::vector<cplx>& values() const { return values_; }
  std::size_t side() const { return grid_.size(); }
  std::size_t size() const { return values_.size(); }
  cplx operator()(std::size_t X, std::size_t Y) const { return values_[X * side() + Y]; }

  DoubleField operator+(const DoubleField& o) const;
  DoubleField operator-(const DoubleField& o) const;
  DoubleField operator*(cplx s) const;
  double norm() const;

 private:
  PhaseGrid grid_;
  std::vector<cplx> values_;
};

struct TensorSum {
  std::vector<std::pair<SymbolField, SymbolField>> terms;

  TensorSum() = default;
  TensorSum(SymbolField left, SymbolField right) { terms.emplace_back(std::move(left), std::move(right)); }
  const PhaseGrid& grid() const;
};

double relative_difference(const DoubleField& a, const DoubleField& b);

DoubleField materialize(const TensorSum& T);

// (f (x) h) box (g (x) k) = (f # g) (x) (k # h).
TensorSum box_compose(const CompositionLaw& law, const TensorSum& T1, const TensorSum& T2);
DoubleField box_involution(const DoubleField& F);
TensorSum box_involution(const TensorSum& T);

// (F <> G)(X, Y) = w sum_Z F(X, Z) G(X - Z, Y - Z).
DoubleField diamond_compose(const DoubleField& F, const DoubleField& G);
// F^<>(X, Y) = conj F(X - Y, -Y).
DoubleField diamond_involution(const DoubleField& F);
// E(X, Z) = [Z = 0] / w, the unit of <>.
DoubleField diamond_unit(const PhaseGrid& grid);

// (K ~<> L)(X, Y) = w sum_Z K(X, Z) L(Z, Y).
DoubleField kernel_compose(const DoubleField& K, const DoubleField& L);
DoubleField kernel_involution(const DoubleField& K);
DoubleField kernel_unit(const PhaseGrid& grid);
// (X, Y) -> K(X, X - Y); intertwines ~<> with <>.
DoubleField kernel_to_crossed(const DoubleField& K);

cplx double_pair(const DoubleField& F, const DoubleField& G);
cplx twisted_pair(const DoubleField& F, const DoubleField& G);

// (C F)(X, Y) = F(-X, X - Y).
DoubleField change_vars_C(const DoubleField& F);

// Applies a symbol-level linear map to each slot.
DoubleField apply_first_slot(const DoubleField& F, SymbolField (*op)(const SymbolField&));
DoubleField apply_second_slot(const DoubleField& F, SymbolField (*op)(const SymbolField&));

// Index tables of the torus group on the grid.
struct GroupTables {
  explicit GroupTables(const PhaseGrid& grid);
  std::size_t sub(std::size_t a, std::size_t b) const { return sub_[a * side_ + b]; }
  std::size_t neg(std::size_t a) const { return neg_[a]; }

 private:
  std::size_t side_;
  std::vector<std::uint32_t> sub_;
  std::vector<std::uint32_t> neg_;
};

// Shared, lazily built tables per grid.
const GroupTables& group_tables(const PhaseGrid& grid);

}  // namespace moyal
