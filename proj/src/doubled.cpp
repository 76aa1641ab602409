#include "moyal/doubled.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "moyal/parallel.hpp"

namespace moyal {

DoubleField::DoubleField(const PhaseGrid& grid) : grid_(grid), values_(grid.size() * grid.size()) {}

DoubleField::DoubleField(const PhaseGrid& grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size() * grid_.size())
    throw DimensionMismatch("double field length differs from N^{4n}");
}

DoubleField DoubleField::operator+(const DoubleField& o) const {
  require_same_grid(grid_, o.grid_);
  std::vector<cplx> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] + o.values_[i];
  return DoubleField(grid_, std::move(v));
}

DoubleField DoubleField::operator-(const DoubleField& o) const {
  require_same_grid(grid_, o.grid_);
  std::vector<cplx> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] - o.values_[i];
  return DoubleField(grid_, std::move(v));
}

DoubleField DoubleField::operator*(cplx s) const {
  std::vector<cplx> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * s;
  return DoubleField(grid_, std::move(v));
}

double DoubleField::norm() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return std::sqrt(s) * grid_.pairing_weight();
}

const PhaseGrid& TensorSum::grid() const {
  if (terms.empty()) throw Error("empty tensor sum");
  return terms.front().first.grid();
}

double relative_difference(const DoubleField& a, const DoubleField& b) {
  require_same_grid(a.grid(), b.grid());
  return relative_difference(a.values(), b.values());
}

GroupTables::GroupTables(const PhaseGrid& grid) : side_(grid.size()), sub_(side_ * side_), neg_(side_) {
  int axes = grid.axes();
  std::vector<std::vector<int>> idx(side_);
  for (std::size_t a = 0; a < side_; ++a) idx[a] = grid.multi_index(a);
  std::vector<int> t(static_cast<std::size_t>(axes));
  int half = grid.N() / 2;
  for (std::size_t a = 0; a < side_; ++a) {
    for (int k = 0; k < axes; ++k) t[static_cast<std::size_t>(k)] = 2 * half - idx[a][static_cast<std::size_t>(k)];
    neg_[a] = static_cast<std::uint32_t>(grid.flat(t));
    for (std::size_t b = 0; b < side_; ++b) {
      for (int k = 0; k < axes; ++k)
        t[static_cast<std::size_t>(k)] = idx[a][static_cast<std::size_t>(k)] - idx[b][static_cast<std::size_t>(k)] + half;
      sub_[a * side_ + b] = static_cast<std::uint32_t>(grid.flat(t));
    }
  }
}

const GroupTables& group_tables(const PhaseGrid& grid) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<GroupTables>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{grid.n(), grid.N()}];
  if (!slot) slot = std::make_unique<GroupTables>(grid);
  return *slot;
}

DoubleField materialize(const TensorSum& T) {
  const PhaseGrid& grid = T.grid();
  for (const auto& [l, r] : T.terms) {
    require_same_grid(grid, l.grid());
    require_same_grid(grid, r.grid());
  }
  std::size_t side = grid.size();
  std::vector<cplx> v(side * side);
  for (const auto& [l, r] : T.terms)
    for (std::size_t X = 0; X < side; ++X) {
      cplx a = l[X];
      if (a == 0.0) continue;
      for (std::size_t Y = 0; Y < side; ++Y) v[X * side + Y] += a * r[Y];
    }
  return DoubleField(grid, std::move(v));
}

TensorSum box_compose(const CompositionLaw& law, const TensorSum& T1, const TensorSum& T2) {
  require_same_grid(T1.grid(), T2.grid());
  TensorSum out;
  for (const auto& [f, h] : T1.terms)
    for (const auto& [g, k] : T2.terms) out.terms.emplace_back(law(f, g), law(k, h));
  return out;
}

DoubleField box_involution(const DoubleField& F) {
  std::vector<cplx> v(F.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::conj(F.values()[i]);
  return DoubleField(F.grid(), std::move(v));
}

TensorSum box_involution(const TensorSum& T) {
  TensorSum out;
  for (const auto& [l, r] : T.terms) out.terms.emplace_back(l.conj(), r.conj());
  return out;
}

namespace {

void diamond_guard(const PhaseGrid& grid) {
  if ((grid.n() == 1 && grid.N() > 32) || (grid.n() == 2 && grid.N() > 6) || grid.n() > 2)
    throw SizeGuard("doubled-space products are limited to n=1, N<=32 and n=2, N<=6");
}

}  // namespace

DoubleField diamond_compose(const DoubleField& F, const DoubleField& G) {
  require_same_grid(F.grid(), G.grid());
  const PhaseGrid& grid = F.grid();
  diamond_guard(grid);
  const GroupTables& tab = group_tables(grid);
  std::size_t side = grid.size();
  double w = grid.pairing_weight();
  std::vector<cplx> out(side * side);
  const auto& fv = F.values();
  const auto& gv = G.values();
  parallel_for(side, [&](std::size_t X) {
    cplx* row = &out[X * side];
    for (std::size_t Z = 0; Z < side; ++Z) {
      cplx a = fv[X * side + Z];
      if (a == 0.0) continue;
      const cplx* grow = &gv[tab.sub(X, Z) * side];
      for (std::size_t Y = 0; Y < side; ++Y) row[Y] += a * grow[tab.sub(Y, Z)];
    }
    for (std::size_t Y = 0; Y < side; ++Y) row[Y] *= w;
  });
  return DoubleField(grid, std::move(out));
}

DoubleField diamond_involution(const DoubleField& F) {
  const PhaseGrid& grid = F.grid();
  const GroupTables& tab = group_tables(grid);
  std::size_t side = grid.size();
  std::vector<cplx> v(side * side);
  for (std::size_t X = 0; X < side; ++X)
    for (std::size_t Y = 0; Y < side; ++Y) v[X * side + Y] = std::conj(F(tab.sub(X, Y), tab.neg(Y)));
  return DoubleField(grid, std::move(v));
}

DoubleField diamond_unit(const PhaseGrid& grid) {
  std::size_t side = grid.size();
  std::size_t zero = grid.flat(*origin(grid).grid_index);
  std::vector<cplx> v(side * side);
  for (std::size_t X = 0; X < side; ++X) v[X * side + zero] = 1.0 / grid.pairing_weight();
  return DoubleField(grid, std::move(v));
}

DoubleField kernel_compose(const DoubleField& K, const DoubleField& L) {
  require_same_grid(K.grid(), L.grid());
  const PhaseGrid& grid = K.grid();
  auto side = static_cast<Eigen::Index>(grid.size());
  Eigen::Map<const KernelMatrix> a(K.values().data(), side, side);
  Eigen::Map<const KernelMatrix> b(L.values().data(), side, side);
  KernelMatrix c = (a * b) * grid.pairing_weight();
  return DoubleField(grid, std::vector<cplx>(c.data(), c.data() + c.size()));
}

DoubleField kernel_involution(const DoubleField& K) {
  std::size_t side = K.side();
  std::vector<cplx> v(side * side);
  for (std::size_t X = 0; X < side; ++X)
    for (std::size_t Y = 0; Y < side; ++Y) v[X * side + Y] = std::conj(K(Y, X));
  return DoubleField(K.grid(), std::move(v));
}

DoubleField kernel_unit(const PhaseGrid& grid) {
  std::size_t side = grid.size();
  std::vector<cplx> v(side * side);
  for (std::size_t X = 0; X < side; ++X) v[X * side + X] = 1.0 / grid.pairing_weight();
  return DoubleField(grid, std::move(v));
}

DoubleField kernel_to_crossed(const DoubleField& K) {
  const GroupTables& tab = group_tables(K.grid());
  std::size_t side = K.side();
  std::vector<cplx> v(side * side);
  for (std::size_t X = 0; X < side; ++X)
    for (std::size_t Y = 0; Y < side; ++Y) v[X * side + Y] = K(X, tab.sub(X, Y));
  return DoubleField(K.grid(), std::move(v));
}

cplx double_pair(const DoubleField& F, const DoubleField& G) {
  require_same_grid(F.grid(), G.grid());
  cplx s = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) s += F.values()[i] * G.values()[i];
  double w = F.grid().pairing_weight();
  return s * w * w;
}

cplx twisted_pair(const DoubleField& F, const DoubleField& G) {
  require_same_grid(F.grid(), G.grid());
  const GroupTables& tab = group_tables(F.grid());
  std::size_t side = F.side();
  cplx s = 0.0;
  for (std::size_t X = 0; X < side; ++X)
    for (std::size_t Y = 0; Y < side; ++Y) s += F(X, tab.sub(X, Y)) * G(Y, tab.sub(Y, X));
  double w = F.grid().pairing_weight();
  return s * w * w;
}

DoubleField change_vars_C(const DoubleField& F) {
  const GroupTables& tab = group_tables(F.grid());
  std::size_t side = F.side();
  std::vector<cplx> v(side * side);
  for (std::size_t X = 0; X < side; ++X)
    for (std::size_t Y = 0; Y < side; ++Y) v[X * side + Y] = F(tab.neg(X), tab.sub(X, Y));
  return DoubleField(F.grid(), std::move(v));
}

DoubleField apply_first_slot(const DoubleField& F, SymbolField (*op)(const SymbolField&)) {
  const PhaseGrid& grid = F.grid();
  std::size_t side = grid.size();
  std::vector<cplx> v(side * side);
  parallel_for(side, [&](std::size_t Y) {
    std::vector<cplx> col(side);
    for (std::size_t X = 0; X < side; ++X) col[X] = F(X, Y);
    SymbolField r = op(SymbolField(grid, std::move(col)));
    for (std::size_t X = 0; X < side; ++X) v[X * side + Y] = r[X];
  });
  return DoubleField(grid, std::move(v));
}

DoubleField apply_second_slot(const DoubleField& F, SymbolField (*op)(const SymbolField&)) {
  const PhaseGrid& grid = F.grid();
  std::size_t side = grid.size();
  std::vector<cplx> v(side * side);
  parallel_for(side, [&](std::size_t X) {
    std::vector<cplx> row(F.values().begin() + static_cast<std::ptrdiff_t>(X * side),
                          F.values().begin() + static_cast<std::ptrdiff_t>((X + 1) * side));
    SymbolField r = op(SymbolField(grid, std::move(row)));
    std::copy(r.values().begin(), r.values().end(), v.begin() + static_cast<std::ptrdiff_t>(X * side));
  });
  return DoubleField(grid, std::move(v));
}

}  // namespace moyal
