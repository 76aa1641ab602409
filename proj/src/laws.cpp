#include "moyal/laws.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "moyal/parallel.hpp"

namespace moyal {
namespace {

using spectral::axis_stride;
using spectral::Band;

int centered_difference(int a, int b, int N) {
  int d = (a - b + N / 2) % N;
  if (d < 0) d += N;
  return d - N / 2;
}

struct PairGeometry {
  std::size_t stride_x;
  std::size_t stride_xi;
};

PairGeometry pair_geometry(const PhaseGrid& grid, int i) {
  auto dims = grid.dims();
  return {axis_stride(dims, i), axis_stride(dims, grid.n() + i)};
}

// For kernel entry (a, b) on axis pair i: the slot (m, d) of the partially
// transformed symbol and which of the two samplings (integer or half-step
// midpoint) feeds it.
struct Slot {
  std::size_t src;
  bool half;
};

Slot slot_of(std::size_t q, const PhaseGrid& grid, const PairGeometry& g) {
  int N = grid.N();
  int a = static_cast<int>((q / g.stride_x) % static_cast<std::size_t>(N));
  int b = static_cast<int>((q / g.stride_xi) % static_cast<std::size_t>(N));
  int d = centered_difference(a, b, N);
  int p = d & 1;
  int m = grid.wrap(b + (d - p) / 2);
  std::size_t src = q - static_cast<std::size_t>(a) * g.stride_x - static_cast<std::size_t>(b) * g.stride_xi +
                    static_cast<std::size_t>(m) * g.stride_x +
                    static_cast<std::size_t>(d + N / 2) * g.stride_xi;
  return {src, p == 1};
}

// Symbol -> kernel along axis pair (x_i, xi_i):
// K(a, b) = delta/(2 pi) sum_k exp(i d delta xi_k) f((a+b)/2, xi_k).
void kernel_pair_forward(std::vector<cplx>& data, const PhaseGrid& grid, int i) {
  auto dims = grid.dims();
  int n = grid.n();
  std::vector<cplx> half = data;
  spectral::shift(half, dims, i, 0.5, Band::Lower);
  spectral::centered_dft(data, dims, n + i, +1);
  spectral::centered_dft(half, dims, n + i, +1);
  double scale = grid.delta() / (2.0 * kPi);
  auto geo = pair_geometry(grid, i);
  std::vector<cplx> out(data.size());
  for (std::size_t q = 0; q < out.size(); ++q) {
    Slot s = slot_of(q, grid, geo);
    out[q] = scale * (s.half ? half[s.src] : data[s.src]);
  }
  data.swap(out);
}

// Adjoint of kernel_pair_forward.
void kernel_pair_adjoint(std::vector<cplx>& data, const PhaseGrid& grid, int i) {
  auto dims = grid.dims();
  int n = grid.n();
  auto geo = pair_geometry(grid, i);
  std::vector<cplx> whole(data.size()), half(data.size());
  for (std::size_t q = 0; q < data.size(); ++q) {
    Slot s = slot_of(q, grid, geo);
    (s.half ? half : whole)[s.src] = data[q];
  }
  spectral::centered_dft(whole, dims, n + i, -1);
  spectral::centered_dft(half, dims, n + i, -1);
  spectral::shift(half, dims, i, -0.5, Band::Lower);
  double scale = grid.delta() / (2.0 * kPi);
  for (std::size_t q = 0; q < data.size(); ++q) data[q] = scale * (whole[q] + half[q]);
}

// Phase of e_P on the Nyquist lines of an axis pair: i where e_P # e_{-P}
// would otherwise be -1 (one index at -N/2, the other odd).
cplx nyquist_phase(const PhaseGrid& grid, const std::vector<int>& steps) {
  int n = grid.n();
  int low = -grid.N() / 2;
  cplx t = 1.0;
  for (int j = 0; j < n; ++j) {
    int a = steps[static_cast<std::size_t>(j)];
    int b = steps[static_cast<std::size_t>(n + j)];
    bool flip = (a == low && b != low && (b & 1)) || (b == low && a != low && (a & 1));
    if (flip) t *= cplx(0.0, 1.0);
  }
  return t;
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

CompositionLaw pointwise_law() {
  return {"pointwise", pointwise_compose, true, false, std::nullopt, false, {}, {}};
}

CompositionLaw weyl_law() {
  return {"weyl", weyl_compose_fast, false, true, std::nullopt, true, weyl_op_kernel, kernel_to_symbol};
}

CompositionLaw weyl_direct_law() {
  return {"weyl-direct",
          [](const SymbolField& f, const SymbolField& g) { return weyl_compose_direct(f, g); },
          false,
          true,
          std::nullopt,
          false,
          weyl_op_kernel,
          kernel_to_symbol};
}

void require_law_dimension(const CompositionLaw& law, const PhaseGrid& grid) {
  if (law.required_n && *law.required_n != grid.n())
    throw DimensionMismatch("law " + law.name + " needs n = " + std::to_string(*law.required_n));
}

SymbolField pointwise_compose(const SymbolField& f, const SymbolField& g) {
  require_same_grid(f.grid(), g.grid());
  std::vector<cplx> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i] * g[i];
  return SymbolField(f.grid(), std::move(v));
}

double weyl_direct_prefactor(const PhaseGrid& grid) {
  double h = grid.delta() / 2.0;
  return std::pow(kPi, -2.0 * grid.n()) * std::pow(h, 4.0 * grid.n());
}

SymbolField weyl_compose_direct(const SymbolField& f, const SymbolField& g, Readout readout) {
  require_same_grid(f.grid(), g.grid());
  const PhaseGrid& grid = f.grid();
  if ((grid.n() == 1 && grid.N() > 32) || (grid.n() == 2 && grid.N() > 8) || grid.n() > 2)
    throw SizeGuard("direct quadrature is limited to n=1, N<=32 and n=2, N<=8");
  if (readout == Readout::GridSamples)
    return quadrature::grid_samples(grid, quadrature::refined_product(f, g, nullptr));
  SymbolField folded = quadrature::band_fold(
      grid, quadrature::refined_product(nyquist_rephase(f, false), nyquist_rephase(g, false), nullptr));
  return nyquist_rephase(folded, true);
}

namespace {

// Flat indices and phases of the grid points where nyquist_phase differs from 1.
struct NyquistTable {
  std::vector<std::size_t> index;
  std::vector<cplx> phase;
};

const NyquistTable& nyquist_table(const PhaseGrid& grid) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<NyquistTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{grid.n(), grid.N()}];
  if (!slot) {
    slot = std::make_unique<NyquistTable>();
    for (std::size_t q = 0; q < grid.size(); ++q) {
      cplx t = nyquist_phase(grid, steps_of(grid, grid_point(grid, q)));
      if (t == 1.0) continue;
      slot->index.push_back(q);
      slot->phase.push_back(t);
    }
  }
  return *slot;
}

}  // namespace

SymbolField nyquist_rephase(const SymbolField& f, bool inverse) {
  const PhaseGrid& grid = f.grid();
  const NyquistTable& table = nyquist_table(grid);
  if (table.index.empty()) return f;
  std::vector<cplx> v = symplectic_fourier(f).values();
  for (std::size_t k = 0; k < table.index.size(); ++k)
    v[table.index[k]] *= inverse ? std::conj(table.phase[k]) : table.phase[k];
  return symplectic_fourier(SymbolField(grid, std::move(v)));
}

OperatorKernel weyl_op_kernel(const SymbolField& f) {
  const PhaseGrid& grid = f.grid();
  std::vector<cplx> data = nyquist_rephase(f, false).values();
  for (int i = 0; i < grid.n(); ++i) kernel_pair_forward(data, grid, i);
  auto rows = static_cast<Eigen::Index>(grid.config_size());
  KernelMatrix m = Eigen::Map<KernelMatrix>(data.data(), rows, rows);
  return {grid, std::move(m)};
}

SymbolField kernel_to_symbol(const OperatorKernel& K) {
  const PhaseGrid& grid = K.grid;
  auto rows = static_cast<Eigen::Index>(grid.config_size());
  if (K.matrix.rows() != rows || K.matrix.cols() != rows)
    throw DimensionMismatch("kernel size differs from N^n x N^n");
  std::vector<cplx> data(K.matrix.data(), K.matrix.data() + K.matrix.size());
  for (int i = 0; i < grid.n(); ++i) kernel_pair_adjoint(data, grid, i);
  double scale = std::pow(2.0 * kPi, grid.n());
  for (auto& v : data) v *= scale;
  return nyquist_rephase(SymbolField(grid, std::move(data)), true);
}

SymbolField weyl_compose_fast(const SymbolField& f, const SymbolField& g) {
  require_same_grid(f.grid(), g.grid());
  const PhaseGrid& grid = f.grid();
  OperatorKernel kf = weyl_op_kernel(f);
  OperatorKernel kg = weyl_op_kernel(g);
  KernelMatrix prod = (kf.matrix * kg.matrix) * std::pow(grid.delta(), grid.n());
  return kernel_to_symbol({grid, std::move(prod)});
}

SymbolField theta_translate(const CompositionLaw& law, const SymbolField& f, const PhasePoint& Z) {
  const PhaseGrid& grid = f.grid();
  if (!Z.on_grid()) throw NonGridPoint();
  SymbolField left = plane_wave(grid, negate(grid, Z));
  SymbolField right = plane_wave(grid, Z);
  return law(law(left, f), right);
}

namespace {

cplx plain_sum(const SymbolField& f) {
  cplx s = 0.0;
  for (const auto& v : f.values()) s += v;
  return s;
}

double pairwise_relative(cplx a, cplx b) {
  return std::abs(a - b) / (std::max(std::abs(a), std::abs(b)) + 1e-300);
}

}  // namespace

double check_integral_identity(const CompositionLaw& law, const SymbolField& f, const SymbolField& g) {
  cplx lhs = plain_sum(law(f, g));
  cplx rhs = plain_sum(pointwise_compose(f, g));
  return std::abs(lhs - rhs) / (std::abs(rhs) + 1e-300);
}

double check_cyclicity(const CompositionLaw& law, const SymbolField& f1, const SymbolField& f2,
                       const SymbolField& f3) {
  cplx a = pair(law(f1, f2), f3);
  cplx b = pair(f1, law(f2, f3));
  cplx c = pair(f2, law(f3, f1));
  return std::max({pairwise_relative(a, b), pairwise_relative(b, c), pairwise_relative(a, c)});
}

HypothesisC hypothesis_c_sum(const std::function<SymbolField(const PhasePoint&)>& theta,
                             const SymbolField& f, const SymbolField& g) {
  require_same_grid(f.grid(), g.grid());
  const PhaseGrid& grid = f.grid();
  double w = grid.pairing_weight();
  std::vector<cplx> partial(grid.size());
  parallel_for(grid.size(), [&](std::size_t z) { partial[z] = pair(theta(grid_point(grid, z)), g); });
  cplx lhs = 0.0;
  for (const auto& p : partial) lhs += p;
  lhs *= w;
  cplx rhs = (w * plain_sum(f)) * (w * plain_sum(g));
  return {lhs, rhs, std::abs(lhs - rhs) / (std::abs(rhs) + 1e-300)};
}

HypothesisC check_hypothesis_c(const CompositionLaw& law, const SymbolField& f, const SymbolField& g) {
  return hypothesis_c_sum([&](const PhasePoint& Z) { return theta_translate(law, f, Z); }, f, g);
}

namespace quadrature {
namespace {

struct Refined {
  int n, N, M;
  double h, delta;
  std::size_t config;
};

Refined refined_of(const PhaseGrid& grid) {
  Refined r{grid.n(), grid.N(), 2 * grid.N(), grid.delta() / 2.0, grid.delta(), 1};
  for (int j = 0; j < r.n; ++j) r.config *= static_cast<std::size_t>(r.M);
  return r;
}

std::vector<double> refined_coords(const Refined& r) {
  std::vector<double> c(static_cast<std::size_t>(r.M));
  for (int j = 0; j < r.M; ++j) c[static_cast<std::size_t>(j)] = (j - r.N) * r.h;
  return c;
}

std::vector<double> grid_coords(const PhaseGrid& grid) {
  std::vector<double> c(static_cast<std::size_t>(grid.N()));
  for (int j = 0; j < grid.N(); ++j) c[static_cast<std::size_t>(j)] = grid.coordinate(j);
  return c;
}

}  // namespace

std::vector<cplx> refine(const SymbolField& f) {
  const PhaseGrid& grid = f.grid();
  Refined r = refined_of(grid);
  auto fine = refined_coords(r);
  auto dims = grid.dims();
  std::vector<cplx> data = f.values();
  for (int a = 0; a < grid.axes(); ++a) {
    Band band = axis_band(grid, a);
    Eigen::MatrixXcd up = spectral::synthesis_matrix(fine, r.N, r.delta, band) *
                          spectral::analysis_matrix(r.N, r.delta, r.delta, band);
    data = spectral::apply_along(data, dims, a, up);
  }
  return data;
}

std::vector<cplx> refined_product(const SymbolField& f, const SymbolField& g, const FluxFn* flux) {
  require_same_grid(f.grid(), g.grid());
  const PhaseGrid& grid = f.grid();
  Refined r = refined_of(grid);
  int n = r.n;
  spectral::Dims fdims(static_cast<std::size_t>(2 * n), r.M);
  std::vector<cplx> ft = refine(f);
  std::vector<cplx> gt = refine(g);
  for (int a = n; a < 2 * n; ++a) {
    spectral::centered_dft(ft, fdims, a, +1);
    spectral::centered_dft(gt, fdims, a, -1);
  }

  std::vector<std::vector<int>> cfg(r.config, std::vector<int>(static_cast<std::size_t>(n)));
  for (std::size_t c = 0; c < r.config; ++c) {
    std::size_t rem = c;
    for (int k = n - 1; k >= 0; --k) {
      cfg[c][static_cast<std::size_t>(k)] = static_cast<int>(rem % static_cast<std::size_t>(r.M));
      rem /= static_cast<std::size_t>(r.M);
    }
  }
  auto flat = [&](const std::vector<int>& v) {
    std::size_t q = 0;
    for (int k = 0; k < n; ++k) q = q * static_cast<std::size_t>(r.M) + static_cast<std::size_t>(((v[static_cast<std::size_t>(k)] % r.M) + r.M) % r.M);
    return q;
  };
  // diff[a][b]: index of the difference a - b; shift[a][d]: index of a + d.
  std::vector<std::size_t> diff(r.config * r.config), shifted(r.config * r.config);
  std::vector<int> tmp(static_cast<std::size_t>(n));
  for (std::size_t a = 0; a < r.config; ++a)
    for (std::size_t b = 0; b < r.config; ++b) {
      for (int k = 0; k < n; ++k) tmp[static_cast<std::size_t>(k)] = cfg[a][static_cast<std::size_t>(k)] - cfg[b][static_cast<std::size_t>(k)] + r.N;
      diff[a * r.config + b] = flat(tmp);
      for (int k = 0; k < n; ++k) tmp[static_cast<std::size_t>(k)] = cfg[a][static_cast<std::size_t>(k)] + cfg[b][static_cast<std::size_t>(k)] - r.N;
      shifted[a * r.config + b] = flat(tmp);
    }
  std::vector<double> coord(r.config * static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < r.config; ++c)
    for (int k = 0; k < n; ++k) coord[c * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] = (cfg[c][static_cast<std::size_t>(k)] - r.N) * r.h;

  double pref = weyl_direct_prefactor(grid);
  spectral::Dims qdims(static_cast<std::size_t>(n), r.M);
  std::vector<cplx> out(r.config * r.config);
  parallel_for(r.config, [&](std::size_t x) {
    std::vector<cplx> q(r.config);
    const double* xc = &coord[x * static_cast<std::size_t>(n)];
    for (std::size_t y = 0; y < r.config; ++y) {
      std::size_t v = diff[x * r.config + y];
      const double* yc = &coord[y * static_cast<std::size_t>(n)];
      for (std::size_t d = 0; d < r.config; ++d) {
        std::size_t z = shifted[y * r.config + d];
        std::size_t u = diff[x * r.config + z];
        cplx val = ft[y * r.config + u] * gt[z * r.config + v];
        if (flux) val *= std::polar(1.0, -(*flux)(xc, yc, &coord[z * static_cast<std::size_t>(n)]));
        q[d] += val;
      }
    }
    for (int k = 0; k < n; ++k) spectral::centered_dft(q, qdims, k, +1);
    for (std::size_t xi = 0; xi < r.config; ++xi) out[x * r.config + xi] = pref * q[xi];
  });
  return out;
}

SymbolField band_fold(const PhaseGrid& grid, const std::vector<cplx>& refined) {
  Refined r = refined_of(grid);
  int n = r.n;
  spectral::Dims dims(static_cast<std::size_t>(2 * n), r.M);
  std::vector<cplx> data = refined;
  for (int a = 0; a < 2 * n; ++a)
    data = spectral::apply_along(data, dims, a,
                                 spectral::analysis_matrix(r.M, r.h, r.delta, axis_band(grid, a)));
  auto lower = spectral::band_frequencies(r.M, Band::Lower);
  auto upper = spectral::band_frequencies(r.M, Band::Upper);
  auto wraps = [&](long c) { return floor_div(c + r.N / 2, r.N); };
  std::size_t total = data.size();
  for (std::size_t q = 0; q < total; ++q) {
    std::size_t rem = q;
    std::vector<int> idx(static_cast<std::size_t>(2 * n));
    for (int a = 2 * n - 1; a >= 0; --a) {
      idx[static_cast<std::size_t>(a)] = static_cast<int>(rem % static_cast<std::size_t>(r.M));
      rem /= static_cast<std::size_t>(r.M);
    }
    long parity = 0;
    for (int j = 0; j < n; ++j) {
      long c_xi = lower[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
      long c_x = -upper[static_cast<std::size_t>(idx[static_cast<std::size_t>(n + j)])];
      parity += c_x * wraps(c_xi) + c_xi * wraps(c_x);
    }
    if (parity % 2 != 0) data[q] = -data[q];
  }
  auto coarse = grid_coords(grid);
  for (int a = 0; a < 2 * n; ++a)
    data = spectral::apply_along(data, dims, a,
                                 spectral::synthesis_matrix(coarse, r.M, r.delta, axis_band(grid, a)));
  return SymbolField(grid, std::move(data));
}

SymbolField grid_samples(const PhaseGrid& grid, const std::vector<cplx>& refined) {
  Refined r = refined_of(grid);
  std::vector<cplx> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto idx = grid.multi_index(i);
    std::size_t q = 0;
    for (int j : idx) q = q * static_cast<std::size_t>(r.M) + static_cast<std::size_t>(2 * j);
    v[i] = refined[q];
  }
  return SymbolField(grid, std::move(v));
}

SymbolField read_out(const PhaseGrid& grid, const std::vector<cplx>& refined, Readout readout) {
  return readout == Readout::BandFold ? band_fold(grid, refined) : grid_samples(grid, refined);
}

}  // namespace quadrature
}  // namespace moyal
