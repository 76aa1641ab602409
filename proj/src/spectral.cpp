#include "moyal/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace moyal::spectral {
namespace {

struct FftwBuffer {
  explicit FftwBuffer(int n) : ptr(fftw_alloc_complex(static_cast<std::size_t>(n))) {}
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* ptr;
};

// Plans are created once per (length, sign) under a lock; execution with the
// new-array interface is thread safe.
fftw_plan plan_for(int len, int sign) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(len, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  FftwBuffer in(len), out(len);
  fftw_plan p = fftw_plan_dft_1d(len, in.ptr, out.ptr, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                 FFTW_ESTIMATE);
  plans.emplace(key, p);
  return p;
}

template <class F>
void for_each_line(const Dims& dims, int axis, F&& fn) {
  std::size_t stride = axis_stride(dims, axis);
  std::size_t len = static_cast<std::size_t>(dims[axis]);
  std::size_t outer = total_size(dims) / (stride * len);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t i = 0; i < stride; ++i) fn(o * len * stride + i, stride);
}

// Runs a 1-D transform along every line of `axis`. `pre` and `post` adjust
// a line in place before and after the FFT.
template <class Pre, class Post>
void fft_lines(std::vector<cplx>& data, const Dims& dims, int axis, int sign, Pre&& pre,
               Post&& post) {
  int len = dims[axis];
  fftw_plan plan = plan_for(len, sign);
  FftwBuffer in(len), out(len);
  auto* a = reinterpret_cast<cplx*>(in.ptr);
  auto* b = reinterpret_cast<cplx*>(out.ptr);
  for_each_line(dims, axis, [&](std::size_t base, std::size_t stride) {
    for (int j = 0; j < len; ++j) a[j] = data[base + j * stride];
    pre(a);
    fftw_execute_dft(plan, in.ptr, out.ptr);
    post(b);
    for (int j = 0; j < len; ++j) data[base + j * stride] = b[j];
  });
}

int band_rep(int bin, int len, Band band) {
  int half = len / 2;
  if (band == Band::Lower) return bin < half ? bin : bin - len;
  return bin <= half ? bin : bin - len;
}

}  // namespace

std::size_t total_size(const Dims& dims) {
  std::size_t s = 1;
  for (int d : dims) s *= static_cast<std::size_t>(d);
  return s;
}

std::size_t axis_stride(const Dims& dims, int axis) {
  std::size_t s = 1;
  for (std::size_t a = static_cast<std::size_t>(axis) + 1; a < dims.size(); ++a)
    s *= static_cast<std::size_t>(dims[a]);
  return s;
}

void centered_dft(std::vector<cplx>& data, const Dims& dims, int axis, int sign) {
  int len = dims[axis];
  double global = (len / 2) % 2 == 0 ? 1.0 : -1.0;
  fft_lines(
      data, dims, axis, sign,
      [len](cplx* a) {
        for (int j = 1; j < len; j += 2) a[j] = -a[j];
      },
      [len, global](cplx* b) {
        for (int k = 0; k < len; ++k) b[k] *= (k % 2 == 0 ? global : -global);
      });
}

void shift(std::vector<cplx>& data, const Dims& dims, int axis, double t, Band band) {
  int len = dims[axis];
  std::vector<cplx> phase(len);
  for (int k = 0; k < len; ++k)
    phase[k] = std::polar(1.0 / len, 2.0 * kPi * band_rep(k, len, band) * t / len);
  std::vector<cplx> line(len);
  fftw_plan fwd = plan_for(len, -1);
  fftw_plan bwd = plan_for(len, +1);
  FftwBuffer in(len), out(len);
  auto* a = reinterpret_cast<cplx*>(in.ptr);
  auto* b = reinterpret_cast<cplx*>(out.ptr);
  for_each_line(dims, axis, [&](std::size_t base, std::size_t stride) {
    for (int j = 0; j < len; ++j) a[j] = data[base + j * stride];
    fftw_execute_dft(fwd, in.ptr, out.ptr);
    for (int k = 0; k < len; ++k) a[k] = b[k] * phase[k];
    fftw_execute_dft(bwd, in.ptr, out.ptr);
    for (int j = 0; j < len; ++j) data[base + j * stride] = b[j];
  });
}

std::vector<cplx> apply_along(const std::vector<cplx>& data, Dims& dims, int axis,
                              const Eigen::MatrixXcd& m) {
  Dims out_dims = dims;
  out_dims[axis] = static_cast<int>(m.rows());
  std::size_t in_stride = axis_stride(dims, axis);
  std::size_t in_len = static_cast<std::size_t>(dims[axis]);
  std::size_t out_len = static_cast<std::size_t>(m.rows());
  std::size_t outer = total_size(dims) / (in_stride * in_len);
  std::vector<cplx> out(outer * out_len * in_stride);
  Eigen::VectorXcd line(in_len);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < in_stride; ++i) {
      for (std::size_t j = 0; j < in_len; ++j) line[j] = data[o * in_len * in_stride + j * in_stride + i];
      Eigen::VectorXcd r = m * line;
      for (std::size_t k = 0; k < out_len; ++k) out[o * out_len * in_stride + k * in_stride + i] = r[k];
    }
  }
  dims = out_dims;
  return out;
}

std::vector<int> band_frequencies(int len, Band band) {
  std::vector<int> f(len);
  int lo = band == Band::Lower ? -len / 2 : -len / 2 + 1;
  for (int k = 0; k < len; ++k) f[k] = lo + k;
  return f;
}

Eigen::MatrixXcd analysis_matrix(int len, double step, double omega, Band band) {
  auto freqs = band_frequencies(len, band);
  Eigen::MatrixXcd a(len, len);
  for (int k = 0; k < len; ++k)
    for (int j = 0; j < len; ++j) {
      double x = (j - len / 2) * step;
      a(k, j) = std::polar(1.0 / len, -freqs[k] * omega * x);
    }
  return a;
}

Eigen::MatrixXcd synthesis_matrix(const std::vector<double>& coords, int band_len, double omega,
                                  Band band) {
  auto freqs = band_frequencies(band_len, band);
  Eigen::MatrixXcd s(static_cast<Eigen::Index>(coords.size()), band_len);
  for (std::size_t j = 0; j < coords.size(); ++j)
    for (int k = 0; k < band_len; ++k) s(static_cast<Eigen::Index>(j), k) = std::polar(1.0, freqs[k] * omega * coords[j]);
  return s;
}

}  // namespace moyal::spectral
