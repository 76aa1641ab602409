#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "moyal/core.hpp"

// One-dimensional spectral operations applied along a single axis of a
// row-major array.
namespace moyal::spectral {

using Dims = std::vector<int>;

std::size_t total_size(const Dims& dims);
std::size_t axis_stride(const Dims& dims, int axis);

// out[k] = sum_j exp(sign * 2*pi*i*(j - L/2)*(k - L/2)/L) in[j] along `axis`.
void centered_dft(std::vector<cplx>& data, const Dims& dims, int axis, int sign);

// Band of integer frequencies used to interpolate samples on a centered grid.
// Lower: [-L/2, L/2).  Upper: (-L/2, L/2].
enum class Band { Lower, Upper };

// Trigonometric interpolation shift: value at index j becomes the
// interpolant at j + t (in grid steps).
void shift(std::vector<cplx>& data, const Dims& dims, int axis, double t, Band band);

// Applies a dense (out_len x in_len) matrix along `axis`; dims[axis] is
// updated to out_len.
std::vector<cplx> apply_along(const std::vector<cplx>& data, Dims& dims, int axis,
                              const Eigen::MatrixXcd& m);

// Plane-wave coefficient extraction on a centered grid of `len` points with
// step `step`: row k holds exp(-i*phi_k*omega*x_j)/len, with phi_k running
// over the band and omega the angular unit of one frequency step.
Eigen::MatrixXcd analysis_matrix(int len, double step, double omega, Band band);

// Evaluation of band coefficients at arbitrary coordinates.
Eigen::MatrixXcd synthesis_matrix(const std::vector<double>& coords, int band_len, double omega,
                                  Band band);

// Frequencies of a band of `len` integers.
std::vector<int> band_frequencies(int len, Band band);

}  // namespace moyal::spectral
