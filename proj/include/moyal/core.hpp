#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace moyal {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridError : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  GridMismatch() : Error("fields live on different grids") {}
  using Error::Error;
};

class NonGridPoint : public Error {
 public:
  NonGridPoint() : Error("phase point does not lie on the grid") {}
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SizeGuard : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class IdempotencyFailure : public Error {
 public:
  IdempotencyFailure(double defect, double threshold)
      : Error("window idempotency defect " + std::to_string(defect) + " exceeds " +
              std::to_string(threshold)),
        defect_(defect) {}
  double defect() const { return defect_; }

 private:
  double defect_;
};

}  // namespace moyal
