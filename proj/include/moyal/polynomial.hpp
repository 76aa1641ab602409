#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace moyal {

// Sparse real polynomial in n variables.
class Polynomial {
 public:
  struct Term {
    std::vector<int> powers;
    double coeff;
  };

  explicit Polynomial(int n = 0) : n_(n) {}
  Polynomial(int n, std::vector<Term> terms);

  static Polynomial constant(int n, double c);
  // c * x_var.
  static Polynomial variable(int n, int var, double c = 1.0);

  int variables() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  int degree() const;
  bool is_zero(double tol = 0.0) const;

  double operator()(const double* x) const;
  double operator()(const std::vector<double>& x) const { return (*this)(x.data()); }

  Polynomial derivative(int var) const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(double s) const;

  nlohmann::json to_json() const;
  static Polynomial from_json(const nlohmann::json& j, int n);

 private:
  void normalize();

  int n_;
  std::vector<Term> terms_;
};

}  // namespace moyal
