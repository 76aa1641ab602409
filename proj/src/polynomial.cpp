#include "moyal/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "moyal/core.hpp"

namespace moyal {

Polynomial::Polynomial(int n, std::vector<Term> terms) : n_(n), terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (static_cast<int>(t.powers.size()) != n_) throw FormatError("polynomial term has wrong arity");
  normalize();
}

Polynomial Polynomial::constant(int n, double c) {
  return Polynomial(n, {{std::vector<int>(static_cast<std::size_t>(n), 0), c}});
}

Polynomial Polynomial::variable(int n, int var, double c) {
  std::vector<int> p(static_cast<std::size_t>(n), 0);
  p[static_cast<std::size_t>(var)] = 1;
  return Polynomial(n, {{p, c}});
}

void Polynomial::normalize() {
  std::map<std::vector<int>, double> acc;
  for (const auto& t : terms_) {
    for (int p : t.powers)
      if (p < 0) throw FormatError("negative exponent in polynomial");
    acc[t.powers] += t.coeff;
  }
  terms_.clear();
  for (const auto& [p, c] : acc)
    if (c != 0.0) terms_.push_back({p, c});
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& t : terms_) {
    int s = 0;
    for (int p : t.powers) s += p;
    d = std::max(d, s);
  }
  return d;
}

bool Polynomial::is_zero(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [tol](const Term& t) { return std::abs(t.coeff) <= tol; });
}

double Polynomial::operator()(const double* x) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    double m = t.coeff;
    for (int k = 0; k < n_; ++k)
      for (int e = 0; e < t.powers[static_cast<std::size_t>(k)]; ++e) m *= x[k];
    s += m;
  }
  return s;
}

Polynomial Polynomial::derivative(int var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    int p = t.powers[static_cast<std::size_t>(var)];
    if (p == 0) continue;
    Term d = t;
    d.powers[static_cast<std::size_t>(var)] = p - 1;
    d.coeff *= p;
    out.push_back(d);
  }
  return Polynomial(n_, std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (o.n_ != n_) throw DimensionMismatch("polynomials in different variable counts");
  std::vector<Term> t = terms_;
  t.insert(t.end(), o.terms_.begin(), o.terms_.end());
  return Polynomial(n_, std::move(t));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * -1.0; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (o.n_ != n_) throw DimensionMismatch("polynomials in different variable counts");
  std::vector<Term> t;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      Term c{a.powers, a.coeff * b.coeff};
      for (int k = 0; k < n_; ++k) c.powers[static_cast<std::size_t>(k)] += b.powers[static_cast<std::size_t>(k)];
      t.push_back(c);
    }
  return Polynomial(n_, std::move(t));
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<Term> t = terms_;
  for (auto& x : t) x.coeff *= s;
  return Polynomial(n_, std::move(t));
}

nlohmann::json Polynomial::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : terms_) arr.push_back({{"var_powers", t.powers}, {"coeff", t.coeff}});
  return arr;
}

Polynomial Polynomial::from_json(const nlohmann::json& j, int n) {
  if (!j.is_array()) throw FormatError("polynomial must be a list of terms");
  std::vector<Term> terms;
  try {
    for (const auto& t : j) terms.push_back({t.at("var_powers").get<std::vector<int>>(), t.at("coeff").get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad polynomial term: ") + e.what());
  }
  return Polynomial(n, std::move(terms));
}

}  // namespace moyal
