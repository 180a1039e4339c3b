#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cuspgeom/projlin/mat4.hpp"

namespace cuspgeom::projlin {

// Univariate polynomial, coefficients in ascending degree; trailing zeros trimmed.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> ascending) : c_(std::move(ascending)) { trim(); }

  static Polynomial monomial(int degree, const T& coeff = T(1)) {
    std::vector<T> c(degree + 1);
    c[degree] = coeff;
    return Polynomial(c);
  }

  // (t - r)
  static Polynomial linear_root(const T& r) { return Polynomial({-r, T(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero polynomial
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : T(0); }
  const T& leading() const { return c_.back(); }

  Polynomial monic() const {
    if (c_.empty()) return *this;
    std::vector<T> c = c_;
    T lead = c.back();
    for (auto& v : c) v /= lead;
    return Polynomial(c);
  }

  T eval(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Mat4<T> eval(const Mat4<T>& m) const {
    Mat4<T> acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * m + Mat4<T>::identity() * (*it);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<long>(k));
    return Polynomial(d);
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<T> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(c);
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return Polynomial(c);
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  // Quotient and remainder by a nonzero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw Error(ErrorKind::InvalidParameter, "polynomial division by zero");
    std::vector<T> r = c_;
    const int dd = d.degree();
    if (degree() < dd) return {Polynomial(), *this};
    std::vector<T> q(degree() - dd + 1);
    for (int k = degree() - dd; k >= 0; --k) {
      T f = r[k + dd] / d.leading();
      q[k] = f;
      for (int j = 0; j <= dd; ++j) r[k + j] -= f * d.c_[j];
      r[k + dd] = T(0);
    }
    return {Polynomial(q), Polynomial(r)};
  }

  // Drops coefficients below tol relative to the largest one (float regime cleanup).
  Polynomial chop(double tol) const {
    double scale = 0.0;
    for (const auto& v : c_) scale = std::max(scale, magnitude(v));
    std::vector<T> c = c_;
    for (auto& v : c)
      if (magnitude(v) <= tol * scale) v = T(0);
    return Polynomial(c);
  }

 private:
  void trim() {
    while (!c_.empty() && is_exact_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

// Monic gcd over Q.
Polynomial<Rational> poly_gcd(Polynomial<Rational> a, Polynomial<Rational> b);

using cuspgeom::to_string;

// Human-readable, descending powers: "t^4 - 3*t^2 + 1/2".
std::string to_string(const Polynomial<Rational>& p, const char* var = "t");
std::string to_string(const Polynomial<double>& p, const char* var = "t");

// det(t I - M), monic, by Faddeev-LeVerrier.
template <class T>
Polynomial<T> characteristic_polynomial(const Mat4<T>& a) {
  std::vector<T> c(5);
  c[4] = T(1);
  Mat4<T> mk;  // M_0 = 0
  for (int k = 1; k <= 4; ++k) {
    mk = a * mk + Mat4<T>::identity() * c[4 - k + 1];
    Mat4<T> amk = a * mk;
    c[4 - k] = -amk.trace() / T(k);
  }
  return Polynomial<T>(c);
}

// Exact minimal polynomial: first Krylov dependency among vec(I), vec(M), vec(M^2), ...
Polynomial<Rational> minimal_polynomial(const Mat4<Rational>& m);

// Float minimal polynomial. A power counts as dependent when the smallest singular value of the
// scaled Krylov matrix is <= tol relative to the largest; ratios in (tol, 1e3*tol] are refused as
// ill-conditioned.
Polynomial<double> minimal_polynomial(const Mat4<double>& m, double tol = 1e-9);

}  // namespace cuspgeom::projlin
