#pragma once

#include <array>

#include "cuspgeom/projlin/mat4.hpp"

namespace cuspgeom::projlin {

using Point3 = std::array<double, 3>;

// Point of RP^3 in homogeneous coordinates.
template <class T>
class ProjPoint {
 public:
  explicit ProjPoint(const Vec4<T>& x) : x_(x) {
    bool any = false;
    for (const auto& v : x_) any = any || !is_exact_zero(v);
    if (!any) throw Error(ErrorKind::InvalidParameter, "homogeneous coordinates are all zero");
  }

  // Affine point (x1,x2,x3) in the chart x4 = 1.
  static ProjPoint affine(const T& x1, const T& x2, const T& x3) { return ProjPoint({x1, x2, x3, T(1)}); }

  const Vec4<T>& coords() const { return x_; }

  // Representative whose last nonzero coordinate is 1.
  ProjPoint canonical() const {
    Vec4<T> c = x_;
    for (int i = 3; i >= 0; --i) {
      if (!is_exact_zero(c[i])) {
        T d = c[i];
        for (auto& v : c) v /= d;
        break;
      }
    }
    return ProjPoint(c);
  }

  bool is_finite() const {
    if constexpr (is_exact_v<T>) return !is_exact_zero(x_[3]);
    else return x_[3] != 0.0;
  }

  // Exact: proportionality. Float: after canonicalization, entrywise within tol of the scale.
  bool equals(const ProjPoint& o, double tol = 1e-12) const {
    if constexpr (is_exact_v<T>) {
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (x_[i] * o.x_[j] != x_[j] * o.x_[i]) return false;
      return true;
    } else {
      int k = 0;
      for (int i = 1; i < 4; ++i)
        if (std::fabs(x_[i]) > std::fabs(x_[k])) k = i;
      if (o.x_[k] == 0.0) return false;
      double lam = o.x_[k] / x_[k];
      double scale = 0.0;
      for (int i = 0; i < 4; ++i) scale = std::max(scale, std::fabs(o.x_[i]));
      for (int i = 0; i < 4; ++i)
        if (std::fabs(o.x_[i] - lam * x_[i]) > tol * scale) return false;
      return true;
    }
  }

 private:
  Vec4<T> x_;
};

// Invertible 4x4 matrix modulo nonzero scalars.
template <class T>
class ProjMap {
 public:
  explicit ProjMap(const Mat4<T>& m) : m_(m) {
    if constexpr (is_exact_v<T>) {
      if (is_exact_zero(determinant(m_))) throw Error(ErrorKind::Singular, "projective map needs a nonzero determinant");
    } else {
      (void)inverse(m_);  // throws Singular
    }
  }

  static ProjMap identity() { return ProjMap(Mat4<T>::identity()); }

  const Mat4<T>& matrix() const { return m_; }

  ProjMap inverse_map() const { return ProjMap(inverse(m_)); }

  friend ProjMap operator*(const ProjMap& a, const ProjMap& b) { return ProjMap(a.m_ * b.m_); }

  ProjPoint<T> apply(const ProjPoint<T>& p) const { return ProjPoint<T>(m_ * p.coords()); }

  // Representative scaled by its entry of largest magnitude (first such in row-major order).
  ProjMap canonical() const {
    int bi = 0, bj = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (abs_value(m_(i, j)) > abs_value(m_(bi, bj))) {
          bi = i;
          bj = j;
        }
    T d = m_(bi, bj);
    return ProjMap(m_ / d);
  }

 private:
  Mat4<T> m_;
};

// Position of the largest-magnitude entry (first in row-major order).
template <class T>
std::pair<int, int> argmax_entry(const Mat4<T>& m) {
  int bi = 0, bj = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (abs_value(m(i, j)) > abs_value(m(bi, bj))) {
        bi = i;
        bj = j;
      }
  return {bi, bj};
}

// True iff b = lambda * a for a nonzero scalar. Float: entrywise error <= tol * max|b|
// with lambda fixed by the largest entry of a.
template <class T>
bool proj_equal_matrices(const Mat4<T>& a, const Mat4<T>& b, double tol = 1e-12) {
  auto [i, j] = argmax_entry(a);
  if (is_exact_zero(a(i, j)) || is_exact_zero(b(i, j))) return a.is_zero() && b.is_zero();
  T lam = b(i, j) / a(i, j);
  if constexpr (is_exact_v<T>) {
    return b == a * lam;
  } else {
    const double scale = b.max_abs();
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        if (std::fabs(b(r, c) - lam * a(r, c)) > tol * scale) return false;
    return true;
  }
}

template <class T>
bool proj_equal(const ProjMap<T>& a, const ProjMap<T>& b, double tol = 1e-12) {
  return proj_equal_matrices(a.matrix(), b.matrix(), tol);
}

// Affine action on the chart x4 = 1. Throws if the image is at infinity.
Point3 apply_affine(const Mat4<double>& m, const Point3& x);

}  // namespace cuspgeom::projlin
