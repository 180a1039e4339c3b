#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <vector>

#include "cuspgeom/error.hpp"
#include "cuspgeom/scalar.hpp"

namespace cuspgeom::projlin {

template <class T>
using Vec4 = std::array<T, 4>;

// Fixed 4x4 matrix over Rational (exact) or double (float). Row-major.
template <class T>
class Mat4 {
 public:
  Mat4() = default;

  Mat4(std::initializer_list<std::initializer_list<T>> rows) {
    if (rows.size() != 4) throw Error(ErrorKind::InvalidParameter, "Mat4 needs 4 rows");
    int i = 0;
    for (const auto& r : rows) {
      if (r.size() != 4) throw Error(ErrorKind::InvalidParameter, "Mat4 rows need 4 entries");
      int j = 0;
      for (const auto& v : r) a_[i][j++] = v;
      ++i;
    }
  }

  static Mat4 identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m.a_[i][i] = T(1);
    return m;
  }

  static Mat4 zero() { return Mat4(); }

  T& operator()(int i, int j) { return a_[i][j]; }
  const T& operator()(int i, int j) const { return a_[i][j]; }

  Vec4<T> row(int i) const { return a_[i]; }
  Vec4<T> col(int j) const { return {a_[0][j], a_[1][j], a_[2][j], a_[3][j]}; }
  void set_col(int j, const Vec4<T>& v) {
    for (int i = 0; i < 4; ++i) a_[i][j] = v[i];
  }

  Mat4& operator+=(const Mat4& o) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a_[i][j] += o.a_[i][j];
    return *this;
  }
  Mat4& operator-=(const Mat4& o) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a_[i][j] -= o.a_[i][j];
    return *this;
  }
  Mat4& operator*=(const T& s) {
    for (auto& r : a_)
      for (auto& v : r) v *= s;
    return *this;
  }
  Mat4& operator/=(const T& s) {
    if (is_exact_zero(s)) throw Error(ErrorKind::InvalidParameter, "division of a matrix by zero");
    for (auto& r : a_)
      for (auto& v : r) v /= s;
    return *this;
  }

  friend Mat4 operator+(Mat4 a, const Mat4& b) { return a += b; }
  friend Mat4 operator-(Mat4 a, const Mat4& b) { return a -= b; }
  friend Mat4 operator-(Mat4 a) {
    for (auto& r : a.a_)
      for (auto& v : r) v = -v;
    return a;
  }
  friend Mat4 operator*(Mat4 a, const T& s) { return a *= s; }
  friend Mat4 operator*(const T& s, Mat4 a) { return a *= s; }
  friend Mat4 operator/(Mat4 a, const T& s) { return a /= s; }

  friend Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 c;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        T s = a.a_[i][0] * b.a_[0][j];
        for (int k = 1; k < 4; ++k) s += a.a_[i][k] * b.a_[k][j];
        c.a_[i][j] = s;
      }
    return c;
  }

  friend Vec4<T> operator*(const Mat4& a, const Vec4<T>& v) {
    Vec4<T> r;
    for (int i = 0; i < 4; ++i) {
      T s = a.a_[i][0] * v[0];
      for (int k = 1; k < 4; ++k) s += a.a_[i][k] * v[k];
      r[i] = s;
    }
    return r;
  }

  friend bool operator==(const Mat4& a, const Mat4& b) { return a.a_ == b.a_; }
  friend bool operator!=(const Mat4& a, const Mat4& b) { return !(a == b); }

  Mat4 transpose() const {
    Mat4 t;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) t.a_[i][j] = a_[j][i];
    return t;
  }

  T trace() const {
    T s = a_[0][0];
    for (int i = 1; i < 4; ++i) s += a_[i][i];
    return s;
  }

  // Largest entry magnitude, in double.
  double max_abs() const {
    double m = 0.0;
    for (const auto& r : a_)
      for (const auto& v : r) m = std::max(m, magnitude(v));
    return m;
  }

  bool is_zero() const {
    for (const auto& r : a_)
      for (const auto& v : r)
        if (!is_exact_zero(v)) return false;
    return true;
  }

  Mat4<double> to_double() const {
    Mat4<double> d;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) d(i, j) = cuspgeom::to_double(a_[i][j]);
    return d;
  }

 private:
  std::array<std::array<T, 4>, 4> a_{};
};

template <class T>
Mat4<T> commutator(const Mat4<T>& a, const Mat4<T>& b) {
  return a * b - b * a;
}

template <class T>
Mat4<T> power(Mat4<T> m, unsigned k) {
  Mat4<T> r = Mat4<T>::identity();
  while (k) {
    if (k & 1u) r = r * m;
    m = m * m;
    k >>= 1u;
  }
  return r;
}

inline Mat4<Rational> to_rational(const Mat4<double>& m) {
  Mat4<Rational> r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = Rational(m(i, j));
  return r;
}

// Determinant by Gaussian elimination (exact: first nonzero pivot; float: partial pivoting).
template <class T>
T determinant(Mat4<T> m) {
  T det(1);
  for (int c = 0; c < 4; ++c) {
    int p = -1;
    if constexpr (is_exact_v<T>) {
      for (int r = c; r < 4; ++r)
        if (!is_exact_zero(m(r, c))) {
          p = r;
          break;
        }
    } else {
      double best = 0.0;
      for (int r = c; r < 4; ++r)
        if (magnitude(m(r, c)) > best) {
          best = magnitude(m(r, c));
          p = r;
        }
    }
    if (p < 0) return T(0);
    if (p != c) {
      for (int j = 0; j < 4; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (int r = c + 1; r < 4; ++r) {
      if (is_exact_zero(m(r, c))) continue;
      T f = m(r, c) / m(c, c);
      for (int j = c; j < 4; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

// Gauss-Jordan inverse. Float regime rejects pivots below 1e-14 of the matrix scale.
template <class T>
Mat4<T> inverse(const Mat4<T>& in) {
  Mat4<T> m = in;
  Mat4<T> inv = Mat4<T>::identity();
  const double scale = in.max_abs();
  for (int c = 0; c < 4; ++c) {
    int p = -1;
    if constexpr (is_exact_v<T>) {
      for (int r = c; r < 4; ++r)
        if (!is_exact_zero(m(r, c))) {
          p = r;
          break;
        }
    } else {
      double best = 0.0;
      for (int r = c; r < 4; ++r)
        if (magnitude(m(r, c)) > best) {
          best = magnitude(m(r, c));
          p = r;
        }
      if (p >= 0 && best <= 1e-14 * scale) p = -1;
    }
    if (p < 0) throw Error(ErrorKind::Singular, "matrix is not invertible");
    if (p != c)
      for (int j = 0; j < 4; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    T piv = m(c, c);
    for (int j = 0; j < 4; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == c || is_exact_zero(m(r, c))) continue;
      T f = m(r, c);
      for (int j = 0; j < 4; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

// Dense row-major matrix used by the elimination routines.
template <class T>
using Rows = std::vector<std::vector<T>>;

template <class T>
Rows<T> to_rows(const Mat4<T>& m) {
  Rows<T> r(4, std::vector<T>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = m(i, j);
  return r;
}

// Reduced row echelon form in place; returns pivot columns.
// Float pivots below tol * (largest entry) count as zero.
template <class T>
std::vector<int> rref(Rows<T>& a, double tol = 1e-12) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  const std::size_t m = a.size(), n = a[0].size();
  double scale = 0.0;
  for (const auto& r : a)
    for (const auto& v : r) scale = std::max(scale, magnitude(v));
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t p = m;
    if constexpr (is_exact_v<T>) {
      for (std::size_t r = row; r < m; ++r)
        if (!is_exact_zero(a[r][c])) {
          p = r;
          break;
        }
    } else {
      double best = tol * scale;
      for (std::size_t r = row; r < m; ++r)
        if (magnitude(a[r][c]) > best) {
          best = magnitude(a[r][c]);
          p = r;
        }
    }
    if (p == m) {
      if constexpr (!is_exact_v<T>)
        for (std::size_t r = row; r < m; ++r) a[r][c] = 0.0;
      continue;
    }
    std::swap(a[p], a[row]);
    T piv = a[row][c];
    for (std::size_t j = c; j < n; ++j) a[row][j] /= piv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || is_exact_zero(a[r][c])) continue;
      T f = a[r][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[row][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++row;
  }
  return pivots;
}

// Basis of the right null space, read off the reduced echelon form.
template <class T>
std::vector<Vec4<T>> null_space(const Mat4<T>& m, double tol = 1e-10) {
  Rows<T> a = to_rows(m);
  std::vector<int> piv = rref(a, tol);
  std::array<bool, 4> is_piv{};
  for (int p : piv) is_piv[p] = true;
  std::vector<Vec4<T>> basis;
  for (int f = 0; f < 4; ++f) {
    if (is_piv[f]) continue;
    Vec4<T> v{};
    v[f] = T(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
    basis.push_back(v);
  }
  return basis;
}

template <class T>
int rank(const Mat4<T>& m, double tol = 1e-10) {
  Rows<T> a = to_rows(m);
  return static_cast<int>(rref(a, tol).size());
}

}  // namespace cuspgeom::projlin
