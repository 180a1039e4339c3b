#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>

#include "cuspgeom/projlin/matfun.hpp"
#include "cuspgeom/projlin/polynomial.hpp"
#include "cuspgeom/projlin/projective.hpp"

namespace cuspgeom::cusplie {

using projlin::Mat4;
using projlin::ProjMap;

enum class AlgFamily { L0, Lt, LPrime, LPrimeMinus };

const char* to_string(AlgFamily f) noexcept;

// Element of one of the abelian cusp algebras. (u, v) means (r, s) for L0/Lt and (a, b) for
// LPrime/LPrimeMinus; t is used only by Lt.
template <class T>
struct LieAlgElem {
  AlgFamily family = AlgFamily::L0;
  T t{};
  T u{};
  T v{};

  static LieAlgElem l0(const T& r, const T& s) { return {AlgFamily::L0, T(0), r, s}; }
  static LieAlgElem lt(const T& t, const T& r, const T& s) {
    if (is_exact_zero(t)) throw Error(ErrorKind::InvalidParameter, "L_t needs t != 0");
    return {AlgFamily::Lt, t, r, s};
  }
  static LieAlgElem lprime(const T& a, const T& b) { return {AlgFamily::LPrime, T(0), a, b}; }
  static LieAlgElem lprime_minus(const T& a, const T& b) { return {AlgFamily::LPrimeMinus, T(0), a, b}; }

  friend LieAlgElem operator+(const LieAlgElem& x, const LieAlgElem& y) {
    if (x.family != y.family || x.t != y.t) throw Error(ErrorKind::InvalidParameter, "cannot add elements of different algebras");
    return {x.family, x.t, x.u + y.u, x.v + y.v};
  }
  friend LieAlgElem operator*(const T& c, const LieAlgElem& x) { return {x.family, x.t, c * x.u, c * x.v}; }
};

// The displayed 4x4 form of the element.
template <class T>
Mat4<T> alg_matrix(const LieAlgElem<T>& e) {
  const T z(0);
  switch (e.family) {
    case AlgFamily::L0: return Mat4<T>{{z, e.u, e.v, z}, {z, z, z, e.u}, {z, z, z, e.v}, {z, z, z, z}};
    case AlgFamily::Lt:
      if (is_exact_zero(e.t)) throw Error(ErrorKind::InvalidParameter, "L_t needs t != 0");
      return Mat4<T>{{z, e.u, e.v, z}, {z, e.t * e.u, z, e.u}, {z, z, z, e.v}, {z, z, z, z}};
    case AlgFamily::LPrime: return Mat4<T>{{z, z, e.v, -e.u}, {z, e.u, z, z}, {z, z, z, e.v}, {z, z, z, z}};
    case AlgFamily::LPrimeMinus: return Mat4<T>{{z, z, e.v, e.u}, {z, e.u, z, z}, {z, z, z, e.v}, {z, z, z, z}};
  }
  return Mat4<T>();
}

// (e^x - 1)/x and (e^x - x - 1)/x^2, accurate near 0.
double expm1_over_x(double x);
double exp_phi2(double x);

// Closed-form group element exp(e).
Mat4<double> group_exp_matrix(const LieAlgElem<double>& e);
ProjMap<double> group_exp(const LieAlgElem<double>& e);

// Exact group element; admissible only for nilpotent elements (L0, and the a = 0 slices).
Mat4<Rational> group_exp_exact(const LieAlgElem<Rational>& e);

// Reads (u, v) back from a matrix claimed to be in the given algebra; residual = max entry error
// against the displayed form.
struct FamilyFit {
  double u = 0.0;
  double v = 0.0;
  double residual = 0.0;
};
FamilyFit fit_algebra(const Mat4<double>& x, AlgFamily family, double t = 0.0);
FamilyFit fit_l0_group(const Mat4<double>& g);

template <class T>
struct MinPolyProfile {
  int n = 0;
  T f{};
  bool kernel_flag = false;
  projlin::Polynomial<T> minpoly;
};

// (n, f) with m(x) = t^n (t - f); nullopt for the zero element. WrongShape otherwise.
template <class T>
std::optional<MinPolyProfile<T>> minpoly_profile(const Mat4<T>& x, double tol = 1e-9);

template <class T>
std::optional<MinPolyProfile<T>> minpoly_profile(const LieAlgElem<T>& e, double tol = 1e-9) {
  return minpoly_profile(alg_matrix(e), tol);
}

enum class ElementClass { PureTranslation, PureDilation, Generic };
const char* to_string(ElementClass c) noexcept;

ElementClass classify_profile(int n, bool kernel_flag);

// Group element: scaled so its eigenvalue of multiplicity >= 3 is 1, then logged and profiled.
ElementClass classify(const ProjMap<double>& g, double tol = 1e-9);
ElementClass classify(const Mat4<Rational>& g);
template <class T>
ElementClass classify(const LieAlgElem<T>& e) {
  auto p = minpoly_profile(e);
  if (!p) throw Error(ErrorKind::ZeroElement, "the identity has no class");
  return classify_profile(p->n, p->kernel_flag);
}

// Scales g by the eigenvalue of multiplicity >= 3 (float) so the result is in the identity component
// of a cusp group; throws when no such eigenvalue exists.
Mat4<double> scale_to_cusp_form(const Mat4<double>& g);
Mat4<Rational> scale_to_cusp_form(const Mat4<Rational>& g);

// 2x2 upper-triangular complex matrix [[1, x+iy],[0,1]] (row-major).
using Complex2x2 = std::array<std::complex<double>, 4>;
Complex2x2 l0_to_parabolic(double x, double y);
Complex2x2 l0_to_parabolic(const Mat4<double>& g);
Complex2x2 multiply(const Complex2x2& a, const Complex2x2& b);

struct CuspShape {
  std::complex<double> omega;      // orientation-normalized, Im > 0
  std::complex<double> raw;        // (x2 + i y2) / (x1 + i y1) before normalization
  bool reoriented = false;         // true when l was replaced by l^-1 to make Im > 0
};

// m = (x1, y1), l = (x2, y2) translation parameters in L0.
CuspShape cusp_shape(std::array<double, 2> m, std::array<double, 2> l);
CuspShape cusp_shape(const Mat4<double>& m, const Mat4<double>& l);

}  // namespace cuspgeom::cusplie
