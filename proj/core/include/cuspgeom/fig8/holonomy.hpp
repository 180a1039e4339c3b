#pragma once

#include <array>
#include <nlohmann/json.hpp>
#include <optional>
#include <vector>

#include "cuspgeom/cusplie/normalize.hpp"
#include "cuspgeom/projlin/matfun.hpp"

namespace cuspgeom::fig8 {

using projlin::Mat4;

template <class T>
struct Generators {
  Mat4<T> m;  // meridian image M_t
  Mat4<T> n;  // second meridian image N_t
};

template <class T>
Generators<T> generators(const T& t) {
  if (is_exact_zero(t)) throw Error(ErrorKind::InvalidParameter, "the holonomy family needs t != 0");
  const T one(1), zero(0), two(2), half = T(1) / T(2);
  Generators<T> g;
  g.m = Mat4<T>{{one, zero, one, t - one}, {zero, one, one, t}, {zero, zero, one, t + half}, {zero, zero, zero, one}};
  g.n = Mat4<T>{{one, zero, zero, zero}, {two + one / t, one, zero, zero}, {two, one, one, zero}, {one, one, zero, one}};
  return g;
}

// W = N M^-1 N^-1 M.
template <class T>
Mat4<T> relator_word(const Generators<T>& g) {
  return g.n * projlin::inverse(g.m) * projlin::inverse(g.n) * g.m;
}

struct RelationResidual {
  Mat4<Rational> residual;  // M W - lambda W N
  Rational lambda;
  bool exact_zero() const { return residual.is_zero(); }
};

RelationResidual relation_residual(const Rational& t);
double relation_residual_float(double t);  // max entry of the float residual, relative

// l = N M^-1 N^-1 M^2 N^-1 M^-1 N.
template <class T>
Mat4<T> longitude(const T& t) {
  const Generators<T> g = generators(t);
  const Mat4<T> mi = projlin::inverse(g.m), ni = projlin::inverse(g.n);
  return g.n * mi * ni * g.m * g.m * ni * mi * g.n;
}

// The printed longitude matrix with its stray "2x" read as "2t".
Mat4<Rational> displayed_longitude(const Rational& t);

struct DisplayComparison {
  std::array<std::array<bool, 4>, 4> match{};
  int matching = 0;
  bool needs_typo_fix = true;  // entry (1,2) is only defined once "2x" is read as "2t"
};
DisplayComparison compare_displayed_longitude(const Rational& t);

// Exact spectrum of the longitude; expected {2t (x3), 1/(8t^3)}.
std::vector<projlin::SpectrumEntry<Rational>> longitude_spectrum(const Rational& t);
bool longitude_projectively_unipotent(const Rational& t);

// s = log(1/(16 t^4)) and its inverse t = e^{-s/4}/2.
double s_of_t(double t);
double t_of_s(double s);

struct PeripheralPair {
  Mat4<double> meridian;
  Mat4<double> longitude;
  Regime regime = Regime::Float;
};

// sqrt(sinh(s/4)/(3s)), even in s, with limit 1/(2 sqrt 3).
double meridian_parameter(double s);

PeripheralPair normalized_peripheral(double s);
PeripheralPair limit_pair();

// True when the scaled longitude at t_of_s(s) has two distinct eigenvalues. The double t is
// converted exactly to a rational so the test itself is exact.
bool strict_convexity_obstruction(double s);
bool strict_convexity_obstruction_exact(const Rational& t);

struct ConsistencyReport {
  Rational t;
  double s = 0.0;
  bool degenerate = false;  // t = 1/2: the longitude is unipotent, no dilation exists
  int sign = 0;
  cusplie::ElementClass meridian_class = cusplie::ElementClass::Generic;
  cusplie::ElementClass longitude_class = cusplie::ElementClass::Generic;
  double dilation_f = 0.0;
  double f_error = 0.0;            // |dilation_f - s|
  double meridian_b = 0.0;         // translation parameter of the normalized meridian
  double meridian_b_error = 0.0;   // | |b| - sqrt(s sinh(s/4)/3) |
  double normalization_residual = 0.0;
  double closed_form_residual = 0.0;  // V_s-conjugated pair vs normalized_peripheral(s), up to the sign of b
  std::optional<cusplie::GroupNormalization> normalization;

  nlohmann::json to_json() const;
};

ConsistencyReport normalization_consistency(const Rational& t, double tol = 1e-9);

// {t, s, relation_exact, longitude_spectrum, obstruction, normalized_params, ...}.
nlohmann::json verify_report(const Rational& t);

}  // namespace cuspgeom::fig8
