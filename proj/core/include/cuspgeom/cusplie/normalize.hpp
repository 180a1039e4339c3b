#pragma once

#include <functional>
#include <nlohmann/json.hpp>
#include <utility>

#include "cuspgeom/cusplie/families.hpp"
#include "cuspgeom/projlin/json_io.hpp"

namespace cuspgeom::cusplie {

// Conjugation of a two-generator abelian algebra into LPrime (sign +1) or LPrimeMinus (sign -1):
// images[i] = conjugator * generator_i * conjugator^-1.
template <class T>
struct AlgebraNormalization {
  int sign = 0;
  Mat4<T> conjugator;
  std::array<Mat4<T>, 2> images;
  std::array<LieAlgElem<T>, 2> params;
  std::pair<int, int> combination{0, 0};  // integer coefficients of the n = 3 element
  T f_generic{};
  double residual = 0.0;  // max entry error of the images against the family form
};

// Exact regime requires the final diagonal conjugation to be rational (|c1| a rational square);
// otherwise IrrationalConjugator is raised and the float regime should be used.
template <class T>
AlgebraNormalization<T> normalize_algebra_pair(const Mat4<T>& alpha, const Mat4<T>& beta, double tol = 1e-9);

struct GroupNormalization {
  int sign = 0;
  Mat4<double> conjugator;
  std::array<Mat4<double>, 2> scaled_generators;  // inputs rescaled into the identity component
  std::array<Mat4<double>, 2> logs;
  std::array<Mat4<double>, 2> images;  // conjugated group elements
  std::array<LieAlgElem<double>, 2> params;
  double residual = 0.0;  // max(algebra residual, group residual against the closed forms)
  AlgebraNormalization<double> algebra;

  nlohmann::json to_json() const;
};

GroupNormalization normalize_pair(const ProjMap<double>& a, const ProjMap<double>& b, double tol = 1e-9);
// Exact inputs: logs come from exact spectral projectors, the rest runs in floats.
GroupNormalization normalize_pair(const Mat4<Rational>& a, const Mat4<Rational>& b, double tol = 1e-9);

// Ordered commuting pair generating a rank-2 abelian group.
struct Lattice {
  projlin::AnyMatrix a;
  projlin::AnyMatrix b;
  bool commuting = false;
  bool rank2 = false;

  nlohmann::json to_json() const;
};

// Verifies commutation (projectively) and independence of the logs.
Lattice make_lattice(projlin::AnyMatrix a, projlin::AnyMatrix b, double tol = 1e-9);
Lattice lattice_from_json(const nlohmann::json& j);
GroupNormalization normalize_lattice(const Lattice& lat, double tol = 1e-9);

using ParamPath = std::function<std::array<double, 2>(double)>;

struct ConvergenceResult {
  double t = 0.0;
  std::array<Mat4<double>, 2> conjugated_alg;    // C_t x C_t^-1
  std::array<Mat4<double>, 2> conjugated_group;  // C_t exp(x) C_t^-1
  std::array<LieAlgElem<double>, 2> lt_params;   // (u/t, v/t) in L_t
  std::array<std::array<double, 2>, 2> limit_params;
  std::array<Mat4<double>, 2> limit_generators;  // exp of L0 with the limit parameters
  double structure_residual = 0.0;
};

// C_t = V_t conjugates LPrime paths a_t, b_t into L_t; the limit uses derivatives at 0
// (central differences, h = 2^-20). Dependent derivatives raise DegenerateLimit.
ConvergenceResult convergence_conjugate(const ParamPath& a, const ParamPath& b, double t);

}  // namespace cuspgeom::cusplie
