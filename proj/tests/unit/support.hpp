#pragma once

#include <random>

#include "cuspgeom/projlin/mat4.hpp"

namespace testsupport {

using cuspgeom::Rational;
using cuspgeom::projlin::Mat4;

inline Rational rand_rational(std::mt19937_64& g, int num = 9, int den = 7) {
  std::uniform_int_distribution<int> n(-num, num), d(1, den);
  Rational q(n(g), d(g));
  q.canonicalize();
  return q;
}

// Random invertible rational matrix with small entries.
inline Mat4<Rational> rand_invertible(std::mt19937_64& g) {
  for (;;) {
    Mat4<Rational> c;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) c(i, j) = rand_rational(g, 3, 2);
    if (cuspgeom::projlin::determinant(c) != 0) return c;
  }
}

inline double rand_real(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

}  // namespace testsupport
