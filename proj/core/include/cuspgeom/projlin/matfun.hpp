#pragma once

#include <vector>

#include "cuspgeom/projlin/mat4.hpp"

namespace cuspgeom::projlin {

template <class T>
struct SpectrumEntry {
  T value;
  int multiplicity;
};

// Real eigenvalues ascending with algebraic multiplicities (sum 4). Exact regime: every root must be
// rational (irrational real roots raise IrrationalSpectrum); complex roots raise NonRealSpectrum.
std::vector<SpectrumEntry<Rational>> real_spectrum(const Mat4<Rational>& m);

// Float regime: eigenvalues of the matrix clustered within cluster_tol * max(1, spectral radius);
// each cluster is reported by its mean.
std::vector<SpectrumEntry<double>> real_spectrum(const Mat4<double>& m, double cluster_tol = 1e-4);

// I + N + N^2/2 + N^3/6; exact for nilpotent N (N^4 = 0 for any 4x4 nilpotent).
template <class T>
Mat4<T> exp_nilpotent(const Mat4<T>& n) {
  Mat4<T> n2 = n * n;
  Mat4<T> n3 = n2 * n;
  return Mat4<T>::identity() + n + n2 / T(2) + n3 / T(6);
}

// Scaling and squaring with a Taylor core; series remainder below 1e-16 relative.
Mat4<double> mat_exp_scaling_squaring(const Mat4<double>& m);

// Finite series for (numerically) nilpotent input, scaling and squaring otherwise.
Mat4<double> mat_exp(const Mat4<double>& m);

// Exact exponential; only nilpotent input is admissible (InvalidParameter otherwise).
Mat4<Rational> mat_exp(const Mat4<Rational>& m);

template <class T>
bool is_nilpotent(const Mat4<T>& m) {
  Mat4<T> m2 = m * m;
  Mat4<T> m4 = m2 * m2;
  if constexpr (is_exact_v<T>) {
    return m4.is_zero();
  } else {
    const double s = std::max(1.0, m.max_abs());
    return m4.max_abs() <= 1e-15 * s * s * s * s;
  }
}

// Exact data of log g = sum_k log(lambda_k) P_k + nilpotent_part, for rational g whose spectrum is
// rational and positive. P_k are the spectral projectors.
struct LogParts {
  std::vector<Rational> eigenvalues;
  std::vector<Mat4<Rational>> projectors;
  Mat4<Rational> nilpotent_part;

  Mat4<double> to_double() const;
  bool is_unipotent() const { return eigenvalues.size() == 1 && eigenvalues[0] == 1; }
};

LogParts log_parts(const Mat4<Rational>& g);

// Real logarithm of a matrix with positive real spectrum, via spectral projectors onto the
// generalized eigenspaces; unipotent-up-to-scale input uses the finite series.
Mat4<double> matrix_log(const Mat4<double>& g, double cluster_tol = 1e-4);
Mat4<double> matrix_log(const Mat4<Rational>& g);

}  // namespace cuspgeom::projlin
