#pragma once

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>

namespace cuspgeom {

using Rational = mpq_class;

enum class Regime { Exact, Float };

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <class T>
inline constexpr Regime regime_of = is_exact_v<T> ? Regime::Exact : Regime::Float;

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

inline double magnitude(const Rational& q) { return std::fabs(q.get_d()); }
inline double magnitude(double x) { return std::fabs(x); }

inline int sign_of(const Rational& q) { return sgn(q); }
inline int sign_of(double x) { return (x > 0) - (x < 0); }

inline Rational abs_value(const Rational& q) { return abs(q); }
inline double abs_value(double x) { return std::fabs(x); }

// Exact zero test; float callers compare magnitudes against an explicit tolerance.
inline bool is_exact_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_exact_zero(double x) { return x == 0.0; }

template <class T>
T from_double(double x) {
  if constexpr (is_exact_v<T>) {
    return Rational(x);
  } else {
    return x;
  }
}

// Accepts "p/q", integers and exact decimals such as "-0.125" or "2.5e-3".
Rational parse_rational(std::string_view text);

// "p/q" or "p" (canonical, lowest terms).
std::string to_string(const Rational& q);

// Rational square root when one exists.
std::optional<Rational> exact_sqrt(const Rational& q);

// Shortest round-trip decimal of a double, used by every text writer.
std::string format_double(double x);

}  // namespace cuspgeom
