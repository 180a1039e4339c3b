#pragma once

#include <limits>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "cuspgeom/projlin/projective.hpp"

namespace cuspgeom::domains {

using projlin::Point3;

enum class Family { D0, DPrime, Dt, Ball };

const char* to_string(Family f) noexcept;

inline constexpr double kDefaultBisectionTol = 1e-12;
inline constexpr double kMaxBracket = 1e9;

// Model properly convex domain in parabolic coordinates: the epigraph
// {x1 > h(x2,x3) + level} over a convex base. The Euclidean ball family is a metric test oracle
// (no boundary function). A nonzero level gives a horoball of the family, itself convex.
class ConvexDomain {
 public:
  static ConvexDomain d0();
  static ConvexDomain d_prime();
  static ConvexDomain d_t(double t);
  static ConvexDomain euclidean_ball(double radius = 1.0, Point3 center = {0.0, 0.0, 0.0});

  // Same family shifted up by kappa (horoball {x1 > h + kappa}); kappa may be negative.
  ConvexDomain with_level(double kappa) const;

  Family family() const { return family_; }
  double t() const { return t_; }
  double level() const { return level_; }
  double radius() const { return radius_; }
  const Point3& center() const { return center_; }
  bool has_boundary_function() const { return family_ != Family::Ball; }

  bool in_base(double x2, double x3) const;
  bool contains(const Point3& x) const;

  // h(x2,x3) without the level. Dt: vertical bisection on the pulled-back predicate.
  double boundary_value(double x2, double x3) const;

  std::string name() const;
  nlohmann::json descriptor() const;

 private:
  ConvexDomain(Family f, double t, double level, double radius, Point3 center)
      : family_(f), t_(t), level_(level), radius_(radius), center_(center) {}

  Family family_;
  double t_ = 0.0;
  double level_ = 0.0;
  double radius_ = 1.0;
  Point3 center_{0.0, 0.0, 0.0};
};

// {"family":"D0"|"DPrime"|"Dt","t":number?} plus optional "level".
ConvexDomain domain_from_json(const nlohmann::json& j);

// The boundary function of D' in closed form: x3^2/2 - log x2.
double f_prime(double x2, double x3);

// Closed-form D_t boundary, derived from the affine form of V_t (test oracle for boundary_value).
double dt_boundary_closed_form(double t, double x2, double x3);

// V_t as a projective map; det = t^-4. Exact for rational t.
template <class T>
projlin::Mat4<T> vt_matrix(const T& t) {
  if (is_exact_zero(t)) throw Error(ErrorKind::InvalidParameter, "V_t needs t != 0");
  T it = T(1) / t;
  T it2 = it * it;
  return projlin::Mat4<T>{{it2, it2, T(0), -it2}, {T(0), it, T(0), -it}, {T(0), T(0), it, T(0)}, {T(0), T(0), T(0), T(1)}};
}

template <class T>
projlin::ProjMap<T> vt_map(const T& t) {
  return projlin::ProjMap<T>(vt_matrix(t));
}

// Affine action of V_t and its inverse on the chart x4 = 1.
Point3 vt_apply(double t, const Point3& x);
Point3 vt_apply_inverse(double t, const Point3& x);

struct Chord {
  Point3 origin;
  Point3 direction;  // unit
  double s_minus;    // distance to p- along -direction; +inf when ideal
  double s_plus;     // distance to p+ along +direction; +inf when ideal

  bool minus_ideal() const { return std::isinf(s_minus); }
  bool plus_ideal() const { return std::isinf(s_plus); }
  std::optional<Point3> minus() const;
  std::optional<Point3> plus() const;
};

// Intersections of the line x + R v with the boundary: bracket by doubling from step 1 up to
// max_range, then bisect to tol (or to floating resolution). A side that never leaves within
// max_range is ideal; both sides ideal is an unbounded search.
Chord chord_endpoints(const ConvexDomain& dom, const Point3& x, const Point3& v, double tol = kDefaultBisectionTol,
                      double max_range = kMaxBracket);

// Same, without the interiority check (callers that already validated x).
Chord chord_endpoints_unchecked(const ConvexDomain& dom, const Point3& x, const Point3& v, double tol,
                                double max_range = kMaxBracket);

struct Horosphere {
  ConvexDomain domain;
  double kappa;

  Horosphere(ConvexDomain d, double k);
  // x1 on the horosphere over (x2,x3).
  double height(double x2, double x3) const { return domain.boundary_value(x2, x3) + domain.level() + kappa; }
};

// x1 > h(x2,x3) + kappa with base membership (strict: the horosphere itself is excluded).
bool horoball_contains(const Horosphere& hs, const Point3& x);

}  // namespace cuspgeom::domains
