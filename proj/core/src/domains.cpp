#include <cmath>

#include "cuspgeom/domains/domain.hpp"

namespace cuspgeom::domains {

namespace {

Point3 along(const Point3& x, const Point3& u, double s) { return {x[0] + s * u[0], x[1] + s * u[1], x[2] + s * u[2]}; }

double ray_exit(const ConvexDomain& dom, const Point3& x, const Point3& u, double tol, double max_range) {
  double lo = 0.0, hi = 1.0;
  while (dom.contains(along(x, u, hi))) {
    lo = hi;
    hi *= 2.0;
    if (hi > max_range) return std::numeric_limits<double>::infinity();
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (dom.contains(along(x, u, mid))) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::D0: return "D0";
    case Family::DPrime: return "DPrime";
    case Family::Dt: return "Dt";
    case Family::Ball: return "Ball";
  }
  return "unknown";
}

ConvexDomain ConvexDomain::d0() { return ConvexDomain(Family::D0, 0.0, 0.0, 1.0, {0, 0, 0}); }
ConvexDomain ConvexDomain::d_prime() { return ConvexDomain(Family::DPrime, 0.0, 0.0, 1.0, {0, 0, 0}); }

ConvexDomain ConvexDomain::d_t(double t) {
  if (t == 0.0 || !std::isfinite(t)) throw Error(ErrorKind::InvalidParameter, "D_t needs a finite t != 0");
  return ConvexDomain(Family::Dt, t, 0.0, 1.0, {0, 0, 0});
}

ConvexDomain ConvexDomain::euclidean_ball(double radius, Point3 center) {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidParameter, "ball radius must be positive");
  return ConvexDomain(Family::Ball, 0.0, 0.0, radius, center);
}

ConvexDomain ConvexDomain::with_level(double kappa) const {
  if (family_ == Family::Ball) throw Error(ErrorKind::InvalidParameter, "the ball test domain has no horoballs");
  ConvexDomain d = *this;
  d.level_ = kappa;
  return d;
}

bool ConvexDomain::in_base(double x2, double /*x3*/) const {
  switch (family_) {
    case Family::D0: return true;
    case Family::DPrime: return x2 > 0.0;
    case Family::Dt: return 1.0 + t_ * x2 > 0.0;
    case Family::Ball: return true;
  }
  return false;
}

bool ConvexDomain::contains(const Point3& x) const {
  switch (family_) {
    case Family::D0: return x[0] > 0.5 * (x[1] * x[1] + x[2] * x[2]) + level_;
    case Family::DPrime: return x[1] > 0.0 && x[0] > 0.5 * x[2] * x[2] - std::log(x[1]) + level_;
    case Family::Dt: {
      const Point3 y = vt_apply_inverse(t_, x);
      return y[1] > 0.0 && y[0] > 0.5 * y[2] * y[2] - std::log(y[1]) + t_ * t_ * level_;
    }
    case Family::Ball: {
      const double d0 = x[0] - center_[0], d1 = x[1] - center_[1], d2 = x[2] - center_[2];
      return d0 * d0 + d1 * d1 + d2 * d2 < radius_ * radius_;
    }
  }
  return false;
}

double ConvexDomain::boundary_value(double x2, double x3) const {
  if (family_ == Family::Ball) throw Error(ErrorKind::InvalidParameter, "the ball test domain has no boundary function");
  if (!in_base(x2, x3)) {
    throw Error(ErrorKind::BaseViolation, "(" + format_double(x2) + ", " + format_double(x3) + ") is outside the base of " +
                                              std::string(to_string(family_)));
  }
  switch (family_) {
    case Family::D0: return 0.5 * (x2 * x2 + x3 * x3);
    case Family::DPrime: return f_prime(x2, x3);
    default: break;
  }
  // Dt: the predicate is monotone in x1 along the vertical line; bracket then bisect.
  const ConvexDomain base = with_level(0.0);
  auto inside = [&](double x1) { return base.contains({x1, x2, x3}); };
  double lo = 0.0, hi = 0.0, step = 1.0;
  if (inside(0.0)) {
    hi = 0.0;
    lo = -step;
    while (inside(lo)) {
      hi = lo;
      step *= 2.0;
      lo = hi - step;
      if (step > kMaxBracket) throw Error(ErrorKind::UnboundedSearch, "no boundary below the vertical line");
    }
  } else {
    lo = 0.0;
    hi = step;
    while (!inside(hi)) {
      lo = hi;
      step *= 2.0;
      hi = lo + step;
      if (step > kMaxBracket) throw Error(ErrorKind::UnboundedSearch, "no boundary above the vertical line");
    }
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (inside(mid)) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::string ConvexDomain::name() const {
  std::string s = to_string(family_);
  if (family_ == Family::Dt) s += "(t=" + format_double(t_) + ")";
  if (family_ == Family::Ball) s += "(r=" + format_double(radius_) + ")";
  if (level_ != 0.0) s += "[level " + format_double(level_) + "]";
  return s;
}

nlohmann::json ConvexDomain::descriptor() const {
  nlohmann::json j{{"family", to_string(family_)}};
  if (family_ == Family::Dt) j["t"] = t_;
  if (family_ == Family::Ball) j["radius"] = radius_;
  if (level_ != 0.0) j["level"] = level_;
  return j;
}

ConvexDomain domain_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
    throw Error(ErrorKind::Parse, "domain descriptor needs a \"family\" string");
  }
  const std::string fam = j["family"];
  ConvexDomain d = ConvexDomain::d0();
  if (fam == "D0") d = ConvexDomain::d0();
  else if (fam == "DPrime") d = ConvexDomain::d_prime();
  else if (fam == "Dt") {
    if (!j.contains("t") || !j["t"].is_number()) throw Error(ErrorKind::Parse, "Dt descriptor needs a numeric \"t\"");
    d = ConvexDomain::d_t(j["t"].get<double>());
  } else if (fam == "Ball") {
    return ConvexDomain::euclidean_ball(j.value("radius", 1.0));
  } else {
    throw Error(ErrorKind::Parse, "unknown domain family '" + fam + "'");
  }
  if (j.contains("level")) d = d.with_level(j["level"].get<double>());
  return d;
}

double f_prime(double x2, double x3) { return 0.5 * x3 * x3 - std::log(x2); }

double dt_boundary_closed_form(double t, double x2, double x3) {
  const double u = t * x2;
  return 0.5 * x3 * x3 + (u - std::log1p(u)) / (t * t);
}

Point3 vt_apply(double t, const Point3& x) {
  if (t == 0.0) throw Error(ErrorKind::InvalidParameter, "V_t needs t != 0");
  return {(x[0] + x[1] - 1.0) / (t * t), (x[1] - 1.0) / t, x[2] / t};
}

Point3 vt_apply_inverse(double t, const Point3& x) {
  if (t == 0.0) throw Error(ErrorKind::InvalidParameter, "V_t needs t != 0");
  return {t * t * x[0] - t * x[1], 1.0 + t * x[1], t * x[2]};
}

std::optional<Point3> Chord::minus() const {
  if (minus_ideal()) return std::nullopt;
  return along(origin, direction, -s_minus);
}

std::optional<Point3> Chord::plus() const {
  if (plus_ideal()) return std::nullopt;
  return along(origin, direction, s_plus);
}

Chord chord_endpoints_unchecked(const ConvexDomain& dom, const Point3& x, const Point3& v, double tol, double max_range) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (n == 0.0) throw Error(ErrorKind::InvalidParameter, "chord direction must be nonzero");
  const Point3 u{v[0] / n, v[1] / n, v[2] / n};
  const Point3 mu{-u[0], -u[1], -u[2]};
  Chord c{x, u, ray_exit(dom, x, mu, tol, max_range), ray_exit(dom, x, u, tol, max_range)};
  if (c.minus_ideal() && c.plus_ideal()) {
    throw Error(ErrorKind::UnboundedSearch, "line through the point in direction (" + format_double(u[0]) + ", " +
                                                format_double(u[1]) + ", " + format_double(u[2]) +
                                                ") stays inside in both directions");
  }
  return c;
}

Chord chord_endpoints(const ConvexDomain& dom, const Point3& x, const Point3& v, double tol, double max_range) {
  if (!dom.contains(x)) throw Error(ErrorKind::NotInterior, "chord origin is not an interior point of " + dom.name());
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "bisection tolerance must be positive");
  return chord_endpoints_unchecked(dom, x, v, tol, max_range);
}

Horosphere::Horosphere(ConvexDomain d, double k) : domain(std::move(d)), kappa(k) {
  if (!domain.has_boundary_function()) throw Error(ErrorKind::InvalidParameter, "horospheres need a boundary function");
  if (!(kappa > 0.0)) throw Error(ErrorKind::InvalidParameter, "horosphere level must be positive");
}

bool horoball_contains(const Horosphere& hs, const Point3& x) {
  if (!hs.domain.in_base(x[1], x[2])) return false;
  return x[0] > hs.height(x[1], x[2]);
}

}  // namespace cuspgeom::domains
