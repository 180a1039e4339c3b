#include <gsl/gsl_integration.h>

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "cuspgeom/hilbert/metric.hpp"
#include "cuspgeom/hilbert/volume.hpp"
#include "parallel.hpp"

namespace cuspgeom::hilbert {

namespace {

double norm3(const Point3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }
Point3 sub3(const Point3& a, const Point3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

// Gauss-Legendre nodes/weights on [a,b] from GSL's fixed tables.
struct GaussRule {
  std::vector<double> x, w;
};

GaussRule gauss_legendre(int n, double a, double b) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<gsl_integration_glfixed_table, void (*)(gsl_integration_glfixed_table*)>> cache;
  gsl_integration_glfixed_table* table = nullptr;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
      it = cache.emplace(n, std::unique_ptr<gsl_integration_glfixed_table, void (*)(gsl_integration_glfixed_table*)>(
                                gsl_integration_glfixed_table_alloc(static_cast<size_t>(n)),
                                gsl_integration_glfixed_table_free))
               .first;
    }
    table = it->second.get();
  }
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &r.x[i], &r.w[i], table);
  return r;
}

SphereRule build_sphere_rule(int n) {
  SphereRule rule;
  rule.order = n;
  GaussRule z = gauss_legendre(n, -1.0, 1.0);
  // gsl orders nodes symmetrically; sort ascending so node i and n-1-i are antipodal in z.
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return z.x[a] < z.x[b]; });
  const double dphi = M_PI / n;
  for (int ii = 0; ii < n; ++ii) {
    const double zi = z.x[idx[ii]], wi = z.w[idx[ii]];
    const bool lower_half = 2 * ii + 1 < n;
    const bool middle = 2 * ii + 1 == n;
    if (!lower_half && !middle) continue;
    const int jmax = middle ? n : 2 * n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - zi * zi));
    for (int j = 0; j < jmax; ++j) {
      const double phi = (j + 0.5) * dphi;
      rule.directions.push_back({rho * std::cos(phi), rho * std::sin(phi), zi});
      rule.weights.push_back(2.0 * wi * dphi);
    }
  }
  return rule;
}

// sum over antipodal pairs of w * rho^3 / 3 with rho = 1/||T u||; optional second moments.
double radial_sum(const ConvexDomain& dom, const Point3& x, const Eigen::Matrix3d& T, const SphereRule& rule, double tol,
                  Eigen::Matrix3d* moments) {
  double vol = 0.0;
  if (moments) moments->setZero();
  for (std::size_t i = 0; i < rule.directions.size(); ++i) {
    const Point3& u = rule.directions[i];
    Eigen::Vector3d y = T * Eigen::Vector3d(u[0], u[1], u[2]);
    const double nrm = finsler_norm_unchecked(dom, x, {y(0), y(1), y(2)}, tol);
    const double rho = 1.0 / nrm;
    vol += rule.weights[i] * rho * rho * rho / 3.0;
    if (moments) {
      Eigen::Vector3d uu(u[0], u[1], u[2]);
      *moments += rule.weights[i] * std::pow(rho, 5) / 5.0 * (uu * uu.transpose());
    }
  }
  return vol;
}

}  // namespace

// ---------------------------------------------------------------- metric

double cross_ratio(const std::optional<Point3>& a, const Point3& x, const Point3& y, const std::optional<Point3>& b) {
  if (x == y) return 1.0;
  const Point3 d = sub3(y, x);
  const double dn = norm3(d);
  auto check = [&](const Point3& p) {
    const Point3 w = sub3(p, x);
    const double along = (w[0] * d[0] + w[1] * d[1] + w[2] * d[2]) / dn;
    const Point3 perp{w[0] - along * d[0] / dn, w[1] - along * d[1] / dn, w[2] - along * d[2] / dn};
    if (norm3(perp) > 1e-9 * std::max(1.0, norm3(w))) throw Error(ErrorKind::NonCollinear, "cross-ratio points are not collinear");
  };
  double r = 1.0;
  if (a) {
    check(*a);
    r *= norm3(sub3(y, *a)) / norm3(sub3(x, *a));
  }
  if (b) {
    check(*b);
    r *= norm3(sub3(x, *b)) / norm3(sub3(y, *b));
  }
  return r;
}

double hilbert_distance(const ConvexDomain& dom, const Point3& x, const Point3& y, double tol) {
  if (!dom.contains(x) || !dom.contains(y)) throw Error(ErrorKind::NotInterior, "distance endpoints must be interior to " + dom.name());
  if (x == y) return 0.0;
  const Point3 v = sub3(y, x);
  const double sy = norm3(v);
  const domains::Chord c = domains::chord_endpoints_unchecked(dom, x, v, tol);
  // Positions along the chord: a at -s_minus, x at 0, y at sy, b at s_plus.
  double d = 0.0;
  if (!c.minus_ideal()) d += std::log1p(sy / c.s_minus);
  if (!c.plus_ideal()) {
    if (!(c.s_plus > sy)) throw Error(ErrorKind::NotInterior, "second point is within bisection tolerance of the boundary");
    d -= std::log1p(-sy / c.s_plus);
  }
  return d;
}

double finsler_norm_unchecked(const ConvexDomain& dom, const Point3& x, const Point3& v, double tol) {
  const double n = norm3(v);
  if (n == 0.0) return 0.0;
  const domains::Chord c = domains::chord_endpoints_unchecked(dom, x, v, tol);
  double inv = 0.0;
  if (!c.minus_ideal()) inv += 1.0 / c.s_minus;
  if (!c.plus_ideal()) inv += 1.0 / c.s_plus;
  return n * inv;
}

double finsler_norm(const ConvexDomain& dom, const Point3& x, const Point3& v, double tol) {
  if (!dom.contains(x)) throw Error(ErrorKind::NotInterior, "Finsler norm base point must be interior to " + dom.name());
  return finsler_norm_unchecked(dom, x, v, tol);
}

// ---------------------------------------------------------------- quadrature spec

const char* to_string(VolumeMethod m) noexcept { return m == VolumeMethod::MonteCarlo ? "monte-carlo" : "product-grid"; }

void QuadratureSpec::validate() const {
  if (sphere_order < 4) throw Error(ErrorKind::InvalidParameter, "sphere order must be at least 4");
  if (mc_samples < 2) throw Error(ErrorKind::InvalidParameter, "Monte Carlo sample count must be at least 2");
  if (!(bisection_tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "bisection tolerance must be positive");
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw Error(ErrorKind::InvalidParameter, "cutoff must be positive and finite");
  if (grid_order < 3) throw Error(ErrorKind::InvalidParameter, "grid order must be at least 3");
  if (!(target_rel > 0.0)) throw Error(ErrorKind::InvalidParameter, "target accuracy must be positive");
}

const SphereRule& sphere_rule(int order) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<SphereRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<SphereRule>(build_sphere_rule(order));
  return *slot;
}

// ---------------------------------------------------------------- unit ball and density

double unit_ball_lebesgue(const ConvexDomain& dom, const Point3& x, const QuadratureSpec& q) {
  q.validate();
  if (!dom.contains(x)) throw Error(ErrorKind::NotInterior, "unit-ball base point must be interior to " + dom.name());
  const double tol = q.bisection_tol;
  Eigen::Matrix3d T = Eigen::Matrix3d::Identity();
  if (q.whiten) {
    // Axis radii first, then second moments of the ball in that frame: the ball becomes roughly round.
    for (int k = 0; k < 3; ++k) {
      Point3 e{0, 0, 0};
      e[k] = 1.0;
      T(k, k) = 1.0 / finsler_norm_unchecked(dom, x, e, tol);
    }
    Eigen::Matrix3d mom;
    const double v0 = radial_sum(dom, x, T, sphere_rule(12), tol, &mom);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(5.0 * mom / v0);
    T = T * es.operatorSqrt();
  }
  const double det = std::fabs(T.determinant());
  const double vol = det * radial_sum(dom, x, T, sphere_rule(q.sphere_order), tol, nullptr);
  if (q.check_convergence) {
    const double coarse = det * radial_sum(dom, x, T, sphere_rule(std::max(4, q.sphere_order / 2)), tol, nullptr);
    if (std::fabs(vol - coarse) > 10.0 * q.target_rel * vol) {
      throw Error(ErrorKind::QuadratureNonConvergence,
                  "sphere rules of order " + std::to_string(q.sphere_order) + " and " +
                      std::to_string(std::max(4, q.sphere_order / 2)) + " disagree: " + format_double(vol) + " vs " +
                      format_double(coarse));
    }
  }
  return vol;
}

double busemann_density(const ConvexDomain& dom, const Point3& x, const QuadratureSpec& q) {
  return kAlpha3 / unit_ball_lebesgue(dom, x, q);
}

// ---------------------------------------------------------------- regions

void Region::validate() const {
  auto bad = [](const std::string& m) { throw Error(ErrorKind::InvalidRegion, m); };
  for (double v : {x2[0], x2[1], x3[0], x3[1]})
    if (!std::isfinite(v)) bad("base rectangle must be finite");
  if (x2[1] < x2[0] || x3[1] < x3[0]) bad("base rectangle bounds are reversed");
  if (!std::isfinite(x1_max)) bad("upper x1 limit must be a finite cutoff");
  if (floor && !domain.has_boundary_function()) bad("a horoball floor needs a domain with a boundary function");
  if (floor && !(*floor > 0.0)) bad("horoball floor must be positive (the region would reach the boundary)");
  if (!floor && !std::isfinite(x1_min)) bad("region without a floor needs a finite lower x1 limit");
  if (base_is_empty()) return;
  const std::array<std::array<double, 2>, 4> corners{{{x2[0], x3[0]}, {x2[0], x3[1]}, {x2[1], x3[0]}, {x2[1], x3[1]}}};
  if (domain.has_boundary_function()) {
    for (const auto& c : corners)
      if (!domain.in_base(c[0], c[1])) bad("base rectangle leaves the base of " + domain.name());
    if (!floor) {
      // h is convex, so its maximum over the rectangle sits at a corner.
      for (const auto& c : corners)
        if (!(x1_min > domain.boundary_value(c[0], c[1]) + domain.level())) bad("region reaches outside " + domain.name());
    }
  } else {
    for (const auto& c : corners)
      for (double z : {x1_min, x1_max})
        if (!domain.contains({z, c[0], c[1]})) bad("region box leaves " + domain.name());
  }
}

double Region::lower(double x2v, double x3v) const {
  if (!floor) return x1_min;
  return std::max(x1_min, domain.boundary_value(x2v, x3v) + domain.level() + *floor);
}

bool Region::contains(const Point3& p) const {
  if (p[1] < x2[0] || p[1] > x2[1] || p[2] < x3[0] || p[2] > x3[1]) return false;
  return p[0] > lower(p[1], p[2]) && p[0] <= x1_max;
}

// ---------------------------------------------------------------- volume integration

namespace {

struct Node {
  Point3 x;
  double w;
};

std::vector<Node> product_nodes(const Region& r, int order) {
  std::vector<Node> nodes;
  GaussRule g2 = gauss_legendre(order, r.x2[0], r.x2[1]);
  GaussRule g3 = gauss_legendre(order, r.x3[0], r.x3[1]);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      const double x2 = g2.x[i], x3 = g3.x[j], w23 = g2.w[i] * g3.w[j];
      const double lo = r.lower(x2, x3), hi = r.x1_max;
      if (!(hi > lo)) continue;
      if (r.domain.has_boundary_function()) {
        // Height above the boundary on a log scale: the density varies like a power of it.
        const double hb = r.domain.boundary_value(x2, x3) + r.domain.level();
        const double ylo = std::log(lo - hb), yhi = std::log(hi - hb);
        const int pieces = std::max(1, static_cast<int>(std::ceil(yhi - ylo)));
        for (int p = 0; p < pieces; ++p) {
          GaussRule gy = gauss_legendre(order, ylo + (yhi - ylo) * p / pieces, ylo + (yhi - ylo) * (p + 1) / pieces);
          for (int k = 0; k < order; ++k) {
            const double e = std::exp(gy.x[k]);
            nodes.push_back({{hb + e, x2, x3}, w23 * gy.w[k] * e});
          }
        }
      } else {
        GaussRule g1 = gauss_legendre(order, lo, hi);
        for (int k = 0; k < order; ++k) nodes.push_back({{g1.x[k], x2, x3}, w23 * g1.w[k]});
      }
    }
  return nodes;
}

double integrate_nodes(const Region& r, const std::vector<Node>& nodes, const QuadratureSpec& q) {
  std::vector<double> vals(nodes.size());
  detail::parallel_for(nodes.size(), q.workers,
                       [&](std::size_t i) { vals[i] = nodes[i].w * busemann_density(r.domain, nodes[i].x, q); });
  double s = 0.0;
  for (double v : vals) s += v;
  return s;
}

}  // namespace

VolumeEstimate busemann_volume(const Region& region, const QuadratureSpec& q) {
  q.validate();
  region.validate();
  VolumeEstimate est;
  est.method = q.method;
  est.seed = q.seed;
  if (region.base_is_empty()) return est;

  if (q.method == VolumeMethod::ProductGrid) {
    auto fine = product_nodes(region, q.grid_order);
    auto coarse = product_nodes(region, q.grid_order - 2);
    est.value = integrate_nodes(region, fine, q);
    est.stderr_ = std::fabs(est.value - integrate_nodes(region, coarse, q));
    est.samples = static_cast<std::int64_t>(fine.size());
    return est;
  }

  const double area = (region.x2[1] - region.x2[0]) * (region.x3[1] - region.x3[0]);
  const std::int64_t n = q.mc_samples;
  const std::int64_t chunk = 1024;
  const std::size_t nchunks = static_cast<std::size_t>((n + chunk - 1) / chunk);
  std::vector<std::pair<long double, long double>> partial(nchunks);
  detail::parallel_for(nchunks, q.workers, [&](std::size_t c) {
    long double s = 0.0L, s2 = 0.0L;
    const std::int64_t end = std::min<std::int64_t>(n, static_cast<std::int64_t>(c + 1) * chunk);
    for (std::int64_t i = static_cast<std::int64_t>(c) * chunk; i < end; ++i) {
      const auto si = static_cast<std::uint64_t>(i);
      const double x2 = region.x2[0] + detail::counter_uniform(q.seed, si, 0) * (region.x2[1] - region.x2[0]);
      const double x3 = region.x3[0] + detail::counter_uniform(q.seed, si, 1) * (region.x3[1] - region.x3[0]);
      const double lo = region.lower(x2, x3), hi = region.x1_max;
      double f = 0.0;
      if (hi > lo) {
        const double x1 = lo + detail::counter_uniform(q.seed, si, 2) * (hi - lo);
        f = area * (hi - lo) * busemann_density(region.domain, {x1, x2, x3}, q);
      }
      s += f;
      s2 += static_cast<long double>(f) * f;
    }
    partial[c] = {s, s2};
  });
  long double s = 0.0L, s2 = 0.0L;
  for (const auto& [a, b] : partial) {
    s += a;
    s2 += b;
  }
  const long double mean = s / n;
  const long double var = std::max<long double>(0.0L, (s2 - n * mean * mean) / (n - 1));
  est.value = static_cast<double>(mean);
  est.stderr_ = static_cast<double>(std::sqrt(var / n));
  est.samples = n;
  return est;
}

// ---------------------------------------------------------------- Hausdorff oracle

HausdorffEstimate hausdorff_oracle(const Region& box, double eps, const HausdorffOptions& opt) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidParameter, "cover diameter bound must be positive");
  if (box.floor) throw Error(ErrorKind::InvalidRegion, "the Hausdorff oracle takes a plain box (no floor)");
  HausdorffEstimate out;
  const std::array<double, 3> lo{box.x1_min, box.x2[0], box.x3[0]}, hi{box.x1_max, box.x2[1], box.x3[1]};
  for (int k = 0; k < 3; ++k)
    if (!(hi[k] > lo[k])) return out;  // degenerate box: measure zero
  box.validate();
  const ConvexDomain& dom = box.domain;

  auto vertex = [&](const std::array<double, 3>& a, const std::array<double, 3>& h, int m) -> Point3 {
    return {a[0] + ((m & 1) ? h[0] : 0.0), a[1] + ((m & 2) ? h[1] : 0.0), a[2] + ((m & 4) ? h[2] : 0.0)};
  };
  auto cell_diameter = [&](const std::array<double, 3>& a, const std::array<double, 3>& h) {
    double d = 0.0;
    for (int m = 0; m < 8; ++m)
      for (int n = m + 1; n < 8; ++n) d = std::max(d, hilbert_distance(dom, vertex(a, h, m), vertex(a, h, n)));
    return d;
  };

  const std::array<double, 3> ext{hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]};
  if (cell_diameter(lo, ext) >= 1.0) throw Error(ErrorKind::RegionTooLarge, "box has Hilbert diameter >= 1");

  int level = 0;
  double dmax = 0.0;
  for (;; ++level) {
    const int n = 1 << level;
    const std::array<double, 3> h{ext[0] / n, ext[1] / n, ext[2] / n};
    std::vector<double> diam(static_cast<std::size_t>(n) * n * n);
    detail::parallel_for(diam.size(), 0, [&](std::size_t c) {
      const int i = static_cast<int>(c) / (n * n), j = (static_cast<int>(c) / n) % n, k = static_cast<int>(c) % n;
      diam[c] = cell_diameter({lo[0] + i * h[0], lo[1] + j * h[1], lo[2] + k * h[2]}, h);
    });
    dmax = *std::max_element(diam.begin(), diam.end());
    if (dmax < eps || level >= opt.max_level) break;
  }
  out.level = level;
  out.max_cell_diameter = dmax;

  // Each cell (diameter < eps) is weighed by alpha_3 (2r)^3 / Leb(B_r(center)) with r = eps/2, the
  // Lebesgue volume of the metric ball counted on a lattice using hilbert_distance alone.
  const int n = 1 << level;
  const std::array<double, 3> h{ext[0] / n, ext[1] / n, ext[2] / n};
  const std::array<double, 3> delta{h[0] / opt.sub, h[1] / opt.sub, h[2] / opt.sub};
  const double r = 0.5 * eps;
  std::vector<double> meas(static_cast<std::size_t>(n) * n * n);
  detail::parallel_for(meas.size(), 0, [&](std::size_t c) {
    const int i = static_cast<int>(c) / (n * n), j = (static_cast<int>(c) / n) % n, k = static_cast<int>(c) % n;
    const Point3 ctr{lo[0] + (i + 0.5) * h[0], lo[1] + (j + 0.5) * h[1], lo[2] + (k + 0.5) * h[2]};
    long inside = 0;
    int empty_shells = 0;
    for (int m = 0; empty_shells < 2; ++m) {
      long shell = 0;
      for (int a = -m; a <= m; ++a)
        for (int b = -m; b <= m; ++b)
          for (int d = -m; d <= m; ++d) {
            if (std::max({std::abs(a), std::abs(b), std::abs(d)}) != m) continue;
            const Point3 p{ctr[0] + a * delta[0], ctr[1] + b * delta[1], ctr[2] + d * delta[2]};
            if (dom.contains(p) && hilbert_distance(dom, ctr, p) < r) ++shell;
          }
      inside += shell;
      empty_shells = (shell == 0 && m > 0) ? empty_shells + 1 : 0;
      if (m > 4000) throw Error(ErrorKind::RegionTooLarge, "metric ball lattice count did not terminate");
    }
    const double ball_leb = static_cast<double>(inside) * delta[0] * delta[1] * delta[2];
    meas[c] = kAlpha3 * 8.0 * r * r * r / ball_leb * (h[0] * h[1] * h[2]);
  });
  for (double v : meas) out.value += v;
  return out;
}

// ---------------------------------------------------------------- CSV writers

void write_density_grid_csv(std::ostream& out, const Region& region, int n1, int n2, int n3, const QuadratureSpec& q) {
  region.validate();
  if (n1 < 1 || n2 < 1 || n3 < 1) throw Error(ErrorKind::InvalidParameter, "density grid needs positive sizes");
  std::vector<Point3> pts;
  for (int j = 0; j < n2; ++j)
    for (int k = 0; k < n3; ++k) {
      const double x2 = region.x2[0] + (j + 0.5) * (region.x2[1] - region.x2[0]) / n2;
      const double x3 = region.x3[0] + (k + 0.5) * (region.x3[1] - region.x3[0]) / n3;
      const double lo = region.lower(x2, x3);
      if (!(region.x1_max > lo)) continue;
      for (int i = 0; i < n1; ++i) pts.push_back({lo + (i + 0.5) * (region.x1_max - lo) / n1, x2, x3});
    }
  std::vector<double> dens(pts.size());
  detail::parallel_for(pts.size(), q.workers, [&](std::size_t i) { dens[i] = busemann_density(region.domain, pts[i], q); });
  out << "x1,x2,x3,density\n";
  for (std::size_t i = 0; i < pts.size(); ++i)
    out << format_double(pts[i][0]) << "," << format_double(pts[i][1]) << "," << format_double(pts[i][2]) << ","
        << format_double(dens[i]) << "\n";
}

void write_volume_report_csv(std::ostream& out, const std::vector<VolumeRow>& rows) {
  out << "cutoff_X,estimate,stderr,samples,seed\n";
  for (const auto& r : rows)
    out << format_double(r.cutoff) << "," << format_double(r.estimate.value) << "," << format_double(r.estimate.stderr_) << ","
        << r.estimate.samples << "," << r.estimate.seed << "\n";
}

}  // namespace cuspgeom::hilbert
