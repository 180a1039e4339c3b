#include "cuspgeom/cuspvol/cusp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cuspgeom/io/plot.hpp"
#include "parallel.hpp"

namespace cuspgeom::cuspvol {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Point3 translate(double b, const Point3& x) { return {x[0] + b * x[2] + 0.5 * b * b, x[1], x[2] + b}; }
}  // namespace

CuspFundamentalDomain CuspFundamentalDomain::fig8(double s, double k) {
  if (s == 0.0) throw Error(ErrorKind::InvalidParameter, "s = 0 has no dilation; the cusp is not of L' type");
  CuspFundamentalDomain fd;
  fd.k = k;
  fd.a_l = s;
  fd.b_t = std::sqrt(s * std::sinh(s / 4.0) / 3.0);
  fd.validate();
  return fd;
}

void CuspFundamentalDomain::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorKind::InvalidRegion, "horoball floor k must be positive");
  if (!std::isfinite(a_l) || !std::isfinite(b_t)) throw Error(ErrorKind::InvalidRegion, "lattice parameters must be finite");
}

std::array<double, 2> CuspFundamentalDomain::x2_range() const {
  const double e = std::exp(a_l);
  return {std::min(1.0, e), std::max(1.0, e)};
}

std::array<double, 2> CuspFundamentalDomain::x3_range() const { return {std::min(0.0, b_t), std::max(0.0, b_t)}; }

hilbert::Region CuspFundamentalDomain::region(double x1_min, double x1_max) const {
  validate();
  hilbert::Region r;
  r.domain = domains::ConvexDomain::d_prime();
  r.x2 = x2_range();
  r.x3 = x3_range();
  r.x1_min = x1_min;
  r.x1_max = x1_max;
  r.floor = k;
  return r;
}

bool CuspFundamentalDomain::contains(const Point3& x) const {
  const auto r2 = x2_range(), r3 = x3_range();
  if (x[1] < r2[0] || x[1] > r2[1] || x[2] < r3[0] || x[2] > r3[1]) return false;
  return x[0] > domains::f_prime(x[1], x[2]) + k;
}

DirectionNorms direction_norms(const Point3& x) {
  if (!(x[1] > 0.0) || !(x[0] > domains::f_prime(x[1], x[2])))
    throw Error(ErrorKind::NotInterior, "direction_norms needs an interior point of D'");
  DirectionNorms n;
  n.k1 = std::exp(0.5 * x[2] * x[2] - x[0]);
  n.k2 = 0.5 * x[2] * x[2] - std::log(x[1]);
  n.k3 = std::sqrt(2.0 * (x[0] + std::log(x[1])));
  n.e2 = 1.0 / (x[1] - n.k1);
  n.e1 = 1.0 / (x[0] - n.k2);
  n.e3 = 2.0 * n.k3 / (n.k3 * n.k3 - x[2] * x[2]);
  return n;
}

double simplex_t(const Point3& x) { return (x[1] - direction_norms(x).k1) * (1.0 - 1e-9); }

double simplex_bound(const Point3& x) { return simplex_t(x) * std::pow(x[0], 1.5) / (36.0 * std::sqrt(2.0)); }

bool simplex_inequalities_hold(const Point3& x) {
  const DirectionNorms n = direction_norms(x);
  const double t = simplex_t(x);
  return t > 0.0 && t * n.e2 < 1.0 && 0.5 * x[0] * n.e1 < 1.0 && std::sqrt(x[0]) / (3.0 * std::sqrt(2.0)) * n.e3 < 1.0;
}

double lower_bound_threshold(const CuspFundamentalDomain& fd, int grid) {
  fd.validate();
  const auto r2 = fd.x2_range(), r3 = fd.x3_range();
  for (int p = 0; p <= 6; ++p) {
    const double n = std::pow(10.0, p);
    bool ok = true;
    for (int i = 0; i <= grid && ok; ++i)
      for (int j = 0; j <= grid && ok; ++j) {
        const double x2 = r2[0] + (r2[1] - r2[0]) * i / grid, x3 = r3[0] + (r3[1] - r3[0]) * j / grid;
        for (double x1 = n; x1 <= 1e6 && ok; x1 *= std::sqrt(10.0)) {
          const Point3 x{x1, x2, x3};
          if (!fd.contains(x)) continue;
          ok = simplex_inequalities_hold(x);
        }
      }
    if (ok) return n;
  }
  throw Error(ErrorKind::InvalidRegion, "no threshold up to 1e6 satisfies the simplex inequalities");
}

LowerBoundCheck lower_bound_check(const Point3& x, double threshold, const QuadratureSpec& q) {
  if (!(x[0] > threshold)) throw Error(ErrorKind::InvalidParameter, "lower bound is only asserted above x1 = " + format_double(threshold));
  LowerBoundCheck c;
  c.x = x;
  c.threshold = threshold;
  c.volume = hilbert::unit_ball_lebesgue(domains::ConvexDomain::d_prime(), x, q);
  c.t = simplex_t(x);
  c.bound = simplex_bound(x);
  c.margin = c.volume - c.bound;
  return c;
}

double fitted_exponent(const std::vector<double>& x1, const std::vector<double>& volume) {
  if (x1.size() != volume.size() || x1.size() < 2) throw Error(ErrorKind::InvalidParameter, "regression needs two or more matched points");
  double mx = 0, my = 0;
  const double n = static_cast<double>(x1.size());
  for (std::size_t i = 0; i < x1.size(); ++i) {
    mx += std::log(x1[i]) / n;
    my += std::log(volume[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x1.size(); ++i) {
    const double dx = std::log(x1[i]) - mx;
    sxy += dx * (std::log(volume[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

bool VolumeTable::monotone() const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].estimate.value < rows[i - 1].estimate.value) return false;
  return true;
}

VolumeTable cusp_volume_table(const CuspFundamentalDomain& fd, const std::vector<double>& cutoffs, const QuadratureSpec& q) {
  fd.validate();
  for (std::size_t i = 1; i < cutoffs.size(); ++i)
    if (!(cutoffs[i] > cutoffs[i - 1])) throw Error(ErrorKind::InvalidParameter, "cutoffs must be strictly increasing");
  VolumeTable t;
  t.fd = fd;
  double lo = -std::numeric_limits<double>::infinity();
  double total = 0.0, var = 0.0;
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    const hilbert::VolumeEstimate slab = hilbert::busemann_volume(fd.region(lo, cutoffs[i]), q);
    VolumeTableRow row;
    row.cutoff = cutoffs[i];
    total += slab.value;
    var += slab.stderr_ * slab.stderr_;
    row.estimate = slab;
    row.estimate.value = total;
    row.estimate.stderr_ = std::sqrt(var);
    row.increment = slab.value;
    row.increment_ratio = i >= 2 && t.rows.back().increment > 0.0 ? slab.value / t.rows.back().increment : kNaN;
    t.rows.push_back(row);
    lo = cutoffs[i];
  }
  return t;
}

void write_volume_table_csv(std::ostream& out, const VolumeTable& t) {
  out << "cutoff_X,estimate,stderr,samples,seed,increment,increment_ratio\n";
  for (const auto& r : t.rows)
    out << io::csv_field(r.cutoff) << ',' << io::csv_field(r.estimate.value) << ',' << io::csv_field(r.estimate.stderr_) << ','
        << r.estimate.samples << ',' << r.estimate.seed << ',' << io::csv_field(r.increment) << ',' << io::csv_field(r.increment_ratio)
        << '\n';
}

void write_volume_table_svg(std::ostream& out, const VolumeTable& t) {
  io::Series s{"volume", {}, {}};
  for (const auto& r : t.rows) {
    s.x.push_back(r.cutoff);
    s.y.push_back(r.estimate.value);
  }
  io::write_line_plot_svg(out, "Truncated cusp volume", "cutoff X", "Busemann volume", {s}, true);
}

bool DisplacementProfile::strictly_decreasing() const {
  for (std::size_t i = 1; i < displacement.size(); ++i)
    if (!(displacement[i] < displacement[i - 1])) return false;
  return true;
}

double DisplacementProfile::decay_ratio() const {
  if (displacement.empty() || displacement.front() == 0.0) return kNaN;
  return displacement.back() / displacement.front();
}

double translation_displacement(double b, const Point3& x, double kappa_prime, double tol) {
  const auto amb = domains::ConvexDomain::d_prime().with_level(kappa_prime);
  return hilbert::hilbert_distance(amb, x, translate(b, x), tol);
}

DisplacementProfile displacement_profile(double s, double b, const std::vector<double>& levels, double kappa_prime) {
  if (levels.empty()) throw Error(ErrorKind::InvalidParameter, "displacement profile needs at least one level");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > kappa_prime)) throw Error(ErrorKind::InvalidParameter, "levels must lie above the ambient horoball level");
    if (i > 0 && !(levels[i] > levels[i - 1])) throw Error(ErrorKind::InvalidParameter, "levels must be strictly increasing");
  }
  if (b == 0.0) throw Error(ErrorKind::ZeroElement, "the meridian translation is trivial");
  DisplacementProfile p;
  p.s = s;
  p.b = b;
  p.kappa_prime = kappa_prime;
  p.levels = levels;
  p.displacement.resize(levels.size());
  detail::parallel_for(levels.size(), 0, [&](std::size_t i) {
    p.displacement[i] = translation_displacement(b, {domains::f_prime(1.0, 0.0) + levels[i], 1.0, 0.0}, kappa_prime);
  });
  const std::array<std::array<double, 2>, 8> base{{{0.5, -1.0}, {1.0, 0.3}, {2.0, 1.5}, {4.0, -0.4}, {std::exp(s), 0.0}, {1.0, b}, {3.0, 2.0}, {0.7, -2.0}}};
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& c : base) {
    const double d = translation_displacement(b, {domains::f_prime(c[0], c[1]) + levels[0], c[0], c[1]}, kappa_prime);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  p.constancy_spread = hi - lo;
  return p;
}

void write_displacement_csv(std::ostream& out, const DisplacementProfile& p) {
  out << "level,displacement\n";
  for (std::size_t i = 0; i < p.levels.size(); ++i) out << io::csv_field(p.levels[i]) << ',' << io::csv_field(p.displacement[i]) << '\n';
}

void write_displacement_svg(std::ostream& out, const DisplacementProfile& p) {
  io::write_line_plot_svg(out, "Meridian displacement by horosphere level", "level", "Hilbert displacement",
                          {io::Series{"displacement", p.levels, p.displacement}}, true);
}

TilingReport tiling_check(const CuspFundamentalDomain& fd, int samples, std::uint64_t seed) {
  fd.validate();
  if (fd.a_l == 0.0 || fd.b_t == 0.0) throw Error(ErrorKind::InvalidRegion, "tiling needs a rank-2 lattice");
  const double ea = std::exp(std::fabs(fd.a_l)), b = std::fabs(fd.b_t);
  TilingReport rep;
  rep.samples = samples;
  for (int i = 0; i < samples; ++i) {
    const auto si = static_cast<std::uint64_t>(i);
    // log-uniform in x2 over [e^{-a}, e^{2a}], uniform in x3 over [-b, 2b]
    const double x2 = std::exp(std::log(ea) * (-1.0 + 3.0 * detail::counter_uniform(seed, si, 0)));
    const double x3 = b * (-1.0 + 3.0 * detail::counter_uniform(seed, si, 1));
    int cover = 0;
    for (int p = -1; p <= 1; ++p)
      for (int q = -1; q <= 1; ++q) {
        // Tile g R with g = dilation^p translation^q; test g^{-1} x in R (half-open).
        const double y2 = x2 / std::pow(ea, p), y3 = x3 - q * b;
        if (y2 >= 1.0 && y2 < ea && y3 >= 0.0 && y3 < b) ++cover;
      }
    if (cover != 1) ++rep.bad;
  }
  return rep;
}

}  // namespace cuspgeom::cuspvol
