#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cuspgeom/cuspvol/cusp.hpp"
#include "cuspgeom/hilbert/metric.hpp"
#include "support.hpp"

using namespace cuspgeom;
using namespace cuspgeom::cuspvol;

namespace {

const double kLog16 = std::log(16.0);

}  // namespace

TEST_CASE("fundamental domain of the figure-eight lattice") {
  const auto fd = CuspFundamentalDomain::fig8(kLog16, 1.0);
  CHECK(fd.a_l == doctest::Approx(kLog16));
  CHECK(fd.b_t == doctest::Approx(std::sqrt(kLog16 * std::sinh(kLog16 / 4) / 3)));
  CHECK(fd.contains({5, 1.5, 0.2}));
  CHECK_FALSE(fd.contains({0.5, 1.5, 0.2}));
  CHECK_FALSE(fd.contains({5, 0.5, 0.2}));
  CHECK_THROWS_AS(CuspFundamentalDomain::fig8(kLog16, 0.0), Error);
}

TEST_CASE("closed-form direction norms") {
  const DirectionNorms n = direction_norms({2, 1, 0});
  CHECK(n.e2 == doctest::Approx(1 / (1 - std::exp(-2.0))).epsilon(1e-14));
  CHECK(n.e1 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(n.e3 == doctest::Approx(1.0).epsilon(1e-14));
  const auto dp = domains::ConvexDomain::d_prime();
  for (const domains::Point3 x : {domains::Point3{2, 1, 0}, domains::Point3{7, 2.5, 0.9}, domains::Point3{40, 1.3, -1.7}}) {
    const DirectionNorms d = direction_norms(x);
    CHECK(std::fabs(d.e2 - hilbert::finsler_norm(dp, x, {0, 1, 0})) < 1e-9);
    CHECK(std::fabs(d.e1 - hilbert::finsler_norm(dp, x, {1, 0, 0})) < 1e-9);
    CHECK(std::fabs(d.e3 - hilbert::finsler_norm(dp, x, {0, 0, 1})) < 1e-9);
  }
  for (double x1 : {1e2, 1e4, 1e6}) CHECK(direction_norms({x1, 1, 0}).e1 * x1 == doctest::Approx(1.0));
  CHECK_THROWS_AS(direction_norms({-1, 1, 0}), Error);
}

TEST_CASE("simplex bound and threshold") {
  const auto fd = CuspFundamentalDomain::fig8(kLog16, 1.0);
  const double n = lower_bound_threshold(fd);
  CHECK(n == 1.0);
  std::vector<double> xs, vols;
  for (double x1 : {1e2, 1e3, 1e4}) {
    const LowerBoundCheck c = lower_bound_check({x1, 1, 0}, n);
    CHECK(c.holds());
    CHECK(c.bound == doctest::Approx(c.t * std::pow(x1, 1.5) / (36 * std::sqrt(2.0))));
    CHECK(simplex_inequalities_hold(c.x));
    xs.push_back(x1);
    vols.push_back(c.volume);
  }
  CHECK(fitted_exponent(xs, vols) >= 1.4);
  CHECK_THROWS_AS(lower_bound_check({0.5, 1, 0}, n), Error);
}

TEST_CASE("volume table for the figure-eight cusp") {
  const auto fd = CuspFundamentalDomain::fig8(kLog16, 1.0);
  const VolumeTable t = cusp_volume_table(fd, {10, 20, 40, 80});
  REQUIRE(t.rows.size() == 4);
  CHECK(t.monotone());
  for (std::size_t i = 2; i < t.rows.size(); ++i) {
    CHECK(t.rows[i].increment_ratio >= 0.5);
    CHECK(t.rows[i].increment_ratio <= 0.9);
  }
  CHECK(std::isnan(t.rows[1].increment_ratio));
  std::ostringstream csv, svg;
  write_volume_table_csv(csv, t);
  write_volume_table_svg(svg, t);
  CHECK(csv.str().rfind("cutoff_X,estimate,stderr,samples,seed,increment,increment_ratio", 0) == 0);
  CHECK(svg.str().find("<svg") != std::string::npos);
  CHECK_THROWS_AS(cusp_volume_table(fd, {20, 10}), Error);
}

TEST_CASE("empty base gives zero volume") {
  CuspFundamentalDomain fd;
  fd.k = 1.0;
  const VolumeTable t = cusp_volume_table(fd, {10, 20});
  for (const auto& r : t.rows) CHECK(r.estimate.value == 0.0);
}

TEST_CASE("tail beyond a cutoff is bounded by the geometric series") {
  const auto fd = CuspFundamentalDomain::fig8(kLog16, 1.0);
  QuadratureSpec q;
  q.sphere_order = 16;
  q.grid_order = 4;
  q.check_convergence = false;
  const VolumeTable t = cusp_volume_table(fd, {10, 20, 40, 80, 160, 320}, q);
  const double r = 1 / std::sqrt(2.0);
  for (std::size_t i = 0; i + 2 < t.rows.size(); ++i) {
    const double tail = t.rows.back().estimate.value - t.rows[i].estimate.value;
    CHECK(tail < 3 * t.rows[i + 1].increment / (1 - r));
  }
}

TEST_CASE("volume shrinks in a larger domain") {
  hilbert::Region small;
  small.x2 = {1, 2};
  small.x3 = {0, 0.5};
  small.floor = 1.0;
  small.x1_max = 20;
  hilbert::Region big = small;
  big.domain = domains::ConvexDomain::d_prime().with_level(-0.5);
  big.floor = 1.5;
  const double a = hilbert::busemann_volume(small).value, b = hilbert::busemann_volume(big).value;
  CHECK(b < a);
}

TEST_CASE("Monte Carlo standard error scales like one over sqrt(N)") {
  const auto fd = CuspFundamentalDomain::fig8(kLog16, 1.0);
  QuadratureSpec q;
  q.method = hilbert::VolumeMethod::MonteCarlo;
  q.sphere_order = 8;
  q.check_convergence = false;
  q.mc_samples = 4000;
  const auto a = hilbert::busemann_volume(fd.region(fd.k, 20), q);
  q.mc_samples = 8000;
  const auto b = hilbert::busemann_volume(fd.region(fd.k, 20), q);
  const double ratio = a.stderr_ / b.stderr_;
  CHECK(ratio > std::sqrt(2.0) / 2);
  CHECK(ratio < 2 * std::sqrt(2.0));
}

TEST_CASE("displacement profile") {
  const auto fd = CuspFundamentalDomain::fig8(kLog16, 1.0);
  const DisplacementProfile p = displacement_profile(kLog16, fd.b_t, {1, 2, 4, 8, 16});
  CHECK(p.strictly_decreasing());
  CHECK(p.constancy_spread < 1e-9);
  const DisplacementProfile far = displacement_profile(kLog16, fd.b_t, {1, 1024});
  CHECK(far.strictly_decreasing());
  CHECK(far.decay_ratio() < 0.05);
  CHECK_THROWS_AS(displacement_profile(kLog16, fd.b_t, {2, 1}), Error);
  CHECK_THROWS_AS(displacement_profile(kLog16, fd.b_t, {0.25, 1}), Error);
  std::ostringstream csv;
  write_displacement_csv(csv, p);
  CHECK(csv.str().rfind("level,displacement", 0) == 0);
}

TEST_CASE("lattice-equivalent points are displaced equally") {
  const auto fd = CuspFundamentalDomain::fig8(kLog16, 1.0);
  const auto horo = domains::ConvexDomain::d_prime().with_level(0.5);
  const double level = 3.0;
  const domains::Point3 x{level + 0.5 + domains::f_prime(1.3, 0.2), 1.3, 0.2};
  // Dilation by e^{a}: x2 scales, x1 drops by a; translation by b: x3 shifts.
  const double a = fd.a_l, b = fd.b_t;
  const domains::Point3 y{x[0] - a + b * x[2] + b * b / 2, x[1] * std::exp(a), x[2] + b};
  CHECK(horo.contains(y));
  CHECK(std::fabs(translation_displacement(b, x, 0.5) - translation_displacement(b, y, 0.5)) < 1e-9);
}

TEST_CASE("translates of the base rectangle tile a neighbourhood") {
  const TilingReport r = tiling_check(CuspFundamentalDomain::fig8(kLog16, 1.0));
  CHECK(r.samples == 10000);
  CHECK(r.bad_fraction() < 1e-3);
}
