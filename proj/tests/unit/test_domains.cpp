#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cuspgeom/domains/domain.hpp"
#include "cuspgeom/domains/export.hpp"
#include "support.hpp"

using namespace cuspgeom;
using namespace cuspgeom::domains;
using Q = Rational;

TEST_CASE("membership examples") {
  const auto dp = ConvexDomain::d_prime();
  CHECK(dp.contains({1, 1, 0}));
  CHECK_FALSE(dp.contains({0, 1, 0}));
  CHECK(dp.contains({10, 10, 0}));
  CHECK_FALSE(dp.contains({5, -1, 0}));
}

TEST_CASE("boundary function examples") {
  CHECK(ConvexDomain::d0().boundary_value(2, 0) == doctest::Approx(2.0));
  CHECK(ConvexDomain::d_prime().boundary_value(1, 0) == doctest::Approx(0.0));
  CHECK(ConvexDomain::d_prime().boundary_value(std::exp(1.0), 2) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ConvexDomain::d_prime().boundary_value(-1, 0), Error);
}

TEST_CASE("D_t boundary agrees with the closed form") {
  for (double t : {0.25, 0.5, 1.0, 2.0}) {
    const auto dt = ConvexDomain::d_t(t);
    for (double x2 : {0.3, 1.0, 2.5})
      for (double x3 : {-1.0, 0.0, 0.7}) {
        if (!dt.in_base(x2, x3)) continue;
        CHECK(dt.boundary_value(x2, x3) == doctest::Approx(dt_boundary_closed_form(t, x2, x3)).epsilon(1e-9));
      }
  }
}

TEST_CASE("chord endpoint examples") {
  const Chord c0 = chord_endpoints(ConvexDomain::d0(), {1, 0, 0}, {1, 0, 0});
  CHECK(c0.plus_ideal());
  CHECK(c0.s_minus == doctest::Approx(1.0));

  const auto dp = ConvexDomain::d_prime();
  const Chord c2 = chord_endpoints(dp, {2, 1, 0}, {0, 1, 0});
  CHECK(c2.plus_ideal());
  REQUIRE(c2.minus());
  CHECK((*c2.minus())[1] == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));

  const Chord c3 = chord_endpoints(dp, {2, 1, 0}, {0, 0, 1});
  CHECK((*c3.minus())[2] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK((*c3.plus())[2] == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(chord_endpoints(dp, {-1, 1, 0}, {1, 0, 0}), Error);
}

TEST_CASE("V_t examples") {
  const auto v = vt_matrix(Q(1));
  CHECK(v == projlin::Mat4<Q>{{1, 1, 0, -1}, {0, 1, 0, -1}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(vt_map(Q(1)).apply(projlin::ProjPoint<Q>::affine(Q(0), Q(1), Q(0))).equals(projlin::ProjPoint<Q>::affine(Q(0), Q(0), Q(0))));
  for (Q t : {Q(1, 3), Q(-2), Q(7, 5)}) CHECK(projlin::determinant(vt_matrix(t)) * t * t * t * t == Q(1));
  CHECK_THROWS_AS(vt_matrix(Q(0)), Error);
}

TEST_CASE("horoball examples") {
  const auto dp = ConvexDomain::d_prime();
  CHECK(horoball_contains(Horosphere(dp, 1), {2, 1, 0}));
  CHECK_FALSE(horoball_contains(Horosphere(dp, 3), {2, 1, 0}));
  const double c = 1.5;
  CHECK_FALSE(horoball_contains(Horosphere(ConvexDomain::d0(), c), {c, 0, 0}));
}

TEST_CASE("D' and D_t correspond under V_t") {
  std::mt19937_64 g(11);
  for (double t : {0.25, 0.5, 1.0}) {
    const auto dt = ConvexDomain::d_t(t);
    for (int k = 0; k < 200; ++k) {
      const Point3 x{testsupport::rand_real(g, -2, 4), testsupport::rand_real(g, 0.05, 3), testsupport::rand_real(g, -2, 2)};
      CHECK(ConvexDomain::d_prime().contains(x) == dt.contains(vt_apply(t, x)));
      const Point3 y = vt_apply_inverse(t, vt_apply(t, x));
      for (int i = 0; i < 3; ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("boundary functions are convex") {
  std::mt19937_64 g(12);
  for (const auto& dom : {ConvexDomain::d0(), ConvexDomain::d_prime()}) {
    for (int k = 0; k < 2000; ++k) {
      const double u2 = testsupport::rand_real(g, 0.01, 5), u3 = testsupport::rand_real(g, -3, 3);
      const double w2 = testsupport::rand_real(g, 0.01, 5), w3 = testsupport::rand_real(g, -3, 3);
      const double l = testsupport::rand_real(g, 0, 1);
      const double lhs = dom.boundary_value(l * u2 + (1 - l) * w2, l * u3 + (1 - l) * w3);
      CHECK(lhs <= l * dom.boundary_value(u2, u3) + (1 - l) * dom.boundary_value(w2, w3) + 1e-12);
    }
  }
}

TEST_CASE("descriptor json") {
  const auto d = domain_from_json(nlohmann::json::parse(R"({"family":"Dt","t":0.25})"));
  CHECK(d.family() == Family::Dt);
  CHECK(d.t() == 0.25);
  CHECK(domain_from_json(d.descriptor()).t() == 0.25);
  CHECK_THROWS_AS(domain_from_json(nlohmann::json::parse(R"({"family":"Nope"})")), Error);
  CHECK_THROWS_AS(domain_from_json(nlohmann::json::parse(R"({"family":"Dt","t":0})")), Error);
}

TEST_CASE("mesh and slice export") {
  std::ostringstream obj, svg;
  write_graph_obj(obj, ConvexDomain::d_prime(), 1.0, BaseGrid{{0.5, 2.0}, {-1.0, 1.0}, 4, 3});
  std::istringstream in(obj.str());
  int verts = 0, faces = 0;
  for (std::string line; std::getline(in, line);) {
    verts += line.rfind("v ", 0) == 0;
    faces += line.rfind("f ", 0) == 0;
  }
  CHECK(verts == 12);
  CHECK(faces == 12);
  write_slice_svg(svg, ConvexDomain::d0(), 0.0, 0.0, {-1.0, 1.0}, 50);
  CHECK(svg.str().find("<polyline") != std::string::npos);
}
