#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cuspgeom/cusplie/families.hpp"
#include "cuspgeom/fig8/holonomy.hpp"
#include "cuspgeom/projlin/matfun.hpp"
#include "cuspgeom/projlin/projective.hpp"
#include "support.hpp"

using namespace cuspgeom;
using namespace cuspgeom::fig8;
using projlin::Mat4;
using Q = Rational;

namespace {

Q random_t(std::mt19937_64& g) {
  std::uniform_int_distribution<int> den(2, 40);
  const int d = den(g);
  std::uniform_int_distribution<int> num(1, d - 1);
  Q t(num(g), d);
  t.canonicalize();
  return t;
}

}  // namespace

TEST_CASE("generator displays") {
  const auto g = generators(Q(1, 2));
  CHECK(g.m(0, 3) == Q(-1, 2));
  CHECK(g.m(2, 3) == Q(1));
  CHECK(g.n(1, 0) == Q(4));
  CHECK(generators(Q(1)).n(1, 0) == Q(3));
  CHECK_THROWS_AS(generators(Q(0)), Error);
}

TEST_CASE("relation examples") {
  for (Q t : {Q(1, 2), Q(1, 3), Q(7, 5)}) CHECK(relation_residual(t).exact_zero());
  CHECK(relation_residual_float(0.37) < 1e-12);
}

TEST_CASE("longitude examples") {
  CHECK(longitude_projectively_unipotent(Q(1, 2)));
  CHECK_FALSE(longitude_projectively_unipotent(Q(1, 4)));
  const auto sp = longitude_spectrum(Q(1, 4));
  REQUIRE(sp.size() == 2);
  CHECK(sp[0].value == Q(1, 2));
  CHECK(sp[0].multiplicity == 3);
  CHECK(sp[1].value == Q(8));
  CHECK(sp[1].multiplicity == 1);
}

TEST_CASE("displayed longitude with the typo read as 2t") {
  for (Q t : {Q(1, 4), Q(2, 5), Q(3, 7)}) {
    const DisplayComparison c = compare_displayed_longitude(t);
    CHECK(c.matching == 16);
    CHECK(c.needs_typo_fix);
  }
}

TEST_CASE("exact properties on random rational parameters") {
  std::mt19937_64 g(41);
  for (int k = 0; k < 20; ++k) {
    const Q t = random_t(g);
    INFO(to_string(t));
    CHECK(relation_residual(t).exact_zero());
    const auto gen = generators(t);
    for (const auto& m : {gen.m, gen.n}) {
      const auto sp = projlin::real_spectrum(m);
      CHECK((sp.size() == 1 && sp[0].value == 1 && sp[0].multiplicity == 4));
    }
    const Mat4<Q> l = longitude(t);
    CHECK(l * gen.m == gen.m * l);
    const auto sp = longitude_spectrum(t);
    if (t == Q(1, 2)) continue;
    REQUIRE(sp.size() == 2);
    const Q a = 2 * t, b = 1 / (8 * t * t * t);
    CHECK(((sp[0].value == a && sp[0].multiplicity == 3 && sp[1].value == b) ||
           (sp[1].value == a && sp[1].multiplicity == 3 && sp[0].value == b)));
    CHECK(longitude_projectively_unipotent(t) == (t == Q(1, 2)));
  }
}

TEST_CASE("coordinate change") {
  CHECK(s_of_t(0.5) == 0.0);
  CHECK(t_of_s(std::log(16.0)) == doctest::Approx(0.25).epsilon(1e-15));
  for (double t : {0.1, 0.3, 0.5, 0.9, 2.0}) CHECK(t_of_s(s_of_t(t)) == doctest::Approx(t).epsilon(1e-14));
  CHECK(s_of_t(0.2) > s_of_t(0.3));
  CHECK_THROWS_AS(s_of_t(0.0), Error);
}

TEST_CASE("normalized peripheral pair") {
  for (double s : {std::log(16.0), -0.7, 0.05}) {
    const PeripheralPair p = normalized_peripheral(s);
    const double mu = std::sqrt(std::sinh(s / 4) / (3 * s));
    CHECK(meridian_parameter(s) == doctest::Approx(mu).epsilon(1e-14));
    CHECK(p.meridian(0, 2) == doctest::Approx(mu).epsilon(1e-14));
    CHECK(p.meridian(0, 3) == doctest::Approx(std::sinh(s / 4) / (6 * s)).epsilon(1e-14));
    CHECK(p.longitude(0, 1) == doctest::Approx(std::expm1(s) / s).epsilon(1e-14));
    CHECK(p.longitude(0, 3) == doctest::Approx((std::exp(s) - s - 1) / (s * s)).epsilon(1e-12));
    CHECK((p.meridian * p.longitude - p.longitude * p.meridian).max_abs() < 1e-12);
    const auto sp = projlin::real_spectrum(p.longitude);
    REQUIRE(sp.size() == 2);
    const double lo = std::min(1.0, std::exp(s)), hi = std::max(1.0, std::exp(s));
    CHECK(sp.front().value == doctest::Approx(lo));
    CHECK(sp.back().value == doctest::Approx(hi));
    const auto fm = cusplie::fit_algebra(projlin::matrix_log(p.meridian), cusplie::AlgFamily::Lt, s);
    const auto fl = cusplie::fit_algebra(projlin::matrix_log(p.longitude), cusplie::AlgFamily::Lt, s);
    CHECK(fm.residual < 1e-10);
    CHECK(fl.residual < 1e-10);
    CHECK(fm.v == doctest::Approx(mu));
    CHECK(fl.u == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(normalized_peripheral(0.0), Error);
  CHECK(meridian_parameter(1e-9) == doctest::Approx(1 / (2 * std::sqrt(3.0))).epsilon(1e-15));
}

TEST_CASE("limit pair and its cusp shape") {
  const PeripheralPair lim = limit_pair();
  CHECK(lim.meridian(0, 3) == doctest::Approx(1.0 / 24));
  CHECK(lim.meridian(0, 2) == doctest::Approx(1 / (2 * std::sqrt(3.0))));
  CHECK(lim.longitude(0, 1) == 1.0);
  CHECK(lim.longitude(0, 3) == 0.5);
  const auto shape = cusplie::cusp_shape(lim.meridian, lim.longitude);
  CHECK(std::abs(shape.raw - std::complex<double>(0, -2 * std::sqrt(3.0))) < 1e-12);
  // Parameters read off the pipeline near s = 0 give the same purely imaginary shape.
  const auto near = cusplie::cusp_shape({0, meridian_parameter(1e-8)}, {1, 0});
  CHECK(std::fabs(near.raw.real()) < 1e-12);
  CHECK(near.raw.imag() == doctest::Approx(-2 * std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("peripheral pair converges linearly") {
  const PeripheralPair lim = limit_pair();
  std::vector<double> ratios;
  for (double s : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const PeripheralPair p = normalized_peripheral(s);
    const double err = std::max((p.meridian - lim.meridian).max_abs(), (p.longitude - lim.longitude).max_abs());
    ratios.push_back(err / s);
  }
  const double c = *std::max_element(ratios.begin(), ratios.end());
  CHECK(c < 2.0);  // dominated by the e^s diagonal entry
  for (double r : ratios) CHECK(r > 0.25 * c);
}

TEST_CASE("strict convexity obstruction") {
  CHECK_FALSE(strict_convexity_obstruction(0.0));
  CHECK(strict_convexity_obstruction(std::log(16.0)));
  CHECK(strict_convexity_obstruction(-std::log(16.0)));
  CHECK_FALSE(strict_convexity_obstruction_exact(Q(1, 2)));
  CHECK(strict_convexity_obstruction_exact(Q(1, 4)));
}

TEST_CASE("normalization consistency") {
  const ConsistencyReport r = normalization_consistency(Q(1, 4));
  CHECK_FALSE(r.degenerate);
  CHECK(r.sign == 1);
  CHECK(std::fabs(r.dilation_f - std::log(16.0)) < 1e-10);
  CHECK(r.longitude_class == cusplie::ElementClass::PureDilation);
  CHECK(r.meridian_class == cusplie::ElementClass::PureTranslation);
  CHECK(r.meridian_b_error < 1e-10);
  CHECK(r.closed_form_residual < 1e-9);
  CHECK(normalization_consistency(Q(1, 2)).degenerate);
  const ConsistencyReport r2 = normalization_consistency(Q(2, 5));
  CHECK(r2.sign == 1);
  CHECK(r2.meridian_class == cusplie::ElementClass::PureTranslation);
  CHECK(std::fabs(r2.dilation_f - s_of_t(0.4)) < 1e-10);
  const ConsistencyReport r3 = normalization_consistency(Q(3, 5));
  CHECK(r3.sign == 1);
  CHECK(r3.closed_form_residual < 1e-9);
}

TEST_CASE("verify report") {
  const nlohmann::json half = verify_report(Q(1, 2));
  CHECK(half["relation_exact"] == true);
  CHECK(half["obstruction"] == false);
  const nlohmann::json q = verify_report(Q(1, 4));
  CHECK(q["longitude_spectrum"] == nlohmann::json::array({"1/2", "1/2", "1/2", "8"}));
  CHECK(q["obstruction"] == true);
  CHECK(q["displayed_longitude_matching_entries"] == 16);
}
