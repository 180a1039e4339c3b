#include "cuspgeom/fig8/holonomy.hpp"

#include <cmath>

#include "cuspgeom/domains/domain.hpp"

namespace cuspgeom::fig8 {

using cusplie::AlgFamily;
using cusplie::LieAlgElem;

RelationResidual relation_residual(const Rational& t) {
  const Generators<Rational> g = generators(t);
  const Mat4<Rational> w = relator_word(g);
  const Mat4<Rational> lhs = g.m * w, rhs = w * g.n;
  const auto [i, j] = projlin::argmax_entry(rhs);
  RelationResidual r;
  r.lambda = lhs(i, j) / rhs(i, j);
  r.residual = lhs - rhs * r.lambda;
  return r;
}

double relation_residual_float(double t) {
  const Generators<double> g = generators(t);
  const Mat4<double> w = relator_word(g);
  const Mat4<double> lhs = g.m * w, rhs = w * g.n;
  const auto [i, j] = projlin::argmax_entry(rhs);
  const double lambda = lhs(i, j) / rhs(i, j);
  return (lhs - rhs * lambda).max_abs() / std::max(1.0, lhs.max_abs());
}

Mat4<Rational> displayed_longitude(const Rational& t) {
  if (is_exact_zero(t)) throw Error(ErrorKind::InvalidParameter, "the holonomy family needs t != 0");
  const Rational t2 = t * t, t3 = t2 * t, t4 = t3 * t;
  const Rational d2 = 8 * t2, d3 = 8 * t3;
  const Rational z(0);
  return Mat4<Rational>{
      {(8 * t3 - 4 * t2 - 2 * t - 1) / d2, (8 * t3 + 4 * t2 + 2 * t + 1) / d2, (-4 * t2 - 1) / (4 * t2), (40 * t3 + 24 * t2 + 4 * t + 3) / d2},
      {(8 * t4 - 4 * t3 - 2 * t2 - t - 1) / d3, (8 * t4 + 4 * t3 + 2 * t2 + t + 1) / d3, (4 * t3 - 4 * t2 + t - 1) / (4 * t3),
       (56 * t4 + 16 * t3 + 20 * t2 + t + 3) / d3},
      {z, z, 2 * t, z},
      {z, z, z, 2 * t}};
}

DisplayComparison compare_displayed_longitude(const Rational& t) {
  const Mat4<Rational> word = longitude(t), shown = displayed_longitude(t);
  const auto [i0, j0] = projlin::argmax_entry(shown);
  const Rational lambda = word(i0, j0) / shown(i0, j0);
  DisplayComparison c;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      c.match[i][j] = word(i, j) == lambda * shown(i, j);
      c.matching += c.match[i][j];
    }
  return c;
}

std::vector<projlin::SpectrumEntry<Rational>> longitude_spectrum(const Rational& t) { return projlin::real_spectrum(longitude(t)); }

bool longitude_projectively_unipotent(const Rational& t) { return longitude_spectrum(t).size() == 1; }

double s_of_t(double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidParameter, "s(t) needs t > 0");
  return -std::log(16.0) - 4.0 * std::log(t);
}

double t_of_s(double s) { return 0.5 * std::exp(-s / 4.0); }

double meridian_parameter(double s) {
  if (std::fabs(s) < 1e-4) {
    const double s2 = s * s;
    return std::sqrt((1.0 + s2 / 96.0) / 12.0);
  }
  return std::sqrt(std::sinh(s / 4.0) / (3.0 * s));
}

PeripheralPair normalized_peripheral(double s) {
  if (s == 0.0) throw Error(ErrorKind::InvalidParameter, "s = 0 is the limit; use limit_pair");
  const double mu = meridian_parameter(s);
  PeripheralPair p;
  p.meridian = cusplie::group_exp_matrix(LieAlgElem<double>::lt(s, 0.0, mu));
  p.longitude = cusplie::group_exp_matrix(LieAlgElem<double>::lt(s, 1.0, 0.0));
  return p;
}

PeripheralPair limit_pair() {
  PeripheralPair p;
  p.meridian = cusplie::group_exp_matrix(LieAlgElem<double>::l0(0.0, 1.0 / (2.0 * std::sqrt(3.0))));
  p.longitude = cusplie::group_exp_matrix(LieAlgElem<double>::l0(1.0, 0.0));
  return p;
}

bool strict_convexity_obstruction_exact(const Rational& t) {
  if (sgn(t) <= 0) throw Error(ErrorKind::InvalidParameter, "the obstruction test needs t > 0");
  return !longitude_projectively_unipotent(t);
}

bool strict_convexity_obstruction(double s) { return strict_convexity_obstruction_exact(Rational(t_of_s(s))); }

nlohmann::json ConsistencyReport::to_json() const {
  nlohmann::json j;
  j["t"] = cuspgeom::to_string(t);
  j["s"] = s;
  j["degenerate"] = degenerate;
  if (degenerate) return j;
  j["sign"] = sign;
  j["meridian_class"] = to_string(meridian_class);
  j["longitude_class"] = to_string(longitude_class);
  j["dilation_f"] = dilation_f;
  j["f_error"] = f_error;
  j["meridian_b"] = meridian_b;
  j["meridian_b_error"] = meridian_b_error;
  j["normalization_residual"] = normalization_residual;
  j["closed_form_residual"] = closed_form_residual;
  return j;
}

ConsistencyReport normalization_consistency(const Rational& t, double tol) {
  if (sgn(t) <= 0) throw Error(ErrorKind::InvalidParameter, "normalization_consistency needs t > 0");
  ConsistencyReport r;
  r.t = t;
  r.s = s_of_t(t.get_d());
  if (t == Rational(1, 2)) {
    r.degenerate = true;
    return r;
  }
  const Generators<Rational> g = generators(t);
  const Mat4<Rational> lon = longitude(t) / (2 * t);
  cusplie::GroupNormalization n = cusplie::normalize_pair(g.m, lon, tol);
  r.sign = n.sign;
  r.normalization_residual = n.residual;
  const auto& pm = n.params[0];
  const auto& pl = n.params[1];
  auto cls = [&](const LieAlgElem<double>& e) {
    auto p = cusplie::minpoly_profile(cusplie::alg_matrix(e), tol);
    if (!p) throw Error(ErrorKind::ZeroElement, "generator normalized to zero");
    return cusplie::classify_profile(p->n, p->kernel_flag);
  };
  r.meridian_class = cls(pm);
  r.longitude_class = cls(pl);
  r.dilation_f = pl.u;
  r.f_error = std::fabs(pl.u - r.s);
  r.meridian_b = pm.v;
  r.meridian_b_error = std::fabs(std::fabs(pm.v) - std::sqrt(r.s * std::sinh(r.s / 4.0) / 3.0));

  // Conjugating by V_s (and flipping the x3 axis when b / s < 0) must give the closed forms.
  Mat4<double> flip = Mat4<double>::identity();
  if (pm.v * r.s < 0) flip(2, 2) = -1.0;
  const Mat4<double> V = domains::vt_matrix<double>(r.s) * flip, Vi = projlin::inverse(V);
  const PeripheralPair closed = normalized_peripheral(r.s);
  r.closed_form_residual = std::max((V * n.images[0] * Vi - closed.meridian).max_abs() / std::max(1.0, closed.meridian.max_abs()),
                                    (V * n.images[1] * Vi - closed.longitude).max_abs() / std::max(1.0, closed.longitude.max_abs()));
  r.normalization = std::move(n);
  return r;
}

nlohmann::json verify_report(const Rational& t) {
  nlohmann::json j;
  j["t"] = cuspgeom::to_string(t);
  j["s"] = sgn(t) > 0 ? nlohmann::json(s_of_t(t.get_d())) : nlohmann::json(nullptr);
  const RelationResidual rel = relation_residual(t);
  j["relation_exact"] = rel.exact_zero();
  j["relation_lambda"] = cuspgeom::to_string(rel.lambda);
  nlohmann::json spec = nlohmann::json::array();
  for (const auto& e : longitude_spectrum(t))
    for (int k = 0; k < e.multiplicity; ++k) spec.push_back(cuspgeom::to_string(e.value));
  j["longitude_spectrum"] = spec;
  const Generators<Rational> g = generators(t);
  j["meridian_unipotent"] = projlin::real_spectrum(g.m).size() == 1;
  j["longitude_commutes"] = projlin::proj_equal_matrices(longitude(t) * g.m, g.m * longitude(t));
  j["longitude_unipotent"] = longitude_projectively_unipotent(t);
  if (sgn(t) > 0) {
    j["obstruction"] = strict_convexity_obstruction_exact(t);
    const ConsistencyReport c = normalization_consistency(t);
    j["normalized_params"] = c.to_json();
  } else {
    j["obstruction"] = !longitude_projectively_unipotent(t);
  }
  const DisplayComparison cmp = compare_displayed_longitude(t);
  j["displayed_longitude_matching_entries"] = cmp.matching;
  return j;
}

}  // namespace cuspgeom::fig8
