#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "cuspgeom/cusplie/families.hpp"
#include "cuspgeom/cusplie/normalize.hpp"
#include "cuspgeom/domains/domain.hpp"

namespace cuspgeom::cusplie {

using projlin::Polynomial;
using projlin::Vec4;

const char* to_string(AlgFamily f) noexcept {
  switch (f) {
    case AlgFamily::L0: return "L0";
    case AlgFamily::Lt: return "Lt";
    case AlgFamily::LPrime: return "LPrime";
    case AlgFamily::LPrimeMinus: return "LPrimeMinus";
  }
  return "?";
}

const char* to_string(ElementClass c) noexcept {
  switch (c) {
    case ElementClass::PureTranslation: return "PureTranslation";
    case ElementClass::PureDilation: return "PureDilation";
    case ElementClass::Generic: return "Generic";
  }
  return "?";
}

double expm1_over_x(double x) {
  if (std::fabs(x) < 1e-5) return 1.0 + x / 2.0 + x * x / 6.0;
  return std::expm1(x) / x;
}

double exp_phi2(double x) {
  if (std::fabs(x) < 1e-3) return 0.5 + x / 6.0 + x * x / 24.0 + x * x * x / 120.0;
  return (std::expm1(x) - x) / (x * x);
}

Mat4<double> group_exp_matrix(const LieAlgElem<double>& e) {
  const double u = e.u, v = e.v;
  switch (e.family) {
    case AlgFamily::L0: return {{1, u, v, 0.5 * (u * u + v * v)}, {0, 1, 0, u}, {0, 0, 1, v}, {0, 0, 0, 1}};
    case AlgFamily::Lt: {
      if (e.t == 0.0) throw Error(ErrorKind::InvalidParameter, "L_t needs t != 0");
      const double x = e.t * u;
      const double q = u * expm1_over_x(x);  // (e^{tr}-1)/t
      const double p = u * u * exp_phi2(x);  // (e^{tr}-tr-1)/t^2
      return {{1, q, v, p + 0.5 * v * v}, {0, std::exp(x), 0, q}, {0, 0, 1, v}, {0, 0, 0, 1}};
    }
    case AlgFamily::LPrime: return {{1, 0, v, 0.5 * v * v - u}, {0, std::exp(u), 0, 0}, {0, 0, 1, v}, {0, 0, 0, 1}};
    case AlgFamily::LPrimeMinus: return {{1, 0, v, 0.5 * v * v + u}, {0, std::exp(u), 0, 0}, {0, 0, 1, v}, {0, 0, 0, 1}};
  }
  return Mat4<double>::identity();
}

ProjMap<double> group_exp(const LieAlgElem<double>& e) { return ProjMap<double>(group_exp_matrix(e)); }

Mat4<Rational> group_exp_exact(const LieAlgElem<Rational>& e) {
  Mat4<Rational> x = alg_matrix(e);
  if (!projlin::is_nilpotent(x))
    throw Error(ErrorKind::InvalidParameter, "exact exponential needs a nilpotent element (irrational entries otherwise)");
  return projlin::exp_nilpotent(x);
}

FamilyFit fit_algebra(const Mat4<double>& x, AlgFamily family, double t) {
  FamilyFit fit;
  switch (family) {
    case AlgFamily::L0:
    case AlgFamily::Lt:
      fit.u = x(0, 1);
      fit.v = x(0, 2);
      break;
    case AlgFamily::LPrime:
    case AlgFamily::LPrimeMinus:
      fit.u = x(1, 1);
      fit.v = x(0, 2);
      break;
  }
  LieAlgElem<double> e{family, t, fit.u, fit.v};
  fit.residual = (x - alg_matrix(e)).max_abs();
  return fit;
}

FamilyFit fit_l0_group(const Mat4<double>& g) {
  FamilyFit fit;
  const double s = g(3, 3);
  if (s == 0.0) throw Error(ErrorKind::WrongShape, "not an element of L0");
  Mat4<double> h = g / s;
  fit.u = h(0, 1);
  fit.v = h(0, 2);
  fit.residual = (h - group_exp_matrix(LieAlgElem<double>::l0(fit.u, fit.v))).max_abs();
  return fit;
}

template <class T>
std::optional<MinPolyProfile<T>> minpoly_profile(const Mat4<T>& x, double tol) {
  if (x.is_zero()) return std::nullopt;
  Polynomial<T> mp = [&] {
    if constexpr (is_exact_v<T>) return projlin::minimal_polynomial(x);
    else return projlin::minimal_polynomial(x, tol);
  }();
  const int d = mp.degree();
  if (d != 3 && d != 4)
    throw Error(ErrorKind::WrongShape, "minimal polynomial " + projlin::to_string(mp) + " is not t^n (t - f) with n in {2,3}");
  MinPolyProfile<T> p;
  p.n = d - 1;
  p.f = -mp.coeff(d - 1);
  const double scale = std::max({1.0, x.max_abs(), magnitude(p.f)});
  for (int k = 0; k < d - 1; ++k) {
    bool zero;
    if constexpr (is_exact_v<T>) zero = is_exact_zero(mp.coeff(k));
    else zero = std::fabs(mp.coeff(k)) <= 1e-7 * std::pow(scale, d - k);
    if (!zero)
      throw Error(ErrorKind::WrongShape, "minimal polynomial " + projlin::to_string(mp) + " is not t^n (t - f) with n in {2,3}");
  }
  if constexpr (is_exact_v<T>) {
    p.kernel_flag = is_exact_zero(p.f);
  } else {
    p.kernel_flag = std::fabs(p.f) <= tol * std::max(1.0, x.max_abs());
    if (p.kernel_flag) p.f = 0.0;
  }
  std::vector<T> c(d + 1);
  c[d] = T(1);
  c[d - 1] = -p.f;
  p.minpoly = Polynomial<T>(c);
  return p;
}

template std::optional<MinPolyProfile<Rational>> minpoly_profile(const Mat4<Rational>&, double);
template std::optional<MinPolyProfile<double>> minpoly_profile(const Mat4<double>&, double);

ElementClass classify_profile(int n, bool kernel_flag) {
  if (kernel_flag) return ElementClass::PureTranslation;
  return n == 2 ? ElementClass::PureDilation : ElementClass::Generic;
}

namespace {

template <class T>
Mat4<T> scale_by_triple(const Mat4<T>& g, const std::vector<projlin::SpectrumEntry<T>>& spec) {
  for (const auto& e : spec) {
    if (e.multiplicity < 3) continue;
    if (is_exact_zero(e.value)) throw HypothesisError(Hypothesis::NonPositiveSpectrum, "zero eigenvalue");
    Mat4<T> h = g / e.value;
    for (const auto& o : spec)
      if (sign_of(o.value) != sign_of(e.value))
        throw HypothesisError(Hypothesis::NonPositiveSpectrum, "eigenvalues of mixed sign cannot be made positive by scaling");
    return h;
  }
  throw HypothesisError(Hypothesis::WrongMinPolyShape, "no eigenvalue of multiplicity >= 3");
}

template <class T>
std::vector<projlin::SpectrumEntry<T>> spectrum_or_hypothesis(const Mat4<T>& g) {
  try {
    return projlin::real_spectrum(g);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NonRealSpectrum) throw HypothesisError(Hypothesis::ComplexSpectrum, e.what());
    throw;
  }
}

}  // namespace

Mat4<double> scale_to_cusp_form(const Mat4<double>& g) { return scale_by_triple(g, spectrum_or_hypothesis(g)); }
Mat4<Rational> scale_to_cusp_form(const Mat4<Rational>& g) { return scale_by_triple(g, spectrum_or_hypothesis(g)); }

ElementClass classify(const ProjMap<double>& g, double tol) {
  Mat4<double> x = projlin::matrix_log(scale_to_cusp_form(g.matrix()));
  // The identity component's zero is pinned to exact zero so it reports as such.
  if (x.max_abs() <= 1e-13) x = Mat4<double>();
  auto p = minpoly_profile(x, tol);
  if (!p) throw Error(ErrorKind::ZeroElement, "the identity has no class");
  return classify_profile(p->n, p->kernel_flag);
}

ElementClass classify(const Mat4<Rational>& g) {
  projlin::LogParts lp = projlin::log_parts(scale_to_cusp_form(g));
  // Translation iff unipotent; otherwise the log's profile has f != 0 and n read from its nilpotent part.
  if (lp.is_unipotent()) {
    if (lp.nilpotent_part.is_zero()) throw Error(ErrorKind::ZeroElement, "the identity has no class");
    auto p = minpoly_profile(lp.nilpotent_part);
    return classify_profile(p->n, true);
  }
  auto p = minpoly_profile(lp.to_double());
  if (!p) throw Error(ErrorKind::ZeroElement, "the identity has no class");
  return classify_profile(p->n, p->kernel_flag);
}

Complex2x2 l0_to_parabolic(double x, double y) { return {1.0, {x, y}, 0.0, 1.0}; }

Complex2x2 l0_to_parabolic(const Mat4<double>& g) {
  FamilyFit f = fit_l0_group(g);
  if (f.residual > 1e-9 * std::max(1.0, g.max_abs())) throw Error(ErrorKind::WrongShape, "not an element of L0");
  return l0_to_parabolic(f.u, f.v);
}

Complex2x2 multiply(const Complex2x2& a, const Complex2x2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

CuspShape cusp_shape(std::array<double, 2> m, std::array<double, 2> l) {
  const std::complex<double> zm(m[0], m[1]), zl(l[0], l[1]);
  if (zm == 0.0) throw Error(ErrorKind::ZeroElement, "cusp shape needs a nonzero m");
  CuspShape c;
  c.raw = zl / zm;
  if (c.raw.imag() == 0.0) throw Error(ErrorKind::InvalidParameter, "m and l are dependent; no cusp shape");
  c.reoriented = c.raw.imag() < 0.0;
  c.omega = c.reoriented ? -c.raw : c.raw;
  return c;
}

CuspShape cusp_shape(const Mat4<double>& m, const Mat4<double>& l) {
  FamilyFit a = fit_l0_group(m), b = fit_l0_group(l);
  const double tol = 1e-9 * std::max({1.0, m.max_abs(), l.max_abs()});
  if (a.residual > tol || b.residual > tol) throw Error(ErrorKind::WrongShape, "cusp shape needs elements of L0");
  return cusp_shape({a.u, a.v}, {b.u, b.v});
}

// ---------------------------------------------------------------------------------------------
// Normalization

namespace {

// Basis of ker m of the expected dimension; float uses the SVD and checks the gap.
template <class T>
std::vector<Vec4<T>> kernel(const Mat4<T>& m, int dim, const char* what) {
  if constexpr (is_exact_v<T>) {
    auto k = projlin::null_space(m);
    if (static_cast<int>(k.size()) != dim)
      throw HypothesisError(Hypothesis::WrongMinPolyShape, std::string(what) + " has unexpected dimension");
    return k;
  } else {
    Eigen::Matrix4d a;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = m(i, j);
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double gap = 1e-7 * std::max(s(0), 1e-300);
    if (s(3 - dim) <= gap || (dim < 4 && s(4 - dim) > gap))
      throw HypothesisError(Hypothesis::WrongMinPolyShape, std::string(what) + " has unexpected dimension");
    std::vector<Vec4<T>> out;
    for (int c = 4 - dim; c < 4; ++c) out.push_back({svd.matrixV()(0, c), svd.matrixV()(1, c), svd.matrixV()(2, c), svd.matrixV()(3, c)});
    return out;
  }
}

template <class T>
double vec_norm(const Vec4<T>& v) {
  double s = 0.0;
  for (const auto& x : v) s = std::max(s, magnitude(x));
  return s;
}

template <class T>
double residual_of(const Mat4<T>& x, const Mat4<T>& y) {
  return (x - y).max_abs();
}

template <class T>
bool independent(const Mat4<T>& a, const Mat4<T>& b, double tol) {
  if constexpr (is_exact_v<T>) {
    // rank of the 2 x 16 matrix of entries
    for (int i = 0; i < 16; ++i)
      for (int j = i + 1; j < 16; ++j)
        if (a(i / 4, i % 4) * b(j / 4, j % 4) != a(j / 4, j % 4) * b(i / 4, i % 4)) return true;
    return false;
  } else {
    double aa = 0, bb = 0, ab = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        aa += a(i, j) * a(i, j);
        bb += b(i, j) * b(i, j);
        ab += a(i, j) * b(i, j);
      }
    return aa * bb - ab * ab > tol * aa * bb;
  }
}

template <class T>
std::optional<AlgebraNormalization<T>> already_normal(const Mat4<T>& alpha, const Mat4<T>& beta, double tol) {
  for (int sign : {+1, -1}) {
    const AlgFamily fam = sign > 0 ? AlgFamily::LPrime : AlgFamily::LPrimeMinus;
    AlgebraNormalization<T> r;
    r.sign = sign;
    r.conjugator = Mat4<T>::identity();
    r.images = {alpha, beta};
    double res = 0.0;
    for (int k = 0; k < 2; ++k) {
      const Mat4<T>& x = r.images[k];
      r.params[k] = LieAlgElem<T>{fam, T(0), x(1, 1), x(0, 2)};
      res = std::max(res, residual_of(x, alg_matrix(r.params[k])));
    }
    const bool ok = is_exact_v<T> ? res == 0.0 : res <= tol * std::max({1.0, alpha.max_abs(), beta.max_abs()});
    if (ok) {
      r.residual = res;
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace

template <class T>
AlgebraNormalization<T> normalize_algebra_pair(const Mat4<T>& alpha, const Mat4<T>& beta, double tol) {
  const double scale = std::max({1.0, alpha.max_abs(), beta.max_abs()});
  const Mat4<T> comm = projlin::commutator(alpha, beta);
  if (is_exact_v<T> ? !comm.is_zero() : comm.max_abs() > tol * scale * scale)
    throw HypothesisError(Hypothesis::NonCommuting, "generators do not commute");
  if (!independent(alpha, beta, tol)) throw HypothesisError(Hypothesis::RankDeficient, "generators are linearly dependent");

  if (auto r = already_normal(alpha, beta, tol)) return *r;

  // Generic element: n = 3, f != 0.
  std::vector<std::pair<int, int>> combos;
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j)
      if (i != 0 || j != 0) combos.emplace_back(i, j);
  std::stable_sort(combos.begin(), combos.end(), [](auto a, auto b) {
    const int na = std::abs(a.first) + std::abs(a.second), nb = std::abs(b.first) + std::abs(b.second);
    if (na != nb) return na < nb;
    return a > b;
  });
  Mat4<T> gamma;
  T f{};
  std::pair<int, int> chosen{0, 0};
  for (auto [i, j] : combos) {
    Mat4<T> g = alpha * T(i) + beta * T(j);
    std::optional<MinPolyProfile<T>> p;
    try {
      p = minpoly_profile(g, tol);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::WrongShape) throw HypothesisError(Hypothesis::WrongMinPolyShape, e.what());
      throw;
    }
    if (p && p->n == 3 && !p->kernel_flag) {
      gamma = g;
      f = p->f;
      chosen = {i, j};
      break;
    }
  }
  if (chosen == std::pair<int, int>{0, 0})
    throw HypothesisError(Hypothesis::NoGenericElement, "no integer combination with |coefficients| <= 3 has n = 3");

  // Modified Jordan basis: gamma ~ [[0,0,1,0],[0,f,0,0],[0,0,0,1],0].
  const Mat4<T> g2 = gamma * gamma;
  auto k3 = kernel(g2 * gamma, 3, "ker gamma^3");
  Vec4<T> p4 = k3[0];
  double best = -1.0;
  for (const auto& v : k3) {
    const double w = vec_norm(g2 * v) / std::max(vec_norm(v), 1e-300);
    if (w > best) {
      best = w;
      p4 = v;
    }
    if constexpr (is_exact_v<T>)
      if (w > 0) break;
  }
  const Vec4<T> p3 = gamma * p4, p1 = gamma * p3;
  const Vec4<T> p2 = kernel(gamma - Mat4<T>::identity() * f, 1, "ker(gamma - f)")[0];
  Mat4<T> P;
  P.set_col(0, p1);
  P.set_col(1, p2);
  P.set_col(2, p3);
  P.set_col(3, p4);
  Mat4<T> Pinv;
  try {
    Pinv = projlin::inverse(P);
  } catch (const Error&) {
    throw HypothesisError(Hypothesis::WrongMinPolyShape, "Jordan basis is degenerate");
  }

  const Mat4<T>& delta = chosen.second != 0 ? alpha : beta;
  const Mat4<T> d = Pinv * delta * P;
  // Commutant of the Jordan form: (1,4) = c1 * a + c2 * b across the algebra.
  const T denom = d(1, 1) - f * d(0, 2);
  if (is_exact_v<T> ? is_exact_zero(denom) : magnitude(denom) <= tol * scale)
    throw HypothesisError(Hypothesis::WrongMinPolyShape, "algebra contains a rank-one nilpotent");
  const T c1 = d(0, 3) / denom;
  const T c2 = -f * c1;
  T root;
  if constexpr (is_exact_v<T>) {
    auto r = exact_sqrt(abs_value(c1));
    if (!r) throw HypothesisError(Hypothesis::IrrationalConjugator, "|c1| = " + cuspgeom::to_string(abs_value(c1)) + " is not a rational square");
    root = *r;
  } else {
    root = std::sqrt(std::fabs(c1));
  }
  Mat4<T> D = Mat4<T>::identity();
  D(0, 0) = abs_value(c1);
  D(2, 2) = root;
  D(2, 3) = -c2;

  AlgebraNormalization<T> r;
  r.sign = sign_of(c1) < 0 ? +1 : -1;
  r.combination = chosen;
  r.f_generic = f;
  const Mat4<T> PD = P * D;
  r.conjugator = projlin::inverse(PD);
  const AlgFamily fam = r.sign > 0 ? AlgFamily::LPrime : AlgFamily::LPrimeMinus;
  r.images = {r.conjugator * alpha * PD, r.conjugator * beta * PD};
  for (int k = 0; k < 2; ++k) {
    const Mat4<T>& x = r.images[k];
    r.params[k] = LieAlgElem<T>{fam, T(0), x(1, 1), x(0, 2)};
    r.residual = std::max(r.residual, residual_of(x, alg_matrix(r.params[k])));
    try {
      if (!minpoly_profile(x, tol)) throw HypothesisError(Hypothesis::RankDeficient, "generator maps to zero");
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::WrongShape) throw HypothesisError(Hypothesis::WrongMinPolyShape, e.what());
      throw;
    }
  }
  return r;
}

template AlgebraNormalization<Rational> normalize_algebra_pair(const Mat4<Rational>&, const Mat4<Rational>&, double);
template AlgebraNormalization<double> normalize_algebra_pair(const Mat4<double>&, const Mat4<double>&, double);

namespace {

GroupNormalization finish_group(const std::array<Mat4<double>, 2>& scaled, const std::array<Mat4<double>, 2>& logs, double tol) {
  GroupNormalization g;
  g.scaled_generators = scaled;
  g.logs = logs;
  g.algebra = normalize_algebra_pair(logs[0], logs[1], tol);
  g.sign = g.algebra.sign;
  g.conjugator = g.algebra.conjugator;
  g.params = g.algebra.params;
  const Mat4<double> cinv = projlin::inverse(g.conjugator);
  g.residual = g.algebra.residual;
  for (int k = 0; k < 2; ++k) {
    g.images[k] = g.conjugator * scaled[k] * cinv;
    const Mat4<double> ref = group_exp_matrix(g.params[k]);
    g.residual = std::max(g.residual, (g.images[k] - ref).max_abs() / std::max(1.0, ref.max_abs()));
  }
  return g;
}

}  // namespace

nlohmann::json GroupNormalization::to_json() const {
  nlohmann::json j;
  j["sign"] = sign;
  j["conjugator"] = projlin::to_json(conjugator);
  j["residual"] = residual;
  j["family"] = to_string(sign > 0 ? AlgFamily::LPrime : AlgFamily::LPrimeMinus);
  j["params"] = nlohmann::json::array();
  for (const auto& p : params) j["params"].push_back({{"a", p.u}, {"b", p.v}});
  j["generic_combination"] = {algebra.combination.first, algebra.combination.second};
  return j;
}

GroupNormalization normalize_pair(const ProjMap<double>& a, const ProjMap<double>& b, double tol) {
  if (!projlin::proj_equal_matrices(a.matrix() * b.matrix(), b.matrix() * a.matrix(), tol))
    throw HypothesisError(Hypothesis::NonCommuting, "generators do not commute projectively");
  std::array<Mat4<double>, 2> scaled{scale_to_cusp_form(a.matrix()), scale_to_cusp_form(b.matrix())};
  std::array<Mat4<double>, 2> logs{projlin::matrix_log(scaled[0]), projlin::matrix_log(scaled[1])};
  return finish_group(scaled, logs, tol);
}

GroupNormalization normalize_pair(const Mat4<Rational>& a, const Mat4<Rational>& b, double tol) {
  if (!projlin::proj_equal_matrices(a * b, b * a)) throw HypothesisError(Hypothesis::NonCommuting, "generators do not commute projectively");
  std::array<Mat4<Rational>, 2> s{scale_to_cusp_form(a), scale_to_cusp_form(b)};
  std::array<Mat4<double>, 2> logs{projlin::matrix_log(s[0]), projlin::matrix_log(s[1])};
  return finish_group({s[0].to_double(), s[1].to_double()}, logs, tol);
}

nlohmann::json Lattice::to_json() const { return {{"A", a.to_json()}, {"B", b.to_json()}}; }

Lattice make_lattice(projlin::AnyMatrix a, projlin::AnyMatrix b, double tol) {
  Lattice lat{std::move(a), std::move(b)};
  const bool exact = lat.a.regime() == Regime::Exact && lat.b.regime() == Regime::Exact;
  if (exact) {
    lat.commuting = projlin::proj_equal_matrices(lat.a.exact() * lat.b.exact(), lat.b.exact() * lat.a.exact());
  } else {
    const Mat4<double> x = lat.a.to_double(), y = lat.b.to_double();
    lat.commuting = projlin::proj_equal_matrices(x * y, y * x, tol);
  }
  try {
    const Mat4<double> la = exact ? projlin::matrix_log(scale_to_cusp_form(lat.a.exact())) : projlin::matrix_log(scale_to_cusp_form(lat.a.to_double()));
    const Mat4<double> lb = exact ? projlin::matrix_log(scale_to_cusp_form(lat.b.exact())) : projlin::matrix_log(scale_to_cusp_form(lat.b.to_double()));
    lat.rank2 = independent(la, lb, tol);
  } catch (const Error&) {
    lat.rank2 = false;
  }
  return lat;
}

Lattice lattice_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("B")) throw Error(ErrorKind::Parse, "lattice JSON needs keys \"A\" and \"B\"");
  return make_lattice(projlin::matrix_from_json(j.at("A")), projlin::matrix_from_json(j.at("B")));
}

GroupNormalization normalize_lattice(const Lattice& lat, double tol) {
  if (!lat.commuting) throw HypothesisError(Hypothesis::NonCommuting, "generators do not commute projectively");
  if (!lat.rank2) throw HypothesisError(Hypothesis::RankDeficient, "logs of the generators are dependent or undefined");
  if (lat.a.regime() == Regime::Exact && lat.b.regime() == Regime::Exact) return normalize_pair(lat.a.exact(), lat.b.exact(), tol);
  return normalize_pair(ProjMap<double>(lat.a.to_double()), ProjMap<double>(lat.b.to_double()), tol);
}

ConvergenceResult convergence_conjugate(const ParamPath& a, const ParamPath& b, double t) {
  if (t == 0.0 || !std::isfinite(t)) throw Error(ErrorKind::InvalidParameter, "convergence_conjugate needs finite t != 0");
  const ParamPath* paths[2] = {&a, &b};
  for (const auto* p : paths) {
    const auto v0 = (*p)(0.0);
    if (std::fabs(v0[0]) > 1e-9 || std::fabs(v0[1]) > 1e-9)
      throw Error(ErrorKind::HypothesisViolated, "parameter paths must vanish at t = 0");
  }
  const double h = std::ldexp(1.0, -20);
  ConvergenceResult r;
  r.t = t;
  for (int k = 0; k < 2; ++k) {
    const auto up = (*paths[k])(h), dn = (*paths[k])(-h);
    r.limit_params[k] = {(up[0] - dn[0]) / (2 * h), (up[1] - dn[1]) / (2 * h)};
  }
  const auto& da = r.limit_params[0];
  const auto& db = r.limit_params[1];
  const double det = da[0] * db[1] - da[1] * db[0];
  if (std::fabs(det) <= 1e-9 * std::hypot(da[0], da[1]) * std::hypot(db[0], db[1]))
    throw Error(ErrorKind::DegenerateLimit, "derivatives of the parameter paths at 0 are dependent");

  const Mat4<double> V = domains::vt_matrix<double>(t), Vinv = projlin::inverse(V);
  for (int k = 0; k < 2; ++k) {
    const auto p = (*paths[k])(t);
    const auto x = LieAlgElem<double>::lprime(p[0], p[1]);
    r.conjugated_alg[k] = V * alg_matrix(x) * Vinv;
    r.conjugated_group[k] = V * group_exp_matrix(x) * Vinv;
    r.lt_params[k] = LieAlgElem<double>::lt(t, p[0] / t, p[1] / t);
    const Mat4<double> la = alg_matrix(r.lt_params[k]), lg = group_exp_matrix(r.lt_params[k]);
    r.structure_residual = std::max({r.structure_residual, (r.conjugated_alg[k] - la).max_abs() / std::max(1.0, la.max_abs()),
                                     (r.conjugated_group[k] - lg).max_abs() / std::max(1.0, lg.max_abs())});
    r.limit_generators[k] = group_exp_matrix(LieAlgElem<double>::l0(r.limit_params[k][0], r.limit_params[k][1]));
  }
  return r;
}

}  // namespace cuspgeom::cusplie
