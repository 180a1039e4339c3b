#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "cuspgeom/projlin/json_io.hpp"
#include "cuspgeom/projlin/matfun.hpp"
#include "cuspgeom/projlin/polynomial.hpp"
#include "cuspgeom/projlin/projective.hpp"

namespace cuspgeom::projlin {

namespace {

Eigen::Matrix4d to_eigen(const Mat4<double>& m) {
  Eigen::Matrix4d e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e(i, j) = m(i, j);
  return e;
}

Mat4<double> from_eigen(const Eigen::Matrix4d& e) {
  Mat4<double> m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = e(i, j);
  return m;
}

template <class T>
std::string coeff_string(const T& c) {
  if constexpr (is_exact_v<T>) return cuspgeom::to_string(c);
  else return format_double(c);
}

template <class T>
std::string poly_string(const Polynomial<T>& p, const char* var) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    T c = p.coeff(k);
    if (is_exact_zero(c)) continue;
    const bool neg = sign_of(c) < 0;
    T a = abs_value(c);
    if (first) out << (neg ? "-" : "");
    else out << (neg ? " - " : " + ");
    first = false;
    const bool unit = (a == T(1));
    if (k == 0) {
      out << coeff_string(a);
    } else {
      if (!unit) out << coeff_string(a) << "*";
      out << var;
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

// Roots of a polynomial given by ascending double coefficients (companion matrix).
Eigen::VectorXcd poly_roots(const std::vector<double>& asc) {
  const int n = static_cast<int>(asc.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -asc[i] / asc[n];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  return es.eigenvalues();
}

// Refines a simple root of p to ~1000 bits by Newton's method in GMP floats.
Rational refine_root(const Polynomial<Rational>& p, double guess) {
  const mp_bitcnt_t prec = 1100;
  std::vector<mpf_class> c, d;
  for (const auto& q : p.coeffs()) c.emplace_back(q, prec);
  Polynomial<Rational> dp = p.derivative();
  for (const auto& q : dp.coeffs()) d.emplace_back(q, prec);
  auto eval = [&](const std::vector<mpf_class>& cs, const mpf_class& x) {
    mpf_class acc(0, prec);
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  mpf_class x(guess, prec);
  for (int it = 0; it < 14; ++it) {
    mpf_class fd = eval(d, x);
    if (fd == 0) break;
    x -= eval(c, x) / fd;
  }
  Rational out;
  mpq_set_f(out.get_mpq_t(), x.get_mpf_t());
  return out;
}

// Continued-fraction convergents of x, tested exactly as roots of p.
std::optional<Rational> reconstruct_root(const Polynomial<Rational>& p, const Rational& x) {
  mpz_class h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  Rational rem = x;
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 2, 400);
  for (int it = 0; it < 2000; ++it) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rem.get_num_mpz_t(), rem.get_den_mpz_t());
    mpz_class h = a * h_prev + h_prev2;
    mpz_class k = a * k_prev + k_prev2;
    Rational cand(h, k);
    cand.canonicalize();
    if (p.eval(cand) == 0) return cand;
    if (k > bound) break;
    Rational frac = rem - Rational(a);
    if (frac == 0) break;
    rem = 1 / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return std::nullopt;
}

// Number of distinct real roots of a squarefree polynomial (Sturm sequence at +-infinity).
int count_real_roots(const Polynomial<Rational>& p) {
  if (p.degree() <= 0) return 0;
  std::vector<Polynomial<Rational>> seq{p, p.derivative()};
  while (seq.back().degree() > 0) {
    auto r = seq[seq.size() - 2].divmod(seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(Polynomial<Rational>({Rational(0)}) - r);
  }
  auto changes = [&](bool at_plus) {
    int count = 0, last = 0;
    for (const auto& q : seq) {
      if (q.is_zero()) continue;
      int s = sgn(q.leading());
      if (!at_plus && (q.degree() % 2 == 1)) s = -s;
      if (s != 0 && last != 0 && s != last) ++count;
      if (s != 0) last = s;
    }
    return count;
  };
  return changes(false) - changes(true);
}

Mat4<Rational> identity_q() { return Mat4<Rational>::identity(); }

}  // namespace

// ---------------------------------------------------------------- polynomials

Polynomial<Rational> poly_gcd(Polynomial<Rational> a, Polynomial<Rational> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string to_string(const Polynomial<Rational>& p, const char* var) { return poly_string(p, var); }
std::string to_string(const Polynomial<double>& p, const char* var) { return poly_string(p, var); }

Polynomial<Rational> minimal_polynomial(const Mat4<Rational>& m) {
  std::vector<Mat4<Rational>> powers{identity_q()};
  for (int k = 1; k <= 4; ++k) {
    powers.push_back(powers.back() * m);
    // Columns vec(M^0..M^k); a null vector with last entry 1 gives the monic relation.
    Rows<Rational> a(16, std::vector<Rational>(k + 1));
    for (int j = 0; j <= k; ++j)
      for (int r = 0; r < 16; ++r) a[r][j] = powers[j](r / 4, r % 4);
    std::vector<int> piv = rref(a);
    if (static_cast<int>(piv.size()) == k + 1) continue;
    // Column k is free (earlier columns are independent by minimality of k).
    std::vector<Rational> c(k + 1);
    c[k] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) c[piv[r]] = -a[r][k];
    return Polynomial<Rational>(c);
  }
  throw Error(ErrorKind::InvalidParameter, "Krylov sequence did not terminate");  // unreachable
}

Polynomial<double> minimal_polynomial(const Mat4<double>& m, double tol) {
  const double s = m.max_abs();
  if (s == 0.0) return Polynomial<double>({0.0, 1.0});
  std::vector<Mat4<double>> powers{Mat4<double>::identity()};
  for (int k = 1; k <= 4; ++k) {
    powers.push_back(powers.back() * (m / s));
    Eigen::MatrixXd a(16, k + 1);
    for (int j = 0; j <= k; ++j)
      for (int r = 0; r < 16; ++r) a(r, j) = powers[j](r / 4, r % 4);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    const double ratio = sv(k) / sv(0);
    if (ratio > 1e3 * tol) continue;
    if (ratio > tol) {
      throw Error(ErrorKind::IllConditioned, "Krylov rank decision at power " + std::to_string(k) +
                                                 " is ambiguous (singular-value ratio " + format_double(ratio) + ")");
    }
    Eigen::VectorXd x = a.leftCols(k).colPivHouseholderQr().solve(a.col(k));
    // (M/s)^k = sum x_j (M/s)^j  =>  M^k = sum x_j s^(k-j) M^j
    std::vector<double> c(k + 1);
    c[k] = 1.0;
    for (int j = 0; j < k; ++j) c[j] = -x(j) * std::pow(s, k - j);
    return Polynomial<double>(c).chop(1e-12);
  }
  throw Error(ErrorKind::IllConditioned, "no Krylov dependency found within degree 4");
}

// ---------------------------------------------------------------- spectra

std::vector<SpectrumEntry<Rational>> real_spectrum(const Mat4<Rational>& m) {
  Polynomial<Rational> p = characteristic_polynomial(m);
  Polynomial<Rational> sqfree = p.divmod(poly_gcd(p, p.derivative())).first.monic();

  std::vector<double> approx;
  for (const auto& c : sqfree.coeffs()) approx.push_back(c.get_d());
  Eigen::VectorXcd guesses = poly_roots(approx);

  std::vector<SpectrumEntry<Rational>> out;
  Polynomial<Rational> rest = p;
  for (int i = 0; i < guesses.size(); ++i) {
    const std::complex<double> g = guesses(i);
    if (std::fabs(g.imag()) > 1e-6 * std::max(1.0, std::abs(g))) continue;
    auto root = reconstruct_root(sqfree, refine_root(sqfree, g.real()));
    if (!root) continue;
    bool seen = false;
    for (const auto& e : out) seen = seen || e.value == *root;
    if (seen) continue;
    int mult = 0;
    auto lin = Polynomial<Rational>::linear_root(*root);
    for (;;) {
      auto [q, r] = rest.divmod(lin);
      if (!r.is_zero()) break;
      rest = q;
      ++mult;
    }
    out.push_back({*root, mult});
  }
  if (rest.degree() > 0) {
    Polynomial<Rational> rs = rest.divmod(poly_gcd(rest, rest.derivative())).first;
    if (count_real_roots(rs) < rs.degree()) {
      throw Error(ErrorKind::NonRealSpectrum, "characteristic polynomial " + to_string(p) + " has complex roots");
    }
    throw Error(ErrorKind::IrrationalSpectrum,
                "characteristic polynomial " + to_string(p) + " has irrational real roots; use the float regime");
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return out;
}

std::vector<SpectrumEntry<double>> real_spectrum(const Mat4<double>& m, double cluster_tol) {
  Eigen::EigenSolver<Eigen::Matrix4d> es(to_eigen(m), false);
  std::vector<std::complex<double>> ev(4);
  double radius = 0.0;
  for (int i = 0; i < 4; ++i) {
    ev[i] = es.eigenvalues()(i);
    radius = std::max(radius, std::abs(ev[i]));
  }
  const double tol = cluster_tol * std::max(1.0, radius);
  std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) { return a.real() < b.real(); });
  std::vector<SpectrumEntry<double>> out;
  std::size_t i = 0;
  while (i < ev.size()) {
    std::size_t j = i + 1;
    while (j < ev.size() && std::abs(ev[j] - ev[i]) <= tol) ++j;
    std::complex<double> mean = 0.0;
    for (std::size_t k = i; k < j; ++k) mean += ev[k];
    mean /= static_cast<double>(j - i);
    if (std::fabs(mean.imag()) > tol) {
      throw Error(ErrorKind::NonRealSpectrum, "eigenvalue " + format_double(mean.real()) + (mean.imag() > 0 ? "+" : "") +
                                                  format_double(mean.imag()) + "i is not real");
    }
    out.push_back({mean.real(), static_cast<int>(j - i)});
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------- exponential

Mat4<double> mat_exp_scaling_squaring(const Mat4<double>& m) {
  double norm1 = 0.0;
  for (int j = 0; j < 4; ++j) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += std::fabs(m(i, j));
    norm1 = std::max(norm1, s);
  }
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  Mat4<double> a = m / std::ldexp(1.0, squarings);
  Mat4<double> term = Mat4<double>::identity();
  Mat4<double> sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
    if (term.max_abs() <= 1e-17 * sum.max_abs()) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

Mat4<double> mat_exp(const Mat4<double>& m) {
  if (is_nilpotent(m)) return exp_nilpotent(m);
  return mat_exp_scaling_squaring(m);
}

Mat4<Rational> mat_exp(const Mat4<Rational>& m) {
  if (!is_nilpotent(m)) {
    throw Error(ErrorKind::InvalidParameter, "exact exponential needs nilpotent input; use the float regime");
  }
  return exp_nilpotent(m);
}

// ---------------------------------------------------------------- logarithm

namespace {

template <class T>
Mat4<T> log_unipotent_part(const Mat4<T>& n_over_lambda) {
  Mat4<T> n2 = n_over_lambda * n_over_lambda;
  Mat4<T> n3 = n2 * n_over_lambda;
  return n_over_lambda - n2 / T(2) + n3 / T(3);
}

}  // namespace

Mat4<double> LogParts::to_double() const {
  Mat4<double> out = nilpotent_part.to_double();
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) out += projectors[k].to_double() * std::log(eigenvalues[k].get_d());
  return out;
}

LogParts log_parts(const Mat4<Rational>& g) {
  auto spec = real_spectrum(g);
  LogParts parts;
  for (const auto& e : spec) {
    if (sgn(e.value) <= 0) {
      throw Error(ErrorKind::NonPositiveSpectrum, "eigenvalue " + to_string(e.value) + " is not positive");
    }
  }
  const Mat4<Rational> id = identity_q();
  if (spec.size() == 1) {
    parts.eigenvalues = {spec[0].value};
    parts.projectors = {id};
    parts.nilpotent_part = log_unipotent_part<Rational>(g / spec[0].value - id);
    return parts;
  }
  // Basis of each generalized eigenspace; projectors from the block basis change.
  Mat4<Rational> basis;
  std::vector<std::pair<int, int>> blocks;
  int col = 0;
  for (const auto& e : spec) {
    auto ns = null_space(power(g - id * e.value, static_cast<unsigned>(e.multiplicity)));
    if (static_cast<int>(ns.size()) != e.multiplicity) {
      throw Error(ErrorKind::WrongShape, "generalized eigenspace has unexpected dimension");
    }
    blocks.emplace_back(col, e.multiplicity);
    for (const auto& v : ns) basis.set_col(col++, v);
  }
  Mat4<Rational> binv = inverse(basis);
  for (std::size_t k = 0; k < spec.size(); ++k) {
    Mat4<Rational> e;
    for (int i = 0; i < blocks[k].second; ++i) e(blocks[k].first + i, blocks[k].first + i) = 1;
    Mat4<Rational> proj = basis * e * binv;
    Mat4<Rational> nk = (g - id * spec[k].value) * proj;
    parts.eigenvalues.push_back(spec[k].value);
    parts.projectors.push_back(proj);
    parts.nilpotent_part += log_unipotent_part<Rational>(nk / spec[k].value);
  }
  return parts;
}

Mat4<double> matrix_log(const Mat4<Rational>& g) { return log_parts(g).to_double(); }

Mat4<double> matrix_log(const Mat4<double>& g, double cluster_tol) {
  auto spec = real_spectrum(g, cluster_tol);
  for (const auto& e : spec) {
    if (e.value <= 0.0) throw Error(ErrorKind::NonPositiveSpectrum, "eigenvalue " + format_double(e.value) + " is not positive");
  }
  const Mat4<double> id = Mat4<double>::identity();
  if (spec.size() == 1) {
    const double lam = spec[0].value;
    return id * std::log(lam) + log_unipotent_part<double>(g / lam - id);
  }
  Eigen::Matrix4d basis;
  std::vector<std::pair<int, int>> blocks;
  int col = 0;
  for (const auto& e : spec) {
    Mat4<double> a = power(g - id * e.value, static_cast<unsigned>(e.multiplicity));
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(to_eigen(a), Eigen::ComputeFullV);
    blocks.emplace_back(col, e.multiplicity);
    for (int i = 0; i < e.multiplicity; ++i) basis.col(col++) = svd.matrixV().col(3 - i);
  }
  Eigen::Matrix4d binv = basis.inverse();
  Mat4<double> out;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    Eigen::Matrix4d e = Eigen::Matrix4d::Zero();
    for (int i = 0; i < blocks[k].second; ++i) e(blocks[k].first + i, blocks[k].first + i) = 1.0;
    Mat4<double> proj = from_eigen(basis * e * binv);
    Mat4<double> nk = (g - id * spec[k].value) * proj;
    out += proj * std::log(spec[k].value) + log_unipotent_part<double>(nk / spec[k].value);
  }
  return out;
}

// ---------------------------------------------------------------- projective helpers

Point3 apply_affine(const Mat4<double>& m, const Point3& x) {
  Vec4<double> v = m * Vec4<double>{x[0], x[1], x[2], 1.0};
  if (v[3] == 0.0) throw Error(ErrorKind::InvalidParameter, "image point lies at infinity");
  return {v[0] / v[3], v[1] / v[3], v[2] / v[3]};
}

// ---------------------------------------------------------------- JSON

nlohmann::json to_json(const Mat4<Rational>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (int j = 0; j < 4; ++j) r.push_back(cuspgeom::to_string(m(i, j)));
    rows.push_back(r);
  }
  return {{"regime", "exact"}, {"rows", rows}};
}

nlohmann::json to_json(const Mat4<double>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (int j = 0; j < 4; ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return {{"regime", "float"}, {"rows", rows}};
}

nlohmann::json AnyMatrix::to_json() const {
  return regime() == Regime::Exact ? projlin::to_json(exact()) : projlin::to_json(floating());
}

AnyMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows")) throw Error(ErrorKind::Parse, "matrix JSON needs an object with \"rows\"");
  const std::string regime = j.value("regime", std::string("float"));
  if (regime != "exact" && regime != "float") throw Error(ErrorKind::Parse, "unknown regime '" + regime + "'");
  const auto& rows = j.at("rows");
  if (!rows.is_array() || rows.size() != 4) throw Error(ErrorKind::Parse, "matrix JSON needs 4 rows");
  for (const auto& r : rows)
    if (!r.is_array() || r.size() != 4) throw Error(ErrorKind::Parse, "matrix JSON rows need 4 entries");

  if (regime == "exact") {
    Mat4<Rational> m;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) {
        const auto& e = rows[i][k];
        if (e.is_string()) m(i, k) = parse_rational(e.get<std::string>());
        else if (e.is_number_integer()) m(i, k) = Rational(e.get<long>());
        else throw Error(ErrorKind::Parse, "exact entries must be \"p/q\" strings or integers");
      }
    return AnyMatrix(m);
  }
  Mat4<double> m;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const auto& e = rows[i][k];
      if (!e.is_number()) throw Error(ErrorKind::Parse, "float entries must be numbers");
      m(i, k) = e.get<double>();
    }
  return AnyMatrix(m);
}

}  // namespace cuspgeom::projlin
