#include "cuspgeom/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "cuspgeom/error.hpp"

namespace cuspgeom {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw Error(ErrorKind::Parse, "not a rational literal: '" + std::string(whole) + "'");
  mpz_class z(std::string(s), 10);
  return neg ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorKind::Parse, "empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash), text);
    mpz_class den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_part = text.substr(e + 1);
    if (!exp_part.empty() && exp_part[0] == '+') exp_part.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_part.data(), exp_part.data() + exp_part.size(), exponent);
    if (ec != std::errc() || ptr != exp_part.data() + exp_part.size() || exp_part.empty() || std::labs(exponent) > 4000) {
      throw Error(ErrorKind::Parse, "bad exponent in '" + std::string(text) + "'");
    }
  }

  bool neg = false;
  if (!mantissa.empty() && (mantissa[0] == '+' || mantissa[0] == '-')) {
    neg = mantissa[0] == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view ip = mantissa.substr(0, dot);
    std::string_view fp = mantissa.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty())) {
      throw Error(ErrorKind::Parse, "not a rational literal: '" + std::string(text) + "'");
    }
    digits = std::string(ip) + std::string(fp);
    frac_digits = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mantissa)) throw Error(ErrorKind::Parse, "not a rational literal: '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }

  mpz_class num(digits, 10);
  if (neg) num = -num;
  long shift = exponent - frac_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  Rational q = shift >= 0 ? Rational(num * pow10) : Rational(num, pow10);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(rn, rd);
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) {
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
  }
  return std::string(buf, ptr);
}

}  // namespace cuspgeom
