#pragma once

#include <nlohmann/json.hpp>
#include <variant>

#include "cuspgeom/projlin/mat4.hpp"

namespace cuspgeom::projlin {

// {"regime":"exact"|"float","rows":[[...]x4]}; exact entries are "p/q" strings.
nlohmann::json to_json(const Mat4<Rational>& m);
nlohmann::json to_json(const Mat4<double>& m);

class AnyMatrix {
 public:
  explicit AnyMatrix(Mat4<Rational> m) : m_(std::move(m)) {}
  explicit AnyMatrix(Mat4<double> m) : m_(std::move(m)) {}

  Regime regime() const { return m_.index() == 0 ? Regime::Exact : Regime::Float; }
  const Mat4<Rational>& exact() const { return std::get<0>(m_); }
  const Mat4<double>& floating() const { return std::get<1>(m_); }
  Mat4<double> to_double() const { return regime() == Regime::Exact ? exact().to_double() : floating(); }
  nlohmann::json to_json() const;

 private:
  std::variant<Mat4<Rational>, Mat4<double>> m_;
};

// Throws Error(Parse) on any schema violation.
AnyMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace cuspgeom::projlin
