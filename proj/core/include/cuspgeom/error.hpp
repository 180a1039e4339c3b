#pragma once

#include <stdexcept>
#include <string>

namespace cuspgeom {

enum class ErrorKind {
  Singular,
  IllConditioned,
  NonRealSpectrum,
  IrrationalSpectrum,
  NonPositiveSpectrum,
  BaseViolation,
  UnboundedSearch,
  NotInterior,
  NonCollinear,
  QuadratureNonConvergence,
  InvalidRegion,
  RegionTooLarge,
  InvalidParameter,
  WrongShape,
  ZeroElement,
  HypothesisViolated,
  DegenerateLimit,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Which hypothesis of the cusp normalization failed.
enum class Hypothesis {
  NonCommuting,
  ComplexSpectrum,
  NonPositiveSpectrum,
  NoGenericElement,
  WrongMinPolyShape,
  RankDeficient,
  IrrationalConjugator,
};

const char* to_string(Hypothesis h) noexcept;

class HypothesisError : public Error {
 public:
  HypothesisError(Hypothesis reason, const std::string& detail);
  Hypothesis reason() const noexcept { return reason_; }

 private:
  Hypothesis reason_;
};

}  // namespace cuspgeom
