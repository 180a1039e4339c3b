#include "cuspgeom/error.hpp"

namespace cuspgeom {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Singular: return "singular";
    case ErrorKind::IllConditioned: return "ill-conditioned";
    case ErrorKind::NonRealSpectrum: return "non-real spectrum";
    case ErrorKind::IrrationalSpectrum: return "irrational spectrum";
    case ErrorKind::NonPositiveSpectrum: return "non-positive spectrum";
    case ErrorKind::BaseViolation: return "base violation";
    case ErrorKind::UnboundedSearch: return "unbounded search";
    case ErrorKind::NotInterior: return "not interior";
    case ErrorKind::NonCollinear: return "non-collinear";
    case ErrorKind::QuadratureNonConvergence: return "quadrature non-convergence";
    case ErrorKind::InvalidRegion: return "invalid region";
    case ErrorKind::RegionTooLarge: return "region too large";
    case ErrorKind::InvalidParameter: return "invalid parameter";
    case ErrorKind::WrongShape: return "wrong shape";
    case ErrorKind::ZeroElement: return "zero element";
    case ErrorKind::HypothesisViolated: return "hypotheses violated";
    case ErrorKind::DegenerateLimit: return "degenerate limit";
    case ErrorKind::Parse: return "parse error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

const char* to_string(Hypothesis h) noexcept {
  switch (h) {
    case Hypothesis::NonCommuting: return "non-commuting";
    case Hypothesis::ComplexSpectrum: return "complex spectrum";
    case Hypothesis::NonPositiveSpectrum: return "non-positive spectrum";
    case Hypothesis::NoGenericElement: return "no n=3 element found";
    case Hypothesis::WrongMinPolyShape: return "wrong minimal-polynomial shape";
    case Hypothesis::RankDeficient: return "rank deficient";
    case Hypothesis::IrrationalConjugator: return "conjugator not rational";
  }
  return "unknown";
}

HypothesisError::HypothesisError(Hypothesis reason, const std::string& detail)
    : Error(ErrorKind::HypothesisViolated, std::string(to_string(reason)) + (detail.empty() ? "" : " (" + detail + ")")),
      reason_(reason) {}

}  // namespace cuspgeom
