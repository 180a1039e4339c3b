#pragma once

#include <array>
#include <ostream>
#include <vector>

#include "cuspgeom/hilbert/volume.hpp"

namespace cuspgeom::cuspvol {

using domains::Point3;
using hilbert::QuadratureSpec;

// D_k over R = [1, e^{a_L}] x [0, b_T] in D', truncated at x1 <= X when integrated.
struct CuspFundamentalDomain {
  double k = 1.0;    // horoball floor above the boundary of D'
  double a_l = 0.0;  // dilation parameter of the lattice
  double b_t = 0.0;  // translation parameter of the lattice

  // Lattice of the normalized figure-eight cusp at s: a_L = s, b_T = sqrt(s sinh(s/4)/3).
  static CuspFundamentalDomain fig8(double s, double k);

  void validate() const;
  std::array<double, 2> x2_range() const;
  std::array<double, 2> x3_range() const;
  hilbert::Region region(double x1_min, double x1_max) const;
  bool contains(const Point3& x) const;
};

struct DirectionNorms {
  double e2 = 0.0;  // 1/(x2 - k1)
  double e1 = 0.0;  // 1/(x1 - k2)
  double e3 = 0.0;  // 2 k3 / (k3^2 - x3^2)
  double k1 = 0.0;  // e^{x3^2/2} / e^{x1}
  double k2 = 0.0;  // x3^2/2 - log x2
  double k3 = 0.0;  // sqrt(2 (x1 + log x2))
};

// Closed-form Finsler norms of e2, e1, e3 at an interior point of D'.
DirectionNorms direction_norms(const Point3& x);

// Largest T with ||T e2||_x < 1 (shrunk by 1e-9 relative so the inequality is strict).
double simplex_t(const Point3& x);

// Volume of the tetrahedron spanned by x, x + T e2, x + (x1/2) e1, x + sqrt(x1)/(3 sqrt 2) e3.
double simplex_bound(const Point3& x);

// The three norm inequalities used to place the tetrahedron inside the unit ball.
bool simplex_inequalities_hold(const Point3& x);

// Least power of ten N such that the inequalities hold at every interior grid point of the fundamental
// domain with x1 in [N, 1e6].
double lower_bound_threshold(const CuspFundamentalDomain& fd, int grid = 6);

struct LowerBoundCheck {
  Point3 x{};
  double volume = 0.0;  // Lebesgue measure of the unit Finsler ball
  double t = 0.0;
  double bound = 0.0;   // T x1^{3/2} / (36 sqrt 2)
  double margin = 0.0;  // volume - bound
  double threshold = 0.0;
  bool holds() const { return margin > 0.0; }
};

// Raises InvalidParameter when x1 <= threshold.
LowerBoundCheck lower_bound_check(const Point3& x, double threshold, const QuadratureSpec& q = {});

// Least-squares slope of log volume against log x1.
double fitted_exponent(const std::vector<double>& x1, const std::vector<double>& volume);

struct VolumeTableRow {
  double cutoff = 0.0;
  hilbert::VolumeEstimate estimate;  // cumulative up to the cutoff
  double increment = 0.0;            // volume of the slab ending at this cutoff
  double increment_ratio = 0.0;      // increment / previous increment; NaN for the first two rows
};

struct VolumeTable {
  CuspFundamentalDomain fd;
  std::vector<VolumeTableRow> rows;
  bool monotone() const;
};

// Cutoffs must be strictly increasing and above the floor; slabs are integrated independently
// and accumulated.
VolumeTable cusp_volume_table(const CuspFundamentalDomain& fd, const std::vector<double>& cutoffs, const QuadratureSpec& q = {});

void write_volume_table_csv(std::ostream& out, const VolumeTable& t);
void write_volume_table_svg(std::ostream& out, const VolumeTable& t);

struct DisplacementProfile {
  double s = 0.0;
  double b = 0.0;             // meridian translation parameter
  double kappa_prime = 0.5;   // level of the ambient horoball B'
  std::vector<double> levels;
  std::vector<double> displacement;
  double constancy_spread = 0.0;  // max - min over 8 points on the first horosphere

  bool strictly_decreasing() const;
  double decay_ratio() const;  // last / first
};

// Hilbert displacement, in the metric of B' = D' shifted up by kappa_prime, of the pure translation
// with parameter b at the point over (1, 0) on each horosphere x1 = F + level.
DisplacementProfile displacement_profile(double s, double b, const std::vector<double>& levels, double kappa_prime = 0.5);

// Displacement at one point (x on the horosphere of the ambient's family).
double translation_displacement(double b, const Point3& x, double kappa_prime, double tol = domains::kDefaultBisectionTol);

void write_displacement_csv(std::ostream& out, const DisplacementProfile& p);
void write_displacement_svg(std::ostream& out, const DisplacementProfile& p);

struct TilingReport {
  int samples = 0;
  int bad = 0;  // points covered by zero or several tiles
  double bad_fraction() const { return samples ? static_cast<double>(bad) / samples : 0.0; }
};

// Images of R under the lattice elements with exponents in {-1,0,1}^2, tested on deterministic samples
// of the neighbourhood [e^{-a}, e^{2a}] x [-b, 2b].
TilingReport tiling_check(const CuspFundamentalDomain& fd, int samples = 10000, std::uint64_t seed = 7);

}  // namespace cuspgeom::cuspvol
