#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <vector>

#include "cuspgeom/hilbert/metric.hpp"

namespace cuspgeom::hilbert {

// Lebesgue volume of the Euclidean ball of diameter 1.
inline constexpr double kAlpha3 = 0.52359877559829887308;  // pi/6

enum class VolumeMethod { ProductGrid, MonteCarlo };

struct QuadratureSpec {
  int sphere_order = 34;  // product Gauss rule: order z-nodes x 2*order azimuths (2312 nodes at 34)
  std::int64_t mc_samples = 200000;
  std::uint64_t seed = 0x5EED2024ULL;
  double bisection_tol = domains::kDefaultBisectionTol;
  double cutoff = 80.0;  // vertical cutoff X
  VolumeMethod method = VolumeMethod::ProductGrid;
  int grid_order = 6;  // Gauss nodes per axis (and per unit of log-height) in product-grid integration
  double target_rel = 1e-3;
  bool whiten = true;
  bool check_convergence = true;
  int workers = 0;  // 0: hardware concurrency

  int sphere_node_count() const { return 2 * sphere_order * sphere_order; }
  void validate() const;
};

const char* to_string(VolumeMethod m) noexcept;

// Antipodal pairs of a product Gauss-Legendre sphere rule; each weight covers u and -u.
struct SphereRule {
  std::vector<Point3> directions;
  std::vector<double> weights;
  int order = 0;
};

const SphereRule& sphere_rule(int order);

// Volume of {v : ||v||_x <= 1} as (1/3) sum w r(u)^3 in a whitened frame.
double unit_ball_lebesgue(const ConvexDomain& dom, const Point3& x, const QuadratureSpec& q = {});

// alpha_3 / unit_ball_lebesgue.
double busemann_density(const ConvexDomain& dom, const Point3& x, const QuadratureSpec& q = {});

// Integration region: base rectangle in (x2,x3), vertical window, optional horoball floor
// x1 > h(x2,x3) + level + floor.
struct Region {
  ConvexDomain domain = ConvexDomain::d_prime();
  std::array<double, 2> x2{1.0, 1.0};
  std::array<double, 2> x3{0.0, 0.0};
  double x1_min = -std::numeric_limits<double>::infinity();
  double x1_max = 0.0;
  std::optional<double> floor;

  void validate() const;
  bool base_is_empty() const { return !(x2[1] > x2[0]) || !(x3[1] > x3[0]); }
  // Lower x1 limit over (x2,x3); may exceed x1_max (empty column).
  double lower(double x2v, double x3v) const;
  bool contains(const Point3& p) const;
};

struct VolumeEstimate {
  double value = 0.0;
  double stderr_ = 0.0;  // Monte Carlo standard error, or |fine - coarse| for the product grid
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  VolumeMethod method = VolumeMethod::ProductGrid;
};

VolumeEstimate busemann_volume(const Region& region, const QuadratureSpec& q = {});

// Covering estimate of the Hausdorff 3-measure of a small box (no floor, finite x1 window).
struct HausdorffOptions {
  int max_level = 4;        // at most 2^max_level cells per axis
  int sub = 6;              // lattice points per cell edge used for ball counting
};

struct HausdorffEstimate {
  double value = 0.0;
  int level = 0;            // refinement level reached
  double max_cell_diameter = 0.0;
};

HausdorffEstimate hausdorff_oracle(const Region& box, double eps, const HausdorffOptions& opt = {});

// CSV grid (x1,x2,x3,density) for plotting.
void write_density_grid_csv(std::ostream& out, const Region& region, int n1, int n2, int n3, const QuadratureSpec& q);

// Volume-report CSV: cutoff X, estimate, stderr, samples, seed.
struct VolumeRow {
  double cutoff;
  VolumeEstimate estimate;
};
void write_volume_report_csv(std::ostream& out, const std::vector<VolumeRow>& rows);

}  // namespace cuspgeom::hilbert
