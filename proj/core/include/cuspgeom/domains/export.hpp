#pragma once

#include <array>
#include <ostream>

#include "cuspgeom/domains/domain.hpp"

namespace cuspgeom::domains {

struct BaseGrid {
  std::array<double, 2> x2_range;
  std::array<double, 2> x3_range;
  int n2 = 24;
  int n3 = 24;
};

// Triangulated graph x1 = h + level + kappa over a rectangular base grid (kappa = 0 gives the boundary).
void write_graph_obj(std::ostream& out, const ConvexDomain& dom, double kappa, const BaseGrid& grid);

// Polyline of {x1 = h(x2, x3) + level + kappa} in the plane x3 = const, as a standalone SVG.
void write_slice_svg(std::ostream& out, const ConvexDomain& dom, double kappa, double x3, std::array<double, 2> x2_range,
                     int samples = 200);

}  // namespace cuspgeom::domains
