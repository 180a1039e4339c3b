#pragma once

#include <optional>

#include "cuspgeom/domains/domain.hpp"

namespace cuspgeom::hilbert {

using domains::ConvexDomain;
using domains::Point3;

// (|y-a||x-b|) / (|y-b||x-a|) for collinear a, x, y, b; an absent (ideal) endpoint contributes 1.
double cross_ratio(const std::optional<Point3>& a, const Point3& x, const Point3& y, const std::optional<Point3>& b);

// log of the cross ratio with the chord endpoints through x and y; 0 when x = y.
double hilbert_distance(const ConvexDomain& dom, const Point3& x, const Point3& y,
                        double tol = domains::kDefaultBisectionTol);

// |v| (1/|x-p-| + 1/|x-p+|), ideal endpoints contributing 0; 0 for v = 0.
double finsler_norm(const ConvexDomain& dom, const Point3& x, const Point3& v, double tol = domains::kDefaultBisectionTol);

// As finsler_norm without the interiority check, for hot loops that validated x once.
double finsler_norm_unchecked(const ConvexDomain& dom, const Point3& x, const Point3& v, double tol);

}  // namespace cuspgeom::hilbert
