#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "apomet/metrics.hpp"

namespace apomet {

/// Outcome of the alignment test d(x,z) = d(x,y) + d(y,z). The defect is
/// rhs - lhs and is nonnegative up to roundoff by the triangle inequality.
struct AlignedVerdict {
    double lhs = 0.0;     // d(x, z)
    double rhs = 0.0;     // d(x, y) + d(y, z)
    bool aligned = false;
    double defect = 0.0;  // rhs - lhs
};

/// Order-sensitive: (x, y, z) aligned does not imply (z, y, x) aligned.
AlignedVerdict aligned(const WeakMetricFn& d, Point2 x, Point2 y, Point2 z, double tol);

/// Boundary points achieving the supremum of log|x-a|/|y-a| within a value
/// slack, merged into clusters; one refined representative per cluster.
/// Ordinarily nonempty; empty only when the supremum is not attained
/// (half-plane pairs whose maximizing sequence escapes to infinity).
struct ArgmaxSet {
    std::vector<Point2> points;
    double value = 0.0;
};

ArgmaxSet argmax_set(const Domain& A, Point2 x, Point2 y, int resolution, double cluster_tol,
                     const Config& cfg = {});

/// For a triple aligned within tol on a bounded domain, a boundary point
/// realizing all three suprema within 10*tol; nullopt when the triple is not
/// aligned or no common point emerges.
std::optional<Point2> common_witness(const Domain& A, Point2 x, Point2 y, Point2 z,
                                     double tol = 1e-9, const Config& cfg = {});

/// Arc of the generalized circle through x and y orthogonal to the unit
/// circle; the support passes through x, y and 1/conj(y), and degenerates to
/// the diameter line when x, y, 0 are collinear.
struct GeodesicArc {
    GeneralizedCircle support;
    Point2 from;
    Point2 through;
    int orientation = 1;  // sign of travel along the support parameter
};

GeodesicArc geodesic_arc_disk(Point2 x, Point2 y);

/// Unit-circle point the arc meets when continued past `through`.
Point2 arc_boundary_exit(const GeodesicArc& arc);

/// k points on the arc ordered from `from` through `through` toward the
/// boundary exit, all strictly interior (clamped away from the unit circle).
std::vector<Point2> sample_arc(const GeodesicArc& arc, int k);

struct GeodesicReport {
    double max_abs_defect = 0.0;
    std::size_t triples_checked = 0;
    bool all_aligned = true;
    std::array<std::size_t, 3> worst_triple{0, 0, 0};
};

/// Checks every ordered index triple of the path (or a deterministic
/// subsample of 1000 when there are more) for alignment under d.
GeodesicReport verify_geodesic(const std::vector<Point2>& path, const WeakMetricFn& d, double tol);

} // namespace apomet
