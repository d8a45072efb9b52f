#pragma once

#include <string>
#include <utility>
#include <vector>

#include "apomet/geometry.hpp"

namespace apomet {

// Interior points closer than this to the boundary count as outside; the
// metrics blow up on the boundary itself.
constexpr double kBoundaryBuffer = 1e-12;

/// Planar domain given by its boundary: the open unit disk, the open upper
/// half-plane, the interior of a strictly convex polygon, or a domain known
/// only through an ordered list of boundary samples.
class Domain {
public:
    enum class Kind { UnitDisk, UpperHalfPlane, ConvexPolygon, SampledBoundary };

    static Domain unit_disk();
    static Domain upper_half_plane();

    /// Vertices in counterclockwise order, strictly convex, no repeats. Throws DegenerateInput.
    static Domain convex_polygon(std::vector<Point2> vertices);

    /// Ordered boundary samples; `bounded` declares whether they trace a closed loop.
    static Domain sampled_boundary(std::vector<Point2> points, bool bounded);

    Kind kind() const { return kind_; }
    bool bounded() const;

    /// Bounded, or boundary unbounded. Unbounded sampled boundaries fail: the
    /// samples cannot witness a supremum that escapes to infinity.
    bool eligible_for_apollonian() const;

    /// Interior membership with the kBoundaryBuffer margin.
    bool contains(Point2 x) const;

    /// Polygon vertices or boundary samples.
    const std::vector<Point2>& points() const { return pts_; }

    /// Total boundary length for closed boundaries (polygon perimeter, 2*pi for the disk).
    double boundary_length() const;

    static Domain from_json(const std::string& text);
    std::string to_json() const;

    std::string name() const;

private:
    Domain(Kind k, std::vector<Point2> pts, bool bounded_flag);

    Kind kind_;
    std::vector<Point2> pts_;
    bool bounded_flag_ = true;          // sampled boundaries only
    std::vector<double> cumlen_;        // cumulative arclength over pts_ edges
};

/// Ordered samples of the boundary of some domain.
struct BoundarySample {
    std::vector<Point2> points;
    int resolution = 0;
    bool closed = false;
};

/// Parameterization of the boundary: angle for the disk, arclength for
/// polygons and sample polylines, the real coordinate on [-window, window]
/// for the half-plane.
struct BoundaryCurve {
    const Domain* domain = nullptr;
    double window = 1.0;
    bool closed = false;
    double t_lo = 0.0;
    double t_hi = 1.0;

    Point2 at(double t) const;
};

BoundaryCurve boundary_curve(const Domain& A, double window = 1.0);

/// Distance from an interior point to the boundary. Throws PointOutsideDomain.
double boundary_distance(const Domain& A, Point2 x);

/// Exit point of the ray from x through y; requires a bounded domain and x != y.
Point2 ray_exit(const Domain& A, Point2 x, Point2 y);

/// Both chord endpoints (b, a) with b, x, y, a in that order along the line.
std::pair<Point2, Point2> chord(const Domain& A, Point2 x, Point2 y);

/// n boundary points: equispaced angles (disk), arclength-equispaced (polygon),
/// equispaced on [-window, window] (half-plane), or the stored samples.
BoundarySample sample_boundary(const Domain& A, int n, double window = 1.0);

/// Image of a polygon or sampled boundary under a similarity. Reflections
/// reverse the vertex order so the result stays counterclockwise.
Domain transformed(const Domain& A, const Similarity& s);

} // namespace apomet
