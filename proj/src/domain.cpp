#include "apomet/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

namespace apomet {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_finite(const std::vector<Point2>& pts) {
    for (const Point2& p : pts)
        if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
            throw DegenerateInput("coordinates must be finite");
}

std::vector<double> cumulative_lengths(const std::vector<Point2>& pts, bool closed) {
    std::vector<double> cum;
    if (pts.size() < 2) return cum;
    const std::size_t n_edges = closed ? pts.size() : pts.size() - 1;
    cum.resize(n_edges + 1);
    cum[0] = 0.0;
    for (std::size_t i = 0; i < n_edges; ++i)
        cum[i + 1] = cum[i] + std::abs(pts[(i + 1) % pts.size()] - pts[i]);
    return cum;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
    const Point2 ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 < kCoincidenceTol * kCoincidenceTol) return std::abs(p - a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

// Crossing-number test against the closed polyline pts.
bool inside_closed_polyline(const std::vector<Point2>& pts, Point2 p) {
    bool inside = false;
    const std::size_t n = pts.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point2& a = pts[i];
        const Point2& b = pts[j];
        const bool straddles = (a.imag() > p.imag()) != (b.imag() > p.imag());
        if (straddles) {
            const double x_cross = a.real() + (p.imag() - a.imag()) / (b.imag() - a.imag()) * (b.real() - a.real());
            if (p.real() < x_cross) inside = !inside;
        }
    }
    return inside;
}

} // namespace

Domain::Domain(Kind k, std::vector<Point2> pts, bool bounded_flag)
    : kind_(k), pts_(std::move(pts)), bounded_flag_(bounded_flag) {
    const bool closed = kind_ == Kind::ConvexPolygon || (kind_ == Kind::SampledBoundary && bounded_flag_);
    cumlen_ = cumulative_lengths(pts_, closed);
}

Domain Domain::unit_disk() { return Domain(Kind::UnitDisk, {}, true); }

Domain Domain::upper_half_plane() { return Domain(Kind::UpperHalfPlane, {}, false); }

Domain Domain::convex_polygon(std::vector<Point2> vertices) {
    validate_finite(vertices);
    const std::size_t n = vertices.size();
    if (n < 3) throw DegenerateInput("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(vertices[i] - vertices[(i + 1) % n]) <= kCoincidenceTol)
            throw DegenerateInput("polygon has repeated vertices");
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 e1 = vertices[(i + 1) % n] - vertices[i];
        const Point2 e2 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
        if (cross(e1, e2) <= 1e-12 * std::abs(e1) * std::abs(e2))
            throw DegenerateInput("polygon must be strictly convex and counterclockwise");
    }
    return Domain(Kind::ConvexPolygon, std::move(vertices), true);
}

Domain Domain::sampled_boundary(std::vector<Point2> points, bool bounded) {
    validate_finite(points);
    if (points.size() < (bounded ? std::size_t{3} : std::size_t{2}))
        throw DegenerateInput("sampled boundary needs at least 3 points (2 if unbounded)");
    return Domain(Kind::SampledBoundary, std::move(points), bounded);
}

bool Domain::bounded() const {
    switch (kind_) {
        case Kind::UnitDisk:
        case Kind::ConvexPolygon: return true;
        case Kind::UpperHalfPlane: return false;
        case Kind::SampledBoundary: return bounded_flag_;
    }
    return false;
}

bool Domain::eligible_for_apollonian() const {
    // The half-plane qualifies through its unbounded boundary.
    if (kind_ == Kind::SampledBoundary) return bounded_flag_;
    return true;
}

bool Domain::contains(Point2 x) const {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    switch (kind_) {
        case Kind::UnitDisk:
            return 1.0 - std::abs(x) > kBoundaryBuffer;
        case Kind::UpperHalfPlane:
            return x.imag() > kBoundaryBuffer;
        case Kind::ConvexPolygon: {
            const std::size_t n = pts_.size();
            for (std::size_t i = 0; i < n; ++i) {
                const Point2 e = pts_[(i + 1) % n] - pts_[i];
                if (cross(e, x - pts_[i]) / std::abs(e) <= kBoundaryBuffer) return false;
            }
            return true;
        }
        case Kind::SampledBoundary: {
            double dist = std::numeric_limits<double>::infinity();
            const std::size_t n = pts_.size();
            const std::size_t n_edges = bounded_flag_ ? n : n - 1;
            for (std::size_t i = 0; i < n_edges; ++i)
                dist = std::min(dist, point_segment_distance(x, pts_[i], pts_[(i + 1) % n]));
            if (dist <= kBoundaryBuffer) return false;
            // With only samples of an unbounded boundary there is no reliable
            // side test; any point off the polyline counts as a member.
            if (!bounded_flag_) return true;
            return inside_closed_polyline(pts_, x);
        }
    }
    return false;
}

double Domain::boundary_length() const {
    switch (kind_) {
        case Kind::UnitDisk: return 2.0 * kPi;
        case Kind::UpperHalfPlane: return std::numeric_limits<double>::infinity();
        default: return cumlen_.empty() ? 0.0 : cumlen_.back();
    }
}

std::string Domain::name() const {
    switch (kind_) {
        case Kind::UnitDisk: return "unit_disk";
        case Kind::UpperHalfPlane: return "upper_half_plane";
        case Kind::ConvexPolygon: return "convex_polygon";
        case Kind::SampledBoundary: return "sampled_boundary";
    }
    return "unknown";
}

Point2 BoundaryCurve::at(double t) const {
    switch (domain->kind()) {
        case Domain::Kind::UnitDisk:
            return std::polar(1.0, t);
        case Domain::Kind::UpperHalfPlane:
            return Point2{std::clamp(t, t_lo, t_hi), 0.0};
        default: {
            const std::vector<Point2>& pts = domain->points();
            const double total = t_hi;
            double s = t;
            if (closed) {
                s = std::fmod(s, total);
                if (s < 0.0) s += total;
            } else {
                s = std::clamp(s, 0.0, total);
            }
            const std::size_t n = pts.size();
            const std::size_t n_edges = closed ? n : n - 1;
            double remaining = s;
            for (std::size_t i = 0; i < n_edges; ++i) {
                const Point2 p0 = pts[i];
                const Point2 p1 = pts[(i + 1) % n];
                const double len = std::abs(p1 - p0);
                if (remaining <= len || i + 1 == n_edges) {
                    const double u = len > 0.0 ? std::clamp(remaining / len, 0.0, 1.0) : 0.0;
                    return p0 + u * (p1 - p0);
                }
                remaining -= len;
            }
            return pts.front();
        }
    }
}

BoundaryCurve boundary_curve(const Domain& A, double window) {
    BoundaryCurve c;
    c.domain = &A;
    c.window = window;
    switch (A.kind()) {
        case Domain::Kind::UnitDisk:
            c.closed = true;
            c.t_lo = 0.0;
            c.t_hi = 2.0 * kPi;
            break;
        case Domain::Kind::UpperHalfPlane:
            c.closed = false;
            c.t_lo = -window;
            c.t_hi = window;
            break;
        case Domain::Kind::ConvexPolygon:
            c.closed = true;
            c.t_lo = 0.0;
            c.t_hi = A.boundary_length();
            break;
        case Domain::Kind::SampledBoundary:
            c.closed = A.bounded();
            c.t_lo = 0.0;
            c.t_hi = A.boundary_length();
            break;
    }
    return c;
}

double boundary_distance(const Domain& A, Point2 x) {
    if (!A.contains(x)) throw PointOutsideDomain("point is not interior to the domain");
    switch (A.kind()) {
        case Domain::Kind::UnitDisk:
            return 1.0 - std::abs(x);
        case Domain::Kind::UpperHalfPlane:
            return x.imag();
        case Domain::Kind::ConvexPolygon: {
            const std::vector<Point2>& v = A.points();
            const std::size_t n = v.size();
            double dist = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i)
                dist = std::min(dist, point_segment_distance(x, v[i], v[(i + 1) % n]));
            return dist;
        }
        case Domain::Kind::SampledBoundary: {
            double dist = std::numeric_limits<double>::infinity();
            for (const Point2& p : A.points()) dist = std::min(dist, std::abs(x - p));
            return dist;
        }
    }
    return 0.0;
}

Point2 ray_exit(const Domain& A, Point2 x, Point2 y) {
    if (!A.bounded()) throw UnboundedDomain("ray exit needs a bounded domain");
    if (std::abs(x - y) <= kCoincidenceTol) throw DegenerateInput("ray needs two distinct points");
    if (!A.contains(x) || !A.contains(y)) throw PointOutsideDomain("ray endpoints must be interior");

    const Point2 d = y - x;
    if (A.kind() == Domain::Kind::UnitDisk) {
        // |x + t d|^2 = 1, take the positive root (the other is behind x).
        const double a = std::norm(d);
        const double b = 2.0 * dot(x, d);
        const double c = std::norm(x) - 1.0;
        const double disc = std::sqrt(b * b - 4.0 * a * c);
        const double t = b >= 0.0 ? (2.0 * (-c)) / (b + disc) : (-b + disc) / (2.0 * a);
        return x + t * d;
    }

    // Polygon or closed sample polyline: edge-by-edge parametric intersection,
    // smallest t >= 1 within tolerance (robust at vertices).
    const std::vector<Point2>& v = A.points();
    const std::size_t n = v.size();
    double best_t = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 p0 = v[i];
        const Point2 e = v[(i + 1) % n] - p0;
        const double denom = cross(d, e);
        if (std::abs(denom) <= kCoincidenceTol * std::abs(d) * std::abs(e)) continue;
        const double t = cross(p0 - x, e) / denom;
        const double s = cross(p0 - x, d) / denom;
        if (s >= -1e-12 && s <= 1.0 + 1e-12 && t >= 1.0 - 1e-12)
            best_t = std::min(best_t, t);
    }
    if (!std::isfinite(best_t)) throw DegenerateInput("ray does not exit the boundary");
    return x + best_t * d;
}

std::pair<Point2, Point2> chord(const Domain& A, Point2 x, Point2 y) {
    const Point2 a = ray_exit(A, x, y);
    const Point2 b = ray_exit(A, y, x);
    return {b, a};
}

BoundarySample sample_boundary(const Domain& A, int n, double window) {
    if (n < 2) throw DegenerateInput("need at least 2 boundary samples");
    BoundarySample out;
    switch (A.kind()) {
        case Domain::Kind::SampledBoundary:
            out.points = A.points();
            out.resolution = static_cast<int>(out.points.size());
            out.closed = A.bounded();
            return out;
        case Domain::Kind::UpperHalfPlane: {
            if (!(window > 0.0)) throw DegenerateInput("window must be positive");
            out.points.reserve(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k)
                out.points.emplace_back(-window + 2.0 * window * (double(k) / double(n - 1)), 0.0);
            out.resolution = n;
            out.closed = false;
            return out;
        }
        default: {
            const BoundaryCurve c = boundary_curve(A, window);
            out.points.reserve(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k)
                out.points.push_back(c.at(c.t_hi * (double(k) / double(n))));
            out.resolution = n;
            out.closed = true;
            return out;
        }
    }
}

Domain transformed(const Domain& A, const Similarity& s) {
    if (A.kind() != Domain::Kind::ConvexPolygon && A.kind() != Domain::Kind::SampledBoundary)
        throw DegenerateInput("only polygons and sampled boundaries can be transformed");
    std::vector<Point2> pts;
    pts.reserve(A.points().size());
    for (const Point2& p : A.points()) pts.push_back(apply_similarity(s, p));
    if (s.reflect) std::reverse(pts.begin(), pts.end());
    if (A.kind() == Domain::Kind::ConvexPolygon) return Domain::convex_polygon(std::move(pts));
    return Domain::sampled_boundary(std::move(pts), A.bounded());
}

Domain Domain::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    const std::string type = j.at("type").get<std::string>();
    if (type == "unit_disk") return unit_disk();
    if (type == "upper_half_plane") return upper_half_plane();

    auto parse_points = [&](const char* key) {
        std::vector<Point2> pts;
        for (const auto& entry : j.at(key)) {
            if (!entry.is_array() || entry.size() != 2)
                throw DegenerateInput("point entries must be [x, y] pairs");
            pts.emplace_back(entry[0].get<double>(), entry[1].get<double>());
        }
        return pts;
    };

    if (type == "convex_polygon") return convex_polygon(parse_points("vertices"));
    if (type == "sampled_boundary")
        return sampled_boundary(parse_points("points"), j.at("bounded").get<bool>());
    throw DegenerateInput("unknown domain type: " + type);
}

std::string Domain::to_json() const {
    nlohmann::json j;
    j["type"] = name();
    auto dump_points = [&](const char* key) {
        nlohmann::json arr = nlohmann::json::array();
        for (const Point2& p : pts_) arr.push_back({p.real(), p.imag()});
        j[key] = std::move(arr);
    };
    if (kind_ == Kind::ConvexPolygon) dump_points("vertices");
    if (kind_ == Kind::SampledBoundary) {
        dump_points("points");
        j["bounded"] = bounded_flag_;
    }
    return j.dump();
}

} // namespace apomet
