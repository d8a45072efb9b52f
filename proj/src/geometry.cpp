#include "apomet/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace apomet {

GeneralizedCircle GeneralizedCircle::make_circle(Point2 center, double radius) {
    if (!(radius > 0.0)) throw DegenerateInput("circle radius must be positive");
    GeneralizedCircle g;
    g.kind = Kind::Circle;
    g.center = center;
    g.radius = radius;
    return g;
}

GeneralizedCircle GeneralizedCircle::make_line(Point2 point, Point2 direction) {
    const double len = std::abs(direction);
    if (len < kCoincidenceTol) throw DegenerateInput("line direction must be nonzero");
    GeneralizedCircle g;
    g.kind = Kind::Line;
    g.point = point;
    g.direction = direction / len;
    return g;
}

double GeneralizedCircle::distance_to(Point2 z) const {
    if (kind == Kind::Circle) return std::abs(std::abs(z - center) - radius);
    return std::abs(cross(direction, z - point));
}

Point2 apply_similarity(const Similarity& s, Point2 z) {
    const Point2 w = s.reflect ? std::conj(z) : z;
    return s.translation + s.scale * s.rotation * w;
}

Similarity compose(const Similarity& outer, const Similarity& inner) {
    Similarity r;
    r.scale = outer.scale * inner.scale;
    r.reflect = outer.reflect != inner.reflect;
    r.rotation = outer.rotation * (outer.reflect ? std::conj(inner.rotation) : inner.rotation);
    r.translation = apply_similarity(outer, inner.translation);
    return r;
}

MobiusMap::MobiusMap(Complex a_, Complex b_, Complex c_, Complex d_)
    : a(a_), b(b_), c(c_), d(d_) {
    const Complex det = a * d - b * c;
    if (std::abs(det) <= 1e-12) throw DegenerateInput("Mobius map is singular");
    const Complex s = std::sqrt(det);
    a /= s;
    b /= s;
    c /= s;
    d /= s;
}

MobiusMap MobiusMap::inverse() const {
    MobiusMap m;
    m.a = d;
    m.b = -b;
    m.c = -c;
    m.d = a;
    return m;
}

MobiusMap MobiusMap::disk_automorphism(Point2 center, double angle) {
    if (std::abs(center) >= 1.0) throw DegenerateInput("disk automorphism center must be inside the unit disk");
    const Complex rot = std::polar(1.0, angle);
    return MobiusMap(rot, -rot * center, -std::conj(center), Complex{1.0, 0.0});
}

ExtendedPoint apply_mobius(const MobiusMap& m, Point2 z) {
    const Complex denom = m.c * z + m.d;
    if (std::abs(denom) < kInfinityDenomTol) return ExtendedPoint::infinity();
    return ExtendedPoint::finite((m.a * z + m.b) / denom);
}

MobiusMap compose(const MobiusMap& outer, const MobiusMap& inner) {
    MobiusMap m;
    m.a = outer.a * inner.a + outer.b * inner.c;
    m.b = outer.a * inner.b + outer.b * inner.d;
    m.c = outer.c * inner.a + outer.d * inner.c;
    m.d = outer.c * inner.b + outer.d * inner.d;
    return m;
}

namespace {

void require_pairwise_distinct(const Point2* pts, int n) {
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(pts[i] - pts[j]) <= kCoincidenceTol)
                throw DegenerateInput("points must be pairwise distinct");
}

} // namespace

Complex cross_ratio(Point2 x, Point2 y, Point2 a, Point2 b) {
    const Point2 pts[4] = {x, y, a, b};
    require_pairwise_distinct(pts, 4);
    return (x - a) / (y - a) * (y - b) / (x - b);
}

Complex cross_ratio_ext(Point2 x, Point2 y, Point2 a, const ExtendedPoint& b) {
    if (!b.at_infinity) return cross_ratio(x, y, a, b.value);
    const Point2 pts[3] = {x, y, a};
    require_pairwise_distinct(pts, 3);
    return (x - a) / (y - a);
}

GeneralizedCircle circumcircle(Point2 p, Point2 q, Point2 r) {
    const Point2 pts[3] = {p, q, r};
    require_pairwise_distinct(pts, 3);

    const double dpq = std::norm(q - p);
    const double dpr = std::norm(r - p);
    const double dqr = std::norm(r - q);
    const double max_sq = std::max({dpq, dpr, dqr});
    const double area = 0.5 * std::abs(cross(q - p, r - p));

    if (area < kCollinearityTol * max_sq) {
        // Direction from the farthest pair for stability.
        Point2 dir;
        if (dpq >= dpr && dpq >= dqr) dir = q - p;
        else if (dpr >= dqr) dir = r - p;
        else dir = r - q;
        return GeneralizedCircle::make_line(p, dir);
    }

    const double denom = 2.0 * (p.real() * (q.imag() - r.imag()) +
                                q.real() * (r.imag() - p.imag()) +
                                r.real() * (p.imag() - q.imag()));
    const double np = std::norm(p), nq = std::norm(q), nr = std::norm(r);
    const double ux = (np * (q.imag() - r.imag()) + nq * (r.imag() - p.imag()) + nr * (p.imag() - q.imag())) / denom;
    const double uy = (np * (r.real() - q.real()) + nq * (p.real() - r.real()) + nr * (q.real() - p.real())) / denom;
    const Point2 center{ux, uy};
    return GeneralizedCircle::make_circle(center, std::abs(p - center));
}

Point2 invert_unit_circle(Point2 z) {
    if (std::abs(z) <= kCoincidenceTol) throw DegenerateInput("cannot invert the origin");
    return 1.0 / std::conj(z);
}

} // namespace apomet
