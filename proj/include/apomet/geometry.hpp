#pragma once

#include <complex>

#include "apomet/errors.hpp"

namespace apomet {

/// Points of the plane are complex numbers.
using Point2 = std::complex<double>;
using Complex = std::complex<double>;

constexpr double kCoincidenceTol = 1e-14;    // below this distance two points count as equal
constexpr double kCollinearityTol = 1e-12;   // normalized triangle area threshold
constexpr double kInfinityDenomTol = 1e-14;  // |cz+d| below this maps to the point at infinity
constexpr double kRealCrossRatioTol = 1e-9;  // |Im| <= tol * (1 + |Re|) counts as real

inline double cross(Point2 a, Point2 b) {
    return a.real() * b.imag() - a.imag() * b.real();
}

inline double dot(Point2 a, Point2 b) {
    return a.real() * b.real() + a.imag() * b.imag();
}

/// A finite point or the point at infinity of the extended plane.
struct ExtendedPoint {
    Point2 value{0.0, 0.0};
    bool at_infinity = false;

    static ExtendedPoint finite(Point2 z) { return {z, false}; }
    static ExtendedPoint infinity() { return {{0.0, 0.0}, true}; }
};

/// Euclidean circle or straight line, the two faces of a generalized circle.
struct GeneralizedCircle {
    enum class Kind { Circle, Line };

    Kind kind = Kind::Line;
    Point2 center{0.0, 0.0};        // circle
    double radius = 0.0;            // circle
    Point2 point{0.0, 0.0};         // line
    Point2 direction{1.0, 0.0};     // line, unit length

    static GeneralizedCircle make_circle(Point2 center, double radius);
    static GeneralizedCircle make_line(Point2 point, Point2 direction);

    bool is_circle() const { return kind == Kind::Circle; }
    bool is_line() const { return kind == Kind::Line; }

    /// Euclidean distance from z to the locus.
    double distance_to(Point2 z) const;
    bool contains(Point2 z, double tol) const { return distance_to(z) <= tol; }
};

/// z -> translation + scale * rotation * (z or conj z). Scales every distance by `scale`.
struct Similarity {
    double scale = 1.0;
    Point2 rotation{1.0, 0.0};      // unit modulus
    Point2 translation{0.0, 0.0};
    bool reflect = false;

    static Similarity identity() { return {}; }
};

Point2 apply_similarity(const Similarity& s, Point2 z);

/// outer after inner; scales multiply, reflections compose by parity.
Similarity compose(const Similarity& outer, const Similarity& inner);

/// z -> (az + b) / (cz + d), stored normalized with ad - bc = 1.
struct MobiusMap {
    Complex a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

    MobiusMap() = default;
    MobiusMap(Complex a, Complex b, Complex c, Complex d);  // throws DegenerateInput when singular

    MobiusMap inverse() const;
    static MobiusMap identity() { return {}; }

    /// z -> e^{i angle} (z - center) / (1 - conj(center) z); preserves the unit disk for |center| < 1.
    static MobiusMap disk_automorphism(Point2 center, double angle);
};

ExtendedPoint apply_mobius(const MobiusMap& m, Point2 z);
MobiusMap compose(const MobiusMap& outer, const MobiusMap& inner);

/// (x,y,a,b) = (x-a)/(y-a) * (y-b)/(x-b). The four points must be pairwise distinct.
Complex cross_ratio(Point2 x, Point2 y, Point2 a, Point2 b);

/// Same with b allowed at infinity, where the b-factor drops out.
Complex cross_ratio_ext(Point2 x, Point2 y, Point2 a, const ExtendedPoint& b);

/// Scale-aware realness test for the alignment criterion.
inline bool is_real_cross_ratio(Complex cr) {
    return std::abs(cr.imag()) <= kRealCrossRatioTol * (1.0 + std::abs(cr.real()));
}

/// Circle through three non-collinear points, or the line through them when
/// the normalized triangle area falls below kCollinearityTol.
GeneralizedCircle circumcircle(Point2 p, Point2 q, Point2 r);

/// z -> 1/conj(z); involution fixing the unit circle pointwise.
Point2 invert_unit_circle(Point2 z);

} // namespace apomet
