#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "apomet/config.hpp"
#include "apomet/domain.hpp"

namespace apomet {

/// Result of a weak metric, explicitly ordered: the value of d(from, to).
struct DirectedDistance {
    Point2 from;
    Point2 to;
    double value = 0.0;
};

/// Boundary point together with the value of f(a) = |x-a|/|y-a| achieved there.
struct ExtremalBoundaryPoint {
    enum class Kind { Max, Min };
    Point2 point;
    double achieved = 0.0;
    Kind kind = Kind::Max;
};

/// A weak metric bound to its domain; the symmetrizers act on this type.
struct WeakMetricFn {
    std::string name;
    Domain domain;
    std::function<double(Point2, Point2)> eval;

    double operator()(Point2 x, Point2 y) const { return eval(x, y); }
};

// ---------------------------------------------------------------------------
// Logarithmic boundary-gap weak metric and its two classical symmetrizations.
// ---------------------------------------------------------------------------

/// i_A(x, y) = log(1 + |x-y| / d(x, boundary)).
double i_weak(const Domain& A, Point2 x, Point2 y, const Config& cfg = {});

/// Mean symmetrization of i_A: (i_A(x,y) + i_A(y,x)) / 2.
double j_tilde(const Domain& A, Point2 x, Point2 y, const Config& cfg = {});

/// Max symmetrization of i_A, equal to log(1 + |x-y| / min{d(x), d(y)}).
double j_vuorinen(const Domain& A, Point2 x, Point2 y, const Config& cfg = {});

// ---------------------------------------------------------------------------
// Funk weak metric, Klein-Hilbert metric, part metrics.
// ---------------------------------------------------------------------------

/// F(x, y) = log(|x-a| / |y-a|) with a the exit of the ray x -> y.
/// Needs a bounded convex domain (unit disk or convex polygon).
double funk(const Domain& A, Point2 x, Point2 y, const Config& cfg = {});

/// H(x, y) = (1/2) log([b,x,y,a]) along the chord through x, y; equals the
/// mean symmetrization of the Funk weak metric.
double hilbert(const Domain& A, Point2 x, Point2 y, const Config& cfg = {});

/// Part metric for the class of positive affine functions: the max
/// symmetrization of Funk, max{log|x-a|/|y-a|, log|y-b|/|x-b|}.
double part_affine(const Domain& A, Point2 x, Point2 y, const Config& cfg = {});

/// Part metric for positive harmonic functions on the unit disk, evaluated
/// over the extremal family of Poisson kernels P(z, zeta) = (1-|z|^2)/|z-zeta|^2:
/// max over n_angles equispaced zeta of |log(P(x,zeta)/P(y,zeta))|.
/// Converges to twice the Poincare distance as n_angles grows; this kernel
/// reduction is a numerical oracle, not a closed form.
double part_harmonic_disk(Point2 x, Point2 y, int n_angles, const Config& cfg = {});

// ---------------------------------------------------------------------------
// Apollonian weak metric: brute-force boundary supremum and closed forms.
// ---------------------------------------------------------------------------

struct OracleResult {
    double value = 0.0;
    ExtremalBoundaryPoint argmax;
};

/// sup over boundary points a of log(|x-a| / |y-a|), computed by scanning
/// `resolution` samples and refining every near-best local maximum by ternary
/// search on the boundary parameter. For the half-plane the sampling window
/// doubles until the supremum stalls; values below zero clamp to zero there,
/// since the supremum of a domain with unbounded boundary is never negative
/// (the ratio tends to 1 along any boundary sequence escaping to infinity).
OracleResult apollonian_oracle(const Domain& A, Point2 x, Point2 y, int resolution,
                               const Config& cfg = {});

/// Closed form on the unit disk: log((|x-y| + |x conj(y) - 1|) / |1 - |y|^2|).
double apollonian_disk(Point2 x, Point2 y, const Config& cfg = {});

/// Closed form on the upper half-plane: log((|y - conj(x)| + |y - x|) / |x - conj(x)|).
/// On a vertical line x = i s, y = i t this is max{0, log(t/s)}: moving away
/// from the boundary costs, moving toward it is free. As a boundary supremum
/// it reads sup over real a of log(|y-a| / |x-a|), the dual orientation of
/// apollonian_oracle; see apollonian_halfplane_sup.
double apollonian_halfplane(Point2 x, Point2 y, const Config& cfg = {});

/// sup over real a of log(|x-a| / |y-a|) in closed form; identical to
/// apollonian_halfplane with the arguments exchanged, and the quantity the
/// boundary-supremum oracle measures on the half-plane.
double apollonian_halfplane_sup(Point2 x, Point2 y, const Config& cfg = {});

/// Directed Apollonian weak metric: closed form on the disk and half-plane,
/// each in its conventional orientation, oracle at cfg.oracle_resolution
/// elsewhere.
double apollonian(const Domain& A, Point2 x, Point2 y, const Config& cfg = {});

/// Unique maximizer a+ and minimizer a- of f(a) = |x-a|/|y-a| on the unit
/// circle, with the achieved values:
///   max f = (|x-y| + |x conj(y) - 1|) / ||y|^2 - 1|
///   a+    = (|x-y| (x conj(y) - 1) y + (x-y) |x conj(y) - 1|)
///         / (|x-y| (x conj(y) - 1) + (x-y) |x conj(y) - 1| conj(y))
/// and the mirrored expressions with a minus sign for the minimum.
struct ExtremalPair {
    ExtremalBoundaryPoint max;
    ExtremalBoundaryPoint min;
};
ExtremalPair extremal_points_disk(Point2 x, Point2 y);

/// Extrema of |lambda (mu z + 1)| on |z| = 1: the max |lambda|(|mu|+1) at
/// z+ = |mu|/mu and the min |lambda| ||mu|-1| at z- = -|mu|/mu.
struct CircleAffineExtrema {
    Point2 zmax;
    double vmax = 0.0;
    Point2 zmin;
    double vmin = 0.0;
};
CircleAffineExtrema circle_affine_extrema(Complex lambda, Complex mu);

// ---------------------------------------------------------------------------
// Symmetrizations and the semi-metrics they produce.
// ---------------------------------------------------------------------------

/// Pointwise max of d(x,y) and d(y,x).
WeakMetricFn sigma_symmetrize(const WeakMetricFn& d);

/// Pointwise mean of d(x,y) and d(y,x).
WeakMetricFn s_symmetrize(const WeakMetricFn& d);

/// Half-Apollonian semi-metric: sup over a of |log(|x-a|/|y-a|)|, the max
/// symmetrization of the directed Apollonian weak metric.
double half_apollonian(const Domain& A, Point2 x, Point2 y, int resolution, const Config& cfg = {});

/// Apollonian semi-metric as a two-supremum sum (no 1/2 factor):
/// sup_a log(|x-a|/|y-a|) + sup_b log(|y-b|/|x-b|). Twice the mean
/// symmetrization of the directed weak metric.
double apollonian_semimetric(const Domain& A, Point2 x, Point2 y, int resolution,
                             const Config& cfg = {});

/// Poincare metric of the upper half-plane:
/// (1/2) log((|x - conj(y)| + |x-y|) / (|x - conj(y)| - |x-y|)).
double poincare_halfplane(Point2 x, Point2 y, const Config& cfg = {});

/// Poincare metric of the unit disk:
/// (1/2) log((|1 - x conj(y)| + |x-y|) / (|1 - x conj(y)| - |x-y|)).
double poincare_disk(Point2 x, Point2 y, const Config& cfg = {});

// ---------------------------------------------------------------------------
// Non-invariance witness search.
// ---------------------------------------------------------------------------

struct MobiusWitness {
    Point2 x;
    Point2 y;
    MobiusMap map;
    double defect = 0.0;
};

/// Searches seeded random disk automorphisms and point pairs until the disk
/// Apollonian weak metric moves by more than 0.1. Throws SearchFailed after
/// 1000 trials (non-invariance is a theorem, so failure means a bug).
MobiusWitness mobius_invariance_witness(std::uint64_t seed, const Config& cfg = {});

/// Named metric dispatcher used by the CLI; throws on unknown names or
/// metric/domain mismatches.
WeakMetricFn make_metric(const std::string& name, const Domain& A, const Config& cfg = {});

} // namespace apomet
