#include "apomet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace apomet {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp_zero(double v, const Config& cfg) {
    return std::abs(v) <= cfg.zero_clamp ? 0.0 : v;
}

void require_interior(const Domain& A, Point2 x, Point2 y) {
    if (!A.contains(x) || !A.contains(y))
        throw PointOutsideDomain("points must be interior to the domain");
}

void require_bounded_convex(const Domain& A) {
    if (A.kind() != Domain::Kind::UnitDisk && A.kind() != Domain::Kind::ConvexPolygon)
        throw UnboundedDomain("requires a bounded convex domain (unit disk or convex polygon)");
}

double log_ratio(Point2 x, Point2 y, Point2 a) {
    return std::log(std::abs(x - a)) - std::log(std::abs(y - a));
}

struct ScanBest {
    double value = -std::numeric_limits<double>::infinity();
    double t = 0.0;
    Point2 point;
};

// Maximize g(t) = log|x-c(t)| - log|y-c(t)| over the sampled curve, then
// refine every local maximum within a small value margin of the best sample
// by ternary search; the restriction near an optimum is unimodal at these
// resolutions.
ScanBest scan_boundary_max(const BoundaryCurve& curve, Point2 x, Point2 y, int n,
                           const Config& cfg) {
    const bool closed = curve.closed;
    std::vector<double> ts;
    std::vector<double> vals;
    ts.reserve(static_cast<std::size_t>(n));
    vals.reserve(static_cast<std::size_t>(n));

    const Domain::Kind kind = curve.domain->kind();
    if (kind == Domain::Kind::ConvexPolygon || kind == Domain::Kind::SampledBoundary) {
        // Single incremental walk along the polyline instead of n edge scans.
        const std::vector<Point2>& pts = curve.domain->points();
        const std::size_t m = pts.size();
        const std::size_t n_edges = closed ? m : m - 1;
        const double total = curve.t_hi - curve.t_lo;
        const double step = closed ? total / n : total / (n - 1);
        std::size_t edge = 0;
        double edge_start = 0.0;
        double edge_len = std::abs(pts[(edge + 1) % m] - pts[edge]);
        for (int k = 0; k < n; ++k) {
            const double s = std::min(curve.t_lo + step * k, curve.t_hi);
            while (edge + 1 < n_edges && s > edge_start + edge_len) {
                edge_start += edge_len;
                ++edge;
                edge_len = std::abs(pts[(edge + 1) % m] - pts[edge]);
            }
            const double u = edge_len > 0.0 ? std::clamp((s - edge_start) / edge_len, 0.0, 1.0) : 0.0;
            const Point2 p = pts[edge] + u * (pts[(edge + 1) % m] - pts[edge]);
            ts.push_back(s);
            vals.push_back(log_ratio(x, y, p));
        }
    } else {
        const double total = curve.t_hi - curve.t_lo;
        const double step = closed ? total / n : total / (n - 1);
        for (int k = 0; k < n; ++k) {
            const double t = curve.t_lo + step * k;
            ts.push_back(t);
            vals.push_back(log_ratio(x, y, curve.at(t)));
        }
    }

    const int count = static_cast<int>(ts.size());
    int best_idx = 0;
    for (int k = 1; k < count; ++k)
        if (vals[k] > vals[best_idx]) best_idx = k;

    // Candidate basins: local maxima close in value to the best sample.
    constexpr double kCandidateMargin = 1e-3;
    constexpr int kMaxCandidates = 32;
    std::vector<int> candidates;
    for (int k = 0; k < count; ++k) {
        double prev, next;
        if (closed) {
            prev = vals[(k + count - 1) % count];
            next = vals[(k + 1) % count];
        } else {
            prev = k > 0 ? vals[k - 1] : -std::numeric_limits<double>::infinity();
            next = k + 1 < count ? vals[k + 1] : -std::numeric_limits<double>::infinity();
        }
        if (vals[k] >= prev && vals[k] >= next && vals[k] >= vals[best_idx] - kCandidateMargin)
            candidates.push_back(k);
    }
    if (candidates.empty()) candidates.push_back(best_idx);
    std::sort(candidates.begin(), candidates.end(),
              [&](int a, int b) { return vals[a] > vals[b]; });
    if (static_cast<int>(candidates.size()) > kMaxCandidates) candidates.resize(kMaxCandidates);

    const double step = closed ? (curve.t_hi - curve.t_lo) / count
                               : (curve.t_hi - curve.t_lo) / (count - 1);
    ScanBest best;
    for (int idx : candidates) {
        double lo = ts[idx] - step;
        double hi = ts[idx] + step;
        if (!closed) {
            lo = std::max(lo, curve.t_lo);
            hi = std::min(hi, curve.t_hi);
        }
        // Stop at the requested width or at the representable width for the
        // parameter magnitude, whichever is larger (half-plane windows can
        // exceed 1e12 times the nominal tolerance).
        const double width_tol =
            std::max(cfg.refine_param_tol, 1e-15 * (std::abs(lo) + std::abs(hi)));
        for (int it = 0; it < 200 && hi - lo > width_tol; ++it) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (log_ratio(x, y, curve.at(m1)) < log_ratio(x, y, curve.at(m2)))
                lo = m1;
            else
                hi = m2;
        }
        const double t = 0.5 * (lo + hi);
        const double v = log_ratio(x, y, curve.at(t));
        if (v > best.value) {
            best.value = v;
            best.t = t;
            best.point = curve.at(t);
        }
        // Keep the raw sample if refinement landed worse (kinked basins).
        if (vals[idx] > best.value) {
            best.value = vals[idx];
            best.t = ts[idx];
            best.point = curve.at(ts[idx]);
        }
    }
    return best;
}

double directed_apollonian(const Domain& A, Point2 x, Point2 y, int resolution, const Config& cfg) {
    switch (A.kind()) {
        case Domain::Kind::UnitDisk: return apollonian_disk(x, y, cfg);
        case Domain::Kind::UpperHalfPlane: return apollonian_halfplane(x, y, cfg);
        default: return apollonian_oracle(A, x, y, resolution, cfg).value;
    }
}

} // namespace

double i_weak(const Domain& A, Point2 x, Point2 y, const Config& cfg) {
    require_interior(A, x, y);
    const double v = std::log1p(std::abs(x - y) / boundary_distance(A, x));
    return clamp_zero(v, cfg);
}

double j_tilde(const Domain& A, Point2 x, Point2 y, const Config& cfg) {
    return clamp_zero(0.5 * (i_weak(A, x, y, cfg) + i_weak(A, y, x, cfg)), cfg);
}

double j_vuorinen(const Domain& A, Point2 x, Point2 y, const Config& cfg) {
    require_interior(A, x, y);
    const double d = std::min(boundary_distance(A, x), boundary_distance(A, y));
    return clamp_zero(std::log1p(std::abs(x - y) / d), cfg);
}

double funk(const Domain& A, Point2 x, Point2 y, const Config& cfg) {
    require_bounded_convex(A);
    require_interior(A, x, y);
    if (std::abs(x - y) <= kCoincidenceTol) return 0.0;
    const Point2 a = ray_exit(A, x, y);
    return clamp_zero(log_ratio(x, y, a), cfg);
}

double hilbert(const Domain& A, Point2 x, Point2 y, const Config& cfg) {
    require_bounded_convex(A);
    require_interior(A, x, y);
    if (std::abs(x - y) <= kCoincidenceTol) return 0.0;
    const auto [b, a] = chord(A, x, y);
    return clamp_zero(0.5 * (log_ratio(x, y, a) + log_ratio(y, x, b)), cfg);
}

double part_affine(const Domain& A, Point2 x, Point2 y, const Config& cfg) {
    require_bounded_convex(A);
    require_interior(A, x, y);
    if (std::abs(x - y) <= kCoincidenceTol) return 0.0;
    const auto [b, a] = chord(A, x, y);
    return clamp_zero(std::max(log_ratio(x, y, a), log_ratio(y, x, b)), cfg);
}

double part_harmonic_disk(Point2 x, Point2 y, int n_angles, const Config& cfg) {
    const Domain disk = Domain::unit_disk();
    require_interior(disk, x, y);
    if (n_angles < 1) throw DegenerateInput("need at least one angle");
    const double cx = std::log1p(-std::norm(x));  // log(1 - |x|^2)
    const double cy = std::log1p(-std::norm(y));
    double best = 0.0;
    for (int k = 0; k < n_angles; ++k) {
        const double frac = double(k) / double(n_angles);
        const Point2 zeta = std::polar(1.0, 2.0 * kPi * frac);
        const double lp = cx - cy + 2.0 * (std::log(std::abs(y - zeta)) - std::log(std::abs(x - zeta)));
        best = std::max(best, std::abs(lp));
    }
    return clamp_zero(best, cfg);
}

OracleResult apollonian_oracle(const Domain& A, Point2 x, Point2 y, int resolution,
                               const Config& cfg) {
    if (!A.eligible_for_apollonian())
        throw IneligibleDomain("domain must be bounded or have unbounded boundary");
    require_interior(A, x, y);
    if (resolution < 2) throw DegenerateInput("oracle resolution must be at least 2");

    OracleResult out;
    if (A.kind() == Domain::Kind::UpperHalfPlane) {
        double window = 8.0 * (std::abs(x) + std::abs(y) + 1.0);
        ScanBest best = scan_boundary_max(boundary_curve(A, window), x, y, resolution, cfg);
        for (int i = 0; i < cfg.max_window_doublings; ++i) {
            window *= 2.0;
            const ScanBest next = scan_boundary_max(boundary_curve(A, window), x, y, resolution, cfg);
            const double gain = next.value - best.value;
            if (next.value > best.value) best = next;
            if (gain < cfg.window_stall_tol) break;
        }
        // Unbounded boundary: the supremum is at least the limit value 0.
        out.value = std::max(0.0, best.value);
        out.argmax.point = best.point;
    } else {
        const ScanBest best = scan_boundary_max(boundary_curve(A), x, y, resolution, cfg);
        out.value = best.value;
        out.argmax.point = best.point;
    }
    out.value = clamp_zero(out.value, cfg);
    out.argmax.achieved = std::abs(x - out.argmax.point) / std::abs(y - out.argmax.point);
    out.argmax.kind = ExtremalBoundaryPoint::Kind::Max;
    return out;
}

double apollonian_disk(Point2 x, Point2 y, const Config& cfg) {
    const Domain disk = Domain::unit_disk();
    require_interior(disk, x, y);
    const double v = std::log((std::abs(x - y) + std::abs(x * std::conj(y) - 1.0)) /
                              std::abs(1.0 - std::norm(y)));
    return clamp_zero(v, cfg);
}

double apollonian_halfplane(Point2 x, Point2 y, const Config& cfg) {
    if (!(x.imag() > kBoundaryBuffer) || !(y.imag() > kBoundaryBuffer))
        throw PointOutsideDomain("points must lie in the open upper half-plane");
    const double v = std::log((std::abs(y - std::conj(x)) + std::abs(y - x)) / (2.0 * x.imag()));
    return std::max(0.0, clamp_zero(v, cfg));
}

double apollonian_halfplane_sup(Point2 x, Point2 y, const Config& cfg) {
    return apollonian_halfplane(y, x, cfg);
}

double apollonian(const Domain& A, Point2 x, Point2 y, const Config& cfg) {
    if (!A.eligible_for_apollonian())
        throw IneligibleDomain("domain must be bounded or have unbounded boundary");
    return directed_apollonian(A, x, y, cfg.oracle_resolution, cfg);
}

ExtremalPair extremal_points_disk(Point2 x, Point2 y) {
    if (std::abs(x - y) <= kCoincidenceTol)
        throw DegenerateInput("extremal points need two distinct points");
    const Complex diff = x - y;
    const Complex m = x * std::conj(y) - 1.0;
    const double ad = std::abs(diff);
    const double am = std::abs(m);
    const double denom = std::abs(std::norm(y) - 1.0);

    ExtremalPair out;
    out.max.point = (ad * m * y + diff * am) / (ad * m + diff * am * std::conj(y));
    out.max.achieved = (ad + am) / denom;
    out.max.kind = ExtremalBoundaryPoint::Kind::Max;
    out.min.point = (ad * m * y - diff * am) / (ad * m - diff * am * std::conj(y));
    out.min.achieved = std::abs(ad - am) / denom;
    out.min.kind = ExtremalBoundaryPoint::Kind::Min;
    return out;
}

CircleAffineExtrema circle_affine_extrema(Complex lambda, Complex mu) {
    const double amu = std::abs(mu);
    if (amu < kCoincidenceTol) throw DegenerateInput("mu must be nonzero");
    const double al = std::abs(lambda);
    CircleAffineExtrema out;
    out.zmax = amu / mu;
    out.vmax = al * (amu + 1.0);
    out.zmin = -amu / mu;
    out.vmin = al * std::abs(amu - 1.0);
    return out;
}

WeakMetricFn sigma_symmetrize(const WeakMetricFn& d) {
    return {"sigma(" + d.name + ")", d.domain,
            [inner = d.eval](Point2 x, Point2 y) { return std::max(inner(x, y), inner(y, x)); }};
}

WeakMetricFn s_symmetrize(const WeakMetricFn& d) {
    return {"S(" + d.name + ")", d.domain,
            [inner = d.eval](Point2 x, Point2 y) { return 0.5 * (inner(x, y) + inner(y, x)); }};
}

double half_apollonian(const Domain& A, Point2 x, Point2 y, int resolution, const Config& cfg) {
    if (!A.eligible_for_apollonian())
        throw IneligibleDomain("domain must be bounded or have unbounded boundary");
    require_interior(A, x, y);
    const double fwd = directed_apollonian(A, x, y, resolution, cfg);
    const double bwd = directed_apollonian(A, y, x, resolution, cfg);
    return clamp_zero(std::max(fwd, bwd), cfg);
}

double apollonian_semimetric(const Domain& A, Point2 x, Point2 y, int resolution, const Config& cfg) {
    if (!A.eligible_for_apollonian())
        throw IneligibleDomain("domain must be bounded or have unbounded boundary");
    require_interior(A, x, y);
    const double fwd = directed_apollonian(A, x, y, resolution, cfg);
    const double bwd = directed_apollonian(A, y, x, resolution, cfg);
    return clamp_zero(fwd + bwd, cfg);
}

double poincare_halfplane(Point2 x, Point2 y, const Config& cfg) {
    if (!(x.imag() > kBoundaryBuffer) || !(y.imag() > kBoundaryBuffer))
        throw PointOutsideDomain("points must lie in the open upper half-plane");
    const double sep = std::abs(x - std::conj(y));
    const double d = std::abs(x - y);
    return clamp_zero(0.5 * std::log((sep + d) / (sep - d)), cfg);
}

double poincare_disk(Point2 x, Point2 y, const Config& cfg) {
    const Domain disk = Domain::unit_disk();
    require_interior(disk, x, y);
    const double sep = std::abs(1.0 - x * std::conj(y));
    const double d = std::abs(x - y);
    return clamp_zero(0.5 * std::log((sep + d) / (sep - d)), cfg);
}

MobiusWitness mobius_invariance_witness(std::uint64_t seed, const Config& cfg) {
    std::mt19937_64 eng(seed);
    auto unit = [&eng]() { return double(eng() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 1000; ++trial) {
        const Point2 x = std::polar(0.9 * std::sqrt(unit()), 2.0 * kPi * unit());
        const Point2 y = std::polar(0.9 * std::sqrt(unit()), 2.0 * kPi * unit());
        if (std::abs(x - y) < 1e-3) continue;
        const Point2 c = std::polar(0.8 * std::sqrt(unit()), 2.0 * kPi * unit());
        const MobiusMap m = MobiusMap::disk_automorphism(c, 2.0 * kPi * unit());
        const ExtendedPoint mx = apply_mobius(m, x);
        const ExtendedPoint my = apply_mobius(m, y);
        if (mx.at_infinity || my.at_infinity) continue;
        const double defect =
            std::abs(apollonian_disk(x, y, cfg) - apollonian_disk(mx.value, my.value, cfg));
        if (defect > 0.1) return {x, y, m, defect};
    }
    throw SearchFailed("no Mobius non-invariance witness in 1000 trials");
}

WeakMetricFn make_metric(const std::string& name, const Domain& A, const Config& cfg) {
    WeakMetricFn fn{name, A, {}};

    auto need_disk = [&] {
        if (A.kind() != Domain::Kind::UnitDisk)
            throw UnboundedDomain(name + " is implemented on the unit disk only");
    };
    auto need_eligible = [&] {
        if (!A.eligible_for_apollonian())
            throw IneligibleDomain(name + " needs a bounded domain or an unbounded boundary");
    };

    if (name == "i") {
        fn.eval = [A, cfg](Point2 x, Point2 y) { return i_weak(A, x, y, cfg); };
    } else if (name == "jtilde") {
        fn.eval = [A, cfg](Point2 x, Point2 y) { return j_tilde(A, x, y, cfg); };
    } else if (name == "j") {
        fn.eval = [A, cfg](Point2 x, Point2 y) { return j_vuorinen(A, x, y, cfg); };
    } else if (name == "funk") {
        require_bounded_convex(A);
        fn.eval = [A, cfg](Point2 x, Point2 y) { return funk(A, x, y, cfg); };
    } else if (name == "hilbert") {
        require_bounded_convex(A);
        fn.eval = [A, cfg](Point2 x, Point2 y) { return hilbert(A, x, y, cfg); };
    } else if (name == "part_affine") {
        require_bounded_convex(A);
        fn.eval = [A, cfg](Point2 x, Point2 y) { return part_affine(A, x, y, cfg); };
    } else if (name == "part_harmonic") {
        need_disk();
        fn.eval = [cfg](Point2 x, Point2 y) { return part_harmonic_disk(x, y, cfg.oracle_resolution, cfg); };
    } else if (name == "apollonian") {
        need_eligible();
        fn.eval = [A, cfg](Point2 x, Point2 y) { return apollonian(A, x, y, cfg); };
    } else if (name == "apollonian_oracle") {
        need_eligible();
        fn.eval = [A, cfg](Point2 x, Point2 y) {
            return apollonian_oracle(A, x, y, cfg.oracle_resolution, cfg).value;
        };
    } else if (name == "half_apollonian" || name == "eta") {
        need_eligible();
        fn.eval = [A, cfg](Point2 x, Point2 y) {
            return half_apollonian(A, x, y, cfg.oracle_resolution, cfg);
        };
    } else if (name == "apollonian_semimetric" || name == "alpha") {
        need_eligible();
        fn.eval = [A, cfg](Point2 x, Point2 y) {
            return apollonian_semimetric(A, x, y, cfg.oracle_resolution, cfg);
        };
    } else if (name == "poincare") {
        if (A.kind() == Domain::Kind::UnitDisk)
            fn.eval = [cfg](Point2 x, Point2 y) { return poincare_disk(x, y, cfg); };
        else if (A.kind() == Domain::Kind::UpperHalfPlane)
            fn.eval = [cfg](Point2 x, Point2 y) { return poincare_halfplane(x, y, cfg); };
        else
            throw UnboundedDomain("poincare is implemented on the disk and the half-plane");
    } else {
        throw DegenerateInput("unknown metric: " + name);
    }
    return fn;
}

} // namespace apomet
