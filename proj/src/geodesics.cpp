#include "apomet/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace apomet {

namespace {

constexpr double kPi = std::numbers::pi;

double log_ratio(Point2 x, Point2 y, Point2 a) {
    return std::log(std::abs(x - a)) - std::log(std::abs(y - a));
}

double directed_apollonian(const Domain& A, Point2 x, Point2 y, int resolution, const Config& cfg) {
    switch (A.kind()) {
        case Domain::Kind::UnitDisk: return apollonian_disk(x, y, cfg);
        case Domain::Kind::UpperHalfPlane: return apollonian_halfplane(x, y, cfg);
        default: return apollonian_oracle(A, x, y, resolution, cfg).value;
    }
}

// Angle of z about the support circle center, measured from the center
// direction, wrapped into (0, 2*pi). Interior points of the disk land in
// (chi, 2*pi - chi) where cos(chi) = -r/|c|.
double arc_angle(const GeneralizedCircle& support, Point2 z) {
    const double raw = std::arg(z - support.center) - std::arg(support.center);
    double u = std::fmod(raw, 2.0 * kPi);
    if (u <= 0.0) u += 2.0 * kPi;
    return u;
}

Point2 arc_point(const GeneralizedCircle& support, double u) {
    return support.center + support.radius * std::polar(1.0, std::arg(support.center) + u);
}

} // namespace

AlignedVerdict aligned(const WeakMetricFn& d, Point2 x, Point2 y, Point2 z, double tol) {
    AlignedVerdict v;
    v.lhs = d(x, z);
    v.rhs = d(x, y) + d(y, z);
    v.defect = v.rhs - v.lhs;
    v.aligned = std::abs(v.defect) <= tol;
    return v;
}

ArgmaxSet argmax_set(const Domain& A, Point2 x, Point2 y, int resolution, double cluster_tol,
                     const Config& cfg) {
    if (!A.eligible_for_apollonian())
        throw IneligibleDomain("argmax set needs a bounded domain or an unbounded boundary");
    if (std::abs(x - y) <= kCoincidenceTol)
        throw DegenerateInput("argmax set needs two distinct points");

    const OracleResult oracle = apollonian_oracle(A, x, y, resolution, cfg);
    ArgmaxSet out;
    out.value = oracle.value;

    // Half-plane supremum approached at infinity: no maximizer exists.
    if (A.kind() == Domain::Kind::UpperHalfPlane &&
        oracle.value == 0.0 && log_ratio(x, y, oracle.argmax.point) < -cfg.zero_clamp)
        return out;

    const double window = 8.0 * (std::abs(x) + std::abs(y) + 1.0);
    const BoundarySample grid = sample_boundary(
        A, resolution, A.kind() == Domain::Kind::UpperHalfPlane ? window : 1.0);
    const int n = static_cast<int>(grid.points.size());

    // Collect candidate samples with a generous slack first: at resolution n
    // the best sample of a basin can sit ~step^2 in value below the refined
    // supremum, so a tight cluster_tol must be applied to refined values, not
    // raw samples.
    const double collect_tol = std::max(cluster_tol, 1e-3);
    std::vector<int> qual;
    for (int k = 0; k < n; ++k)
        if (log_ratio(x, y, grid.points[k]) >= oracle.value - collect_tol) qual.push_back(k);

    // Group qualifying samples separated by at most 2 steps; one analytic
    // maximizer can straddle two samples.
    std::vector<std::pair<int, int>> groups;  // [first, last] sample index ranges
    for (int idx : qual) {
        if (!groups.empty() && idx - groups.back().second <= 2)
            groups.back().second = idx;
        else
            groups.emplace_back(idx, idx);
    }
    if (grid.closed && groups.size() > 1 && qual.front() + n - qual.back() <= 2) {
        groups.front().first = groups.back().first - n;
        groups.pop_back();
    }

    struct Rep {
        double value;
        double t;
    };
    const BoundaryCurve curve = boundary_curve(
        A, A.kind() == Domain::Kind::UpperHalfPlane ? window : 1.0);
    const double total = curve.t_hi - curve.t_lo;
    const double step = grid.closed ? total / n : total / (n - 1);

    std::vector<Rep> reps;
    for (const auto& [first, last] : groups) {
        int best = first;
        double best_val = -std::numeric_limits<double>::infinity();
        for (int idx = first; idx <= last; ++idx) {
            const int wrapped = (idx % n + n) % n;
            const double v = log_ratio(x, y, grid.points[wrapped]);
            if (v > best_val) {
                best_val = v;
                best = idx;  // unwrapped; curve.at wraps the parameter itself
            }
        }
        double lo = curve.t_lo + step * best - step;
        double hi = curve.t_lo + step * best + step;
        if (!grid.closed) {
            lo = std::max(lo, curve.t_lo);
            hi = std::min(hi, curve.t_hi);
        }
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
        reps.push_back({log_ratio(x, y, curve.at(t)), t});
        if (reps.size() >= 32) break;
    }

    double best_value = oracle.value;
    for (const Rep& r : reps) best_value = std::max(best_value, r.value);
    out.value = best_value;
    for (const Rep& r : reps)
        if (r.value >= best_value - cluster_tol) out.points.push_back(curve.at(r.t));
    if (out.points.empty()) out.points.push_back(oracle.argmax.point);
    return out;
}

std::optional<Point2> common_witness(const Domain& A, Point2 x, Point2 y, Point2 z, double tol,
                                     const Config& cfg) {
    if (!A.bounded()) throw IneligibleDomain("common witness needs a bounded domain");

    const int res = cfg.oracle_resolution;
    const double dxy = directed_apollonian(A, x, y, res, cfg);
    const double dyz = directed_apollonian(A, y, z, res, cfg);
    const double dxz = directed_apollonian(A, x, z, res, cfg);
    if (std::abs(dxy + dyz - dxz) > tol) return std::nullopt;

    const double slack = 10.0 * tol;
    auto realizes_all = [&](Point2 a) {
        return std::abs(log_ratio(x, y, a) - dxy) <= slack &&
               std::abs(log_ratio(y, z, a) - dyz) <= slack &&
               std::abs(log_ratio(x, z, a) - dxz) <= slack;
    };

    const double cluster_tol = std::max(cfg.cluster_tol, slack);
    for (const Point2& a : argmax_set(A, x, z, res, cluster_tol, cfg).points)
        if (realizes_all(a)) return a;
    for (const Point2& a : argmax_set(A, x, y, res, cluster_tol, cfg).points)
        if (realizes_all(a)) return a;
    return std::nullopt;
}

GeodesicArc geodesic_arc_disk(Point2 x, Point2 y) {
    if (std::abs(x - y) <= kCoincidenceTol)
        throw DegenerateInput("geodesic arc needs two distinct points");
    const Domain disk = Domain::unit_disk();
    if (!disk.contains(x) || !disk.contains(y))
        throw PointOutsideDomain("geodesic arc endpoints must lie inside the unit disk");

    GeodesicArc arc;
    arc.from = x;
    arc.through = y;

    // Collinear with the origin (including y = 0): diameter line. The support
    // through x, y, 1/conj(y) passes through infinity in that case.
    const double max_sq = std::max({std::norm(x), std::norm(y), std::norm(x - y)});
    if (0.5 * std::abs(cross(x, y)) < kCollinearityTol * max_sq) {
        arc.support = GeneralizedCircle::make_line(Point2{0.0, 0.0}, (y - x) / std::abs(y - x));
        arc.orientation = 1;
        return arc;
    }

    // Circle orthogonal to S^1 through x and y: 2 Re(conj(c) x) = |x|^2 + 1
    // and likewise for y, which also forces it through 1/conj(y).
    const double det = 4.0 * cross(x, y);
    const double bx = std::norm(x) + 1.0;
    const double by = std::norm(y) + 1.0;
    const double cx = (bx * 2.0 * y.imag() - by * 2.0 * x.imag()) / det;
    const double cy = (2.0 * x.real() * by - 2.0 * y.real() * bx) / det;
    const Point2 center{cx, cy};
    const double radius = std::sqrt(std::norm(center) - 1.0);
    arc.support = GeneralizedCircle::make_circle(center, radius);
    arc.orientation = arc_angle(arc.support, y) > arc_angle(arc.support, x) ? 1 : -1;
    return arc;
}

Point2 arc_boundary_exit(const GeodesicArc& arc) {
    if (arc.support.is_line()) {
        const double tx = dot(arc.from, arc.support.direction);
        const double ty = dot(arc.through, arc.support.direction);
        return (ty > tx ? 1.0 : -1.0) * arc.support.direction;
    }
    const double chi = std::acos(-arc.support.radius / std::abs(arc.support.center));
    const double u_exit = arc.orientation > 0 ? 2.0 * kPi - chi : chi;
    return arc_point(arc.support, u_exit);
}

std::vector<Point2> sample_arc(const GeodesicArc& arc, int k) {
    if (k < 2) throw DegenerateInput("need at least 2 arc samples");
    const double margin = std::min({1e-6, 0.5 * (1.0 - std::abs(arc.from)),
                                    0.5 * (1.0 - std::abs(arc.through))});
    std::vector<Point2> out;
    out.reserve(static_cast<std::size_t>(k));

    if (arc.support.is_line()) {
        const Point2 dir = arc.support.direction;
        const double t0 = dot(arc.from, dir);
        const double t1 = dot(arc.through, dir);
        const double t_end = (t1 > t0 ? 1.0 : -1.0) * (1.0 - margin);
        out.push_back(arc.from);
        for (int i = 1; i < k; ++i)
            out.push_back((t0 + (t_end - t0) * double(i) / double(k - 1)) * dir);
        return out;
    }

    const double u_from = arc_angle(arc.support, arc.from);
    const double u_through = arc_angle(arc.support, arc.through);
    const double chi = std::acos(-arc.support.radius / std::abs(arc.support.center));
    const double u_exit = arc.orientation > 0 ? 2.0 * kPi - chi : chi;

    // |gamma(u)| grows monotonically from u = pi toward either end of the
    // inside arc, so bisection on u locates the clamped endpoint.
    double lo = u_through;
    double hi = u_exit;
    for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (std::abs(arc_point(arc.support, mid)) < 1.0 - margin)
            lo = mid;
        else
            hi = mid;
    }
    const double u_end = lo;
    out.push_back(arc.from);
    for (int i = 1; i < k; ++i)
        out.push_back(arc_point(arc.support, u_from + (u_end - u_from) * double(i) / double(k - 1)));
    return out;
}

GeodesicReport verify_geodesic(const std::vector<Point2>& path, const WeakMetricFn& d, double tol) {
    GeodesicReport report;
    const std::size_t n = path.size();
    if (n < 3) throw DegenerateInput("geodesic verification needs at least 3 points");

    auto record = [&](std::size_t i, std::size_t j, std::size_t k) {
        const AlignedVerdict v = aligned(d, path[i], path[j], path[k], tol);
        ++report.triples_checked;
        if (std::abs(v.defect) > report.max_abs_defect) {
            report.max_abs_defect = std::abs(v.defect);
            report.worst_triple = {i, j, k};
        }
        if (!v.aligned) report.all_aligned = false;
    };

    const std::size_t total = n * (n - 1) * (n - 2) / 6;
    if (total <= 1000) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k) record(i, j, k);
    } else {
        std::mt19937_64 eng(0x5eed5eedULL + n);
        auto pick = [&](std::size_t bound) { return static_cast<std::size_t>(eng() % bound); };
        for (int t = 0; t < 1000; ++t) {
            std::size_t i = pick(n), j = pick(n), k = pick(n);
            if (i == j || j == k || i == k) {
                --t;
                continue;
            }
            if (i > j) std::swap(i, j);
            if (j > k) std::swap(j, k);
            if (i > j) std::swap(i, j);
            record(i, j, k);
        }
    }
    return report;
}

} // namespace apomet
