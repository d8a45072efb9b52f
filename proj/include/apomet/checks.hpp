#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "apomet/geodesics.hpp"

namespace apomet::checks {

/// Everything a seeded run needs; the seed fully determines inputs and outputs.
struct RunConfig {
    std::uint64_t seed = 1;
    Config tolerances;
};

struct CheckResult {
    std::string id;
    bool pass = true;
    double worst = 0.0;      // worst observed error or defect
    double threshold = 0.0;
    std::string detail;
};

/// Deterministic generator: uniforms are derived from raw engine output so
/// results do not depend on the standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double unit() { return double(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    std::uint64_t bits() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

Point2 random_in_disk(Rng& rng, double rmax);
Point2 random_in_halfplane(Rng& rng, double spread);

/// Strictly convex polygon: sorted angles with bounded gaps, mild radius
/// jitter, then a random similarity for scale and position variety.
Domain random_convex_polygon(Rng& rng);

/// Interior point with boundary distance at least margin_frac of the polygon scale.
Point2 random_in_polygon(Rng& rng, const Domain& polygon, double margin_frac);

Similarity random_similarity(Rng& rng, bool allow_reflection = true);

/// Suite names accepted by run_suite: axioms, identities, extremals,
/// geodesics, separation, invariance, all.
std::vector<std::string> suite_names();
std::vector<CheckResult> run_suite(const std::string& name, const RunConfig& cfg);

/// The full acceptance battery in canonical order.
std::vector<CheckResult> acceptance(const RunConfig& cfg);

struct CompareReport {
    std::vector<double> errors;
    double max_error = 0.0;
};

/// Per-pair |closed form - boundary-supremum oracle| on the unit disk or the
/// upper half-plane.
CompareReport compare_closed_vs_oracle(const Domain& A, int pairs, const RunConfig& cfg);

} // namespace apomet::checks
