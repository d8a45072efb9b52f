#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "apomet/checks.hpp"
#include "apomet/geodesics.hpp"
#include "apomet/metrics.hpp"

namespace {

using namespace apomet;

// Exit codes: 0 success, 1 property failure, 2 usage or domain mismatch,
// 3 malformed input.
constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;

struct ParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Point2 parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ParseFailure("expected 'x,y', got '" + text + "'");
    try {
        std::size_t used = 0;
        const double re = std::stod(text.substr(0, comma), &used);
        if (used != comma) throw ParseFailure("trailing characters in '" + text + "'");
        const std::string rest = text.substr(comma + 1);
        const double im = std::stod(rest, &used);
        if (used != rest.size()) throw ParseFailure("trailing characters in '" + text + "'");
        return {re, im};
    } catch (const std::invalid_argument&) {
        throw ParseFailure("could not parse point '" + text + "'");
    } catch (const std::out_of_range&) {
        throw ParseFailure("point coordinate out of range in '" + text + "'");
    }
}

Domain resolve_domain(const std::string& name, const std::string& file) {
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw ParseFailure("cannot open domain file " + file);
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            return Domain::from_json(buf.str());
        } catch (const nlohmann::json::exception& e) {
            throw ParseFailure(std::string("bad domain JSON: ") + e.what());
        }
    }
    if (name == "unit_disk") return Domain::unit_disk();
    if (name == "upper_half_plane") return Domain::upper_half_plane();
    throw UnboundedDomain("unknown domain '" + name + "' (use --domain-file for polygons and samples)");
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

nlohmann::json point_json(Point2 p) { return {p.real(), p.imag()}; }

int cmd_dist(const std::string& metric, const Domain& domain, Point2 x, Point2 y,
             const Config& cfg, const std::string& format) {
    const WeakMetricFn fn = make_metric(metric, domain, cfg);
    const DirectedDistance result{x, y, fn(x, y)};

    std::optional<ExtremalBoundaryPoint> extremal;
    if (metric == "apollonian" && domain.kind() == Domain::Kind::UnitDisk &&
        std::abs(x - y) > kCoincidenceTol)
        extremal = extremal_points_disk(x, y).max;
    else if (metric == "apollonian_oracle" ||
             (metric == "apollonian" && domain.kind() != Domain::Kind::UnitDisk &&
              domain.kind() != Domain::Kind::UpperHalfPlane))
        extremal = apollonian_oracle(domain, x, y, cfg.oracle_resolution, cfg).argmax;

    if (format == "json") {
        nlohmann::json j;
        j["metric"] = metric;
        j["domain"] = domain.name();
        j["from"] = point_json(result.from);
        j["to"] = point_json(result.to);
        j["value"] = result.value;
        if (extremal) {
            j["extremal_point"] = point_json(extremal->point);
            j["achieved_ratio"] = extremal->achieved;
        }
        std::printf("%s\n", j.dump().c_str());
    } else {
        std::printf("%s\n", format_value(result.value).c_str());
        if (extremal)
            std::printf("extremal boundary point (%s, %s), ratio %s\n",
                        format_value(extremal->point.real()).c_str(),
                        format_value(extremal->point.imag()).c_str(),
                        format_value(extremal->achieved).c_str());
    }
    return kExitOk;
}

int cmd_compare(const Domain& domain, int pairs, const checks::RunConfig& rc,
                const std::string& format) {
    const checks::CompareReport rep = checks::compare_closed_vs_oracle(domain, pairs, rc);
    const double bound = 1e-8;
    if (format == "json") {
        nlohmann::json j;
        j["domain"] = domain.name();
        j["pairs"] = pairs;
        j["seed"] = rc.seed;
        j["errors"] = rep.errors;
        j["max_error"] = rep.max_error;
        j["bound"] = bound;
        j["pass"] = rep.max_error <= bound;
        std::printf("%s\n", j.dump().c_str());
    } else if (format == "csv") {
        std::printf("case_id,input,expected,actual,abs_error,pass\n");
        for (std::size_t i = 0; i < rep.errors.size(); ++i)
            std::printf("pair_%zu,seed=%llu,<=%.1e,%.17g,%.17g,%d\n", i,
                        static_cast<unsigned long long>(rc.seed), bound, rep.errors[i],
                        rep.errors[i], rep.errors[i] <= bound);
    } else {
        for (std::size_t i = 0; i < rep.errors.size(); ++i)
            std::printf("pair %zu  abs_error %.3e\n", i, rep.errors[i]);
        std::printf("max_error %.3e (bound %.1e)\n", rep.max_error, bound);
    }
    return rep.max_error <= bound ? kExitOk : kExitPropertyFailure;
}

std::string svg_document(const std::vector<Point2>& path, const GeodesicArc& arc) {
    std::string d;
    for (std::size_t i = 0; i < path.size(); ++i) {
        char seg[96];
        std::snprintf(seg, sizeof(seg), "%c %.8f %.8f ", i == 0 ? 'M' : 'L', path[i].real(),
                      path[i].imag());
        d += seg;
    }
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.15 -1.15 2.3 2.3\" "
           "width=\"480\" height=\"480\">\n";
    out += "  <g transform=\"scale(1,-1)\">\n";
    out += "    <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#888\" "
           "stroke-width=\"0.01\"/>\n";
    out += "    <path d=\"" + d + "\" fill=\"none\" stroke=\"#c03\" stroke-width=\"0.012\"/>\n";
    char dot[160];
    std::snprintf(dot, sizeof(dot),
                  "    <circle cx=\"%.8f\" cy=\"%.8f\" r=\"0.02\" fill=\"#03c\"/>\n",
                  arc.from.real(), arc.from.imag());
    out += dot;
    std::snprintf(dot, sizeof(dot),
                  "    <circle cx=\"%.8f\" cy=\"%.8f\" r=\"0.02\" fill=\"#0a3\"/>\n",
                  arc.through.real(), arc.through.imag());
    out += dot;
    out += "  </g>\n</svg>\n";
    return out;
}

int cmd_geodesic(Point2 x, Point2 y, int k, const Config& cfg, const std::string& svg_path) {
    const Domain disk = Domain::unit_disk();
    const GeodesicArc arc = geodesic_arc_disk(x, y);
    const std::vector<Point2> path = sample_arc(arc, k);
    const WeakMetricFn delta{"apollonian", disk,
                             [cfg](Point2 a, Point2 b) { return apollonian_disk(a, b, cfg); }};
    const GeodesicReport forward = verify_geodesic(path, delta, cfg.align_tol);
    std::vector<Point2> reversed(path.rbegin(), path.rend());
    const GeodesicReport backward = verify_geodesic(reversed, delta, cfg.align_tol);

    nlohmann::json j;
    nlohmann::json pts = nlohmann::json::array();
    for (const Point2& p : path) pts.push_back(point_json(p));
    j["points"] = std::move(pts);
    nlohmann::json meta;
    meta["domain"] = "unit_disk";
    meta["metric"] = "apollonian";
    meta["defect_max"] = forward.max_abs_defect;
    meta["aligned"] = forward.all_aligned;
    meta["boundary_exit"] = point_json(arc_boundary_exit(arc));
    if (arc.support.is_circle()) {
        meta["support"] = {{"kind", "circle"},
                           {"center", point_json(arc.support.center)},
                           {"radius", arc.support.radius},
                           {"orthogonality_defect",
                            std::abs(std::norm(arc.support.center) -
                                     arc.support.radius * arc.support.radius - 1.0)}};
    } else {
        meta["support"] = {{"kind", "line"},
                           {"point", point_json(arc.support.point)},
                           {"direction", point_json(arc.support.direction)}};
    }
    // The same arc traversed backwards carries no geodesic claim; its defect
    // is reported for inspection only.
    meta["reversed_defect_max_informational"] = backward.max_abs_defect;
    j["metadata"] = std::move(meta);
    std::printf("%s\n", j.dump(2).c_str());

    if (!svg_path.empty()) {
        std::ofstream out(svg_path);
        if (!out) throw ParseFailure("cannot write SVG to " + svg_path);
        out << svg_document(path, arc);
    }
    return kExitOk;
}

int cmd_check(const std::string& suite, const checks::RunConfig& rc, const std::string& format) {
    const std::vector<checks::CheckResult> results = checks::run_suite(suite, rc);
    bool all_pass = true;
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : results) {
            arr.push_back({{"id", r.id},
                           {"pass", r.pass},
                           {"worst", r.worst},
                           {"threshold", r.threshold},
                           {"detail", r.detail}});
            all_pass = all_pass && r.pass;
        }
        std::printf("%s\n", arr.dump(2).c_str());
    } else if (format == "csv") {
        std::printf("case_id,input,expected,actual,abs_error,pass\n");
        for (const auto& r : results) {
            std::printf("%s,seed=%llu,<=%.3e,%.17g,%.17g,%d\n", r.id.c_str(),
                        static_cast<unsigned long long>(rc.seed), r.threshold, r.worst, r.worst,
                        int(r.pass));
            all_pass = all_pass && r.pass;
        }
    } else {
        for (const auto& r : results) {
            std::printf("%s %s worst=%.3e threshold=%.3e | %s\n", r.pass ? "PASS" : "FAIL",
                        r.id.c_str(), r.worst, r.threshold, r.detail.c_str());
            all_pass = all_pass && r.pass;
        }
    }
    return all_pass ? kExitOk : kExitPropertyFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weak metrics on planar domains: directed distances, boundary-supremum "
                 "oracles, and disk geodesics"};
    app.require_subcommand(1);

    std::string domain_name = "unit_disk";
    std::string domain_file;
    std::string format = "plain";
    std::uint64_t seed = 1;
    int resolution = 4096;
    double tol = 1e-9;

    auto add_common = [&](CLI::App* sub, bool with_domain) {
        if (with_domain) {
            sub->add_option("--domain", domain_name, "unit_disk or upper_half_plane");
            sub->add_option("--domain-file", domain_file, "JSON file describing the domain");
        }
        sub->add_option("--seed", seed, "seed for randomized runs");
        sub->add_option("--resolution", resolution, "boundary samples for the oracle");
        sub->add_option("--tol", tol, "alignment tolerance for geodesic checks");
        sub->add_option("--format", format, "plain, json or csv");
    };

    auto* dist = app.add_subcommand("dist", "evaluate one metric at a point pair");
    std::string metric_name;
    std::string x_text, y_text;
    dist->add_option("metric", metric_name,
                     "i, jtilde, j, funk, hilbert, part_affine, part_harmonic, apollonian, "
                     "apollonian_oracle, half_apollonian, apollonian_semimetric, poincare")
        ->required();
    dist->add_option("x", x_text, "first point as x,y")->required();
    dist->add_option("y", y_text, "second point as x,y")->required();
    add_common(dist, true);

    auto* compare = app.add_subcommand("compare", "closed form vs boundary-supremum oracle");
    int pairs = 500;
    compare->add_option("--pairs", pairs, "number of seeded pairs");
    add_common(compare, true);

    auto* geodesic = app.add_subcommand("geodesic", "trace a disk geodesic arc");
    std::string gx_text, gy_text, svg_path;
    int arc_samples = 8;
    geodesic->add_option("x", gx_text, "start point as x,y")->required();
    geodesic->add_option("y", gy_text, "through point as x,y")->required();
    geodesic->add_option("--k", arc_samples, "number of arc samples");
    geodesic->add_option("--svg", svg_path, "write an SVG rendering here");
    add_common(geodesic, false);

    auto* check = app.add_subcommand("check", "run a seeded property suite");
    std::string suite;
    check
        ->add_option("suite", suite,
                     "axioms, identities, extremals, geodesics, separation, invariance, all")
        ->required();
    add_common(check, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitUsage;
    }

    Config cfg;
    cfg.oracle_resolution = resolution;
    cfg.align_tol = tol;
    checks::RunConfig rc;
    rc.seed = seed;
    rc.tolerances = cfg;

    try {
        if (*dist) {
            const Domain domain = resolve_domain(domain_name, domain_file);
            return cmd_dist(metric_name, domain, parse_point(x_text), parse_point(y_text), cfg,
                            format);
        }
        if (*compare) {
            const Domain domain = resolve_domain(domain_name, domain_file);
            return cmd_compare(domain, pairs, rc, format);
        }
        if (*geodesic)
            return cmd_geodesic(parse_point(gx_text), parse_point(gy_text), arc_samples, cfg,
                                svg_path);
        if (*check) return cmd_check(suite, rc, format);
    } catch (const ParseFailure& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitParse;
    } catch (const PointOutsideDomain& e) {
        std::fprintf(stderr, "domain mismatch: %s\n", e.what());
        return kExitUsage;
    } catch (const UnboundedDomain& e) {
        std::fprintf(stderr, "domain mismatch: %s\n", e.what());
        return kExitUsage;
    } catch (const IneligibleDomain& e) {
        std::fprintf(stderr, "domain mismatch: %s\n", e.what());
        return kExitUsage;
    } catch (const DegenerateInput& e) {
        std::fprintf(stderr, "domain mismatch: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
