// Command-line front end for the Heisenberg convex-analysis library.
//
// Exit codes: 0 = pass/success, 1 = mathematical fail (witness in output),
// 2 = usage or parse error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "heis/convexity.hpp"
#include "heis/mongeampere.hpp"
#include "heis/region.hpp"
#include "heis/rockafellar.hpp"
#include "heis/subdiff.hpp"

using json = nlohmann::ordered_json;
using namespace heis;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitMathFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Point parse_point(const std::string& s) {
    Point g;
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> g.x >> c1 >> g.y >> c2 >> g.t) || c1 != ',' || c2 != ',')
        throw UsageError("expected point as x,y,t: '" + s + "'");
    return g;
}

HVector parse_hvector(const std::string& s) {
    HVector p;
    char c = 0;
    std::istringstream is(s);
    if (!(is >> p.a >> c >> p.b) || c != ',')
        throw UsageError("expected horizontal vector as a,b: '" + s + "'");
    return p;
}

Box parse_box(const std::string& s) {
    Box b;
    char d[8];
    std::istringstream is(s);
    if (!(is >> b.x0 >> d[0] >> b.x1 >> d[1] >> b.y0 >> d[2] >> b.y1 >> d[3] >> b.t0 >> d[4] >>
          b.t1) ||
        d[0] != ':' || d[1] != ',' || d[2] != ':' || d[3] != ',' || d[4] != ':')
        throw UsageError("expected box as x0:x1,y0:y1,t0:t1: '" + s + "'");
    if (b.x0 > b.x1 || b.y0 > b.y1 || b.t0 > b.t1) throw UsageError("degenerate box: '" + s + "'");
    return b;
}

// CSV numbers: shortest round-trip form for doubles, plain decimal for ints.
template <class T>
std::string num(T v) {
    if constexpr (std::is_integral_v<T>) {
        return std::to_string(v);
    } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(v));
        return buf;
    }
}

const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

json point_json(const Point& g) { return json{{"x", g.x}, {"y", g.y}, {"t", g.t}}; }

struct Output {
    std::string format = "json";  // json | csv
    std::string path;             // empty = stdout

    void emit(const json& doc, const std::string& csv) const {
        std::ostream* os = &std::cout;
        std::ofstream file;
        if (!path.empty()) {
            file.open(path);
            if (!file) throw UsageError("cannot open output file: " + path);
            os = &file;
        }
        if (format == "csv") {
            *os << csv;
        } else {
            *os << doc.dump(2) << "\n";
        }
    }
};

int status_exit(Status s) { return s == Status::Fail ? kExitMathFail : kExitPass; }

// ---------------------------------------------------------------------------

int run_convexity(const std::string& mode, const std::string& field_src,
                  const std::string& z_src, const Box& box, int grid, int samples,
                  uint64_t seed, const Output& out) {
    json doc{{"schema_version", 1}, {"command", "convexity"}, {"mode", mode}};
    std::string csv;
    Status status = Status::Pass;

    if (mode == "radial") {
        if (z_src.empty()) throw UsageError("convexity --mode radial needs --radial-z");
        RadialField z(z_src);
        const RadialVerdict v = radial_criterion(z, box.t0, box.t1, grid);
        status = v.status;
        doc["status"] = status_name(status);
        doc["worst_margin"] = v.worst_margin;
        csv = "t,margin\n";
        json margins = json::array();
        for (size_t i = 0; i < v.t_grid.size(); ++i) {
            csv += num(v.t_grid[i]) + "," + num(v.margin[i]) + "\n";
            margins.push_back(json{{"t", v.t_grid[i]}, {"margin", v.margin[i]}});
        }
        doc["margins"] = std::move(margins);
    } else {
        if (field_src.empty()) throw UsageError("convexity needs --field");
        const Field u = Field::from_source(field_src);
        const Region R{box, grid};
        ConvexityVerdict v;
        if (mode == "hessian") {
            v = check_convex_hessian(u, R);
        } else if (mode == "segments") {
            v = check_convex_segments(u, R, samples, seed);
        } else {
            throw UsageError("unknown convexity mode: " + mode);
        }
        status = v.status;
        doc["status"] = status_name(status);
        doc["worst_margin"] = v.worst_margin;
        doc["skipped_singular_points"] = v.skipped;
        if (v.hessian_witness) doc["witness"] = point_json(*v.hessian_witness);
        if (v.segment_witness) {
            doc["witness"] = json{{"g", point_json(v.segment_witness->g)},
                                  {"g2", point_json(v.segment_witness->g2)},
                                  {"lambda", v.segment_witness->lambda},
                                  {"violation", v.segment_witness->violation}};
        }
        csv = "status,worst_margin\n" + std::string(status_name(status)) + "," +
              num(v.worst_margin) + "\n";
    }
    out.emit(doc, csv);
    return status_exit(status);
}

int run_subdiff(const std::string& mode, const std::string& field_src, const Point& at,
                const HVector& p, const Box& box, int dirs, int samples, uint64_t seed,
                const Output& out) {
    if (field_src.empty()) throw UsageError("subdiff needs --field");
    const Field u = Field::from_source(field_src);
    json doc{{"schema_version", 1}, {"command", "subdiff"}, {"mode", mode}};
    std::string csv;
    int exit_code = kExitPass;

    if (mode == "verify") {
        const SubgradientCheck r = verify_subgradient(u, at, p, Region{box, 11}, samples, seed);
        doc["status"] = r.ok ? "pass" : "fail";
        doc["worst_margin"] = r.worst_margin;
        doc["witness"] = point_json(r.witness);
        csv = "status,worst_margin\n" + std::string(r.ok ? "pass" : "fail") + "," +
              num(r.worst_margin) + "\n";
        exit_code = r.ok ? kExitPass : kExitMathFail;
    } else if (mode == "reconstruct") {
        const SubgradientSet s = reconstruct_subdifferential(u, at, dirs);
        doc["kind"] = s.kind == SetKind::Polygon ? "polygon"
                      : s.kind == SetKind::Segment ? "segment"
                                                   : "singleton";
        doc["area"] = s.area;
        doc["diameter"] = s.diameter();
        json verts = json::array();
        csv = "theta,p1,p2\n";
        for (const auto& v : s.vertices) {
            verts.push_back(json{{"p1", v.a}, {"p2", v.b}});
            csv += num(std::atan2(v.b, v.a)) + "," + num(v.a) + "," +
                   num(v.b) + "\n";
        }
        doc["vertices"] = std::move(verts);
    } else {
        throw UsageError("unknown subdiff mode: " + mode);
    }
    out.emit(doc, csv);
    return exit_code;
}

int run_normalmap(const std::string& mode, const std::string& z_src,
                  const std::string& profile_src, const std::string& profile2_src, double t,
                  double R, int nr, const Box& box, int grid, const Output& out) {
    json doc{{"schema_version", 1}, {"command", "normalmap"}, {"mode", mode}};
    std::string csv;
    Status status = Status::Pass;

    auto make_profile = [&](const std::string& src) {
        if (!src.empty()) return RadialProfile::from_source(src);
        if (z_src.empty()) throw UsageError("normalmap needs --radial-z or --profile");
        return RadialField(z_src).profile();
    };

    if (mode == "circle") {
        const double rp = radial_circle_image(make_profile(profile_src), t, R);
        doc["radius"] = rp;
        csv = "t,R,radius\n" + num(t) + "," + num(R) + "," +
              num(rp) + "\n";
    } else if (mode == "disc") {
        const RadialProfile prof = make_profile(profile_src);
        const DiscImage d = disc_image_radius(prof, t, R, nr);
        doc["radius"] = d.radius;
        doc["attained_at_boundary"] = d.attained_at_boundary;
        csv = "r,circle_radius\n";
        for (int i = 0; i < nr; ++i) {
            const double r = R * i / nr;
            csv += num(r) + "," + num(radial_circle_image(prof, t, r)) +
                   "\n";
        }
    } else if (mode == "monotonicity") {
        MonotonicityReport rep;
        if (!z_src.empty()) {
            rep = monotonicity_condition(RadialField(z_src), Region{box, grid});
            doc["worst_zform"] = rep.worst_zform;
        } else {
            const auto r_grid = linspace(std::max(0.0, box.x0), box.x1, grid);
            const auto t_grid = linspace(box.t0, box.t1, grid);
            rep = monotonicity_condition(make_profile(profile_src), r_grid, t_grid);
        }
        status = rep.status;
        doc["status"] = status_name(status);
        doc["worst_vform"] = rep.worst_vform;
        if (status == Status::Fail)
            doc["witness"] = json{{"r", rep.witness_r}, {"t", rep.witness_t}};
        csv = "status,worst_vform\n" + std::string(status_name(status)) + "," +
              num(rep.worst_vform) + "\n";
    } else if (mode == "inclusion") {
        if (profile_src.empty() || profile2_src.empty())
            throw UsageError("normalmap --mode inclusion needs --profile and --profile2");
        const auto t_grid = linspace(box.t0, box.t1, grid);
        const auto r_grid = linspace(std::max(0.0, box.x0), box.x1, 4 * grid + 1);
        const InclusionReport rep = check_inclusion_radial(
            RadialProfile::from_source(profile_src), RadialProfile::from_source(profile2_src),
            t_grid, r_grid);
        status = rep.status;
        doc["status"] = status_name(status);
        json slices = json::array();
        csv = "t,slice_radius,radius_u,radius_v,ratio\n";
        for (const auto& s : rep.slices) {
            slices.push_back(json{{"t", s.t},
                                  {"slice_radius", s.slice_radius},
                                  {"radius_u", s.radius_u},
                                  {"radius_v", s.radius_v},
                                  {"ratio", s.ratio}});
            csv += num(s.t) + "," + num(s.slice_radius) + "," +
                   num(s.radius_u) + "," + num(s.radius_v) + "," +
                   num(s.ratio) + "\n";
        }
        doc["slices"] = std::move(slices);
    } else {
        throw UsageError("unknown normalmap mode: " + mode);
    }
    out.emit(doc, csv);
    return status_exit(status);
}

int run_mameasure(const std::string& mode, const std::string& field_src, const Point& at,
                  const Box& box, const std::string& rule, int order, int subdivisions,
                  const Output& out) {
    if (field_src.empty()) throw UsageError("mameasure needs --field");
    const Field u = Field::from_source(field_src);
    json doc{{"schema_version", 1}, {"command", "mameasure"}, {"mode", mode}};
    std::string csv;

    if (mode == "density") {
        doc["ma_density"] = ma_density(u, at);
        doc["sma_operator"] = sma_operator(u, at);
        csv = "ma_density,sma_operator\n" + num(ma_density(u, at)) + "," +
              num(sma_operator(u, at)) + "\n";
    } else if (mode == "identity") {
        const double res = jacobian_identity_residual(u, at);
        doc["residual"] = res;
        csv = "residual\n" + num(res) + "\n";
    } else if (mode == "integrate") {
        QuadratureSpec q;
        q.rule = rule == "midpoint" ? QuadratureSpec::Rule::Midpoint
                                    : QuadratureSpec::Rule::GaussLegendre;
        q.order = order;
        q.subdivisions = subdivisions;
        bool maybe_signed = false;
        const Region R{box, 9};
        const bool convex = check_convex_hessian(u, R).status == Status::Pass;
        const double value = ma_measure(u, box, q, &maybe_signed, convex);
        doc["value"] = value;
        doc["maybe_signed"] = maybe_signed;
        if (maybe_signed)
            doc["warning"] = "no convexity verdict: measure may be signed";
        csv = "value\n" + num(value) + "\n";
    } else {
        throw UsageError("unknown mameasure mode: " + mode);
    }
    out.emit(doc, csv);
    return kExitPass;
}

int run_rockafellar(const std::string& mode, const std::string& field_src, const Point& from,
                    const Point& to, int n, double eps, const Output& out) {
    if (field_src.empty()) throw UsageError("rockafellar needs --field");
    const Field u = Field::from_source(field_src);
    json doc{{"schema_version", 1}, {"command", "rockafellar"}, {"mode", mode}};
    std::string csv;

    if (mode == "build") {
        const Chain c = build_chain(u, from, to, n);
        doc["chain_sum"] = chain_sum(c);
        doc["gap_bound"] = gap_bound(c);
        doc["nodes"] = c.nodes.size();
        csv = "i,x,y,t,p1,p2\n";
        for (size_t i = 0; i < c.nodes.size(); ++i) {
            const auto& nd = c.nodes[i];
            csv += num(i) + "," + num(nd.g.x) + "," +
                   num(nd.g.y) + "," + num(nd.g.t) + "," +
                   num(nd.p.a) + "," + num(nd.p.b) + "\n";
        }
    } else if (mode == "reconstruct") {
        const ReconstructResult r = reconstruct(u, from, to, eps);
        doc["value"] = r.value;
        doc["n_used"] = r.n_used;
        doc["gap"] = r.gap;
        doc["exact_difference"] = u(to) - u(from);
        csv = "value,n_used,gap\n" + num(r.value) + "," + num(r.n_used) +
              "," + num(r.gap) + "\n";
    } else {
        throw UsageError("unknown rockafellar mode: " + mode);
    }
    out.emit(doc, csv);
    return kExitPass;
}

// Full invariant suite; machine-readable report, exit 1 on any failure.
int run_verify(uint64_t seed, const Output& out) {
    json checks = json::array();
    bool all_ok = true;
    auto record = [&](const std::string& name, bool ok, double detail) {
        checks.push_back(json{{"name", name}, {"pass", ok}, {"worst", detail}});
        all_ok = all_ok && ok;
    };
    Rng rng(seed);
    auto rnd_point = [&](double s) {
        return Point{rng.uniform(-s, s), rng.uniform(-s, s), rng.uniform(-s, s)};
    };

    {
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const Point a = rnd_point(2), b = rnd_point(2), c = rnd_point(2);
            const Point l = mul(mul(a, b), c), r = mul(a, mul(b, c));
            worst = std::max({worst, std::abs(l.x - r.x), std::abs(l.y - r.y),
                              std::abs(l.t - r.t)});
            const Point gi = mul(a, inverse(a));
            worst = std::max({worst, std::abs(gi.x), std::abs(gi.y), std::abs(gi.t)});
            worst = std::max(worst, std::abs(gauge(dilate(3.0, a)) - 3.0 * gauge(a)));
            worst = std::max(worst, std::abs(distance(mul(c, a), mul(c, b)) - distance(a, b)));
        }
        record("group_algebra", worst <= 1e-12, worst);
    }
    {
        double worst_exact = 0.0, worst_fd = 0.0;
        for (int f = 0; f < 20; ++f) {
            Expr e = constant(0.0);
            for (int m = 0; m < 6; ++m) {
                Expr mono = constant(rng.uniform(-2, 2));
                for (int d = 0; d < 3; ++d) {
                    const int pick = rng.uniform_int(4);
                    if (pick < 3) mono = mul(mono, variable(static_cast<Var>(pick)));
                }
                e = add(e, mono);
            }
            const Field ue = Field::exact(e);
            const Field uf = Field::finite_difference(e);
            for (int i = 0; i < 100; ++i) {
                const Point g = rnd_point(1);
                const Hessian2 he = horizontal_hessian(ue, g);
                worst_exact =
                    std::max(worst_exact, std::abs(he.xy - he.yx + 4 * apply_T(ue, g)));
                worst_exact = std::max(worst_exact, std::abs(commutator_residual(ue, g)));
                const Hessian2 hf = horizontal_hessian(uf, g);
                worst_fd = std::max(worst_fd, std::abs(hf.xy - hf.yx + 4 * apply_T(uf, g)));
                worst_fd = std::max(worst_fd, std::abs(commutator_residual(uf, g)));
            }
        }
        record("commutator_exact", worst_exact <= 1e-10, worst_exact);
        record("commutator_fd", worst_fd <= 1e-4, worst_fd);
    }
    {
        const RadialVerdict v = radial_criterion(RadialField("t^2"), -2, 2, 1001);
        double worst = 0.0;
        for (double m : v.margin) worst = std::max(worst, std::abs(m));
        record("radial_boundary_case", v.status == Status::Pass && worst <= 1e-9, worst);
    }
    {
        const Field u = Field::from_source("x^2+y^2");
        double worst = 0.0;
        for (int N : {10, 100, 1000})
            worst = std::max(worst,
                             std::abs(chain_sum(build_chain(u, identity(), {1, 0, 0}, N)) -
                                      double(N - 1) / N));
        record("rockafellar_chain_sum", worst <= 1e-12, worst);
    }
    {
        const double v = ma_measure(Field::from_source("x^2+y^2"), Box{0, 1, 0, 1, 0, 1},
                                    QuadratureSpec{});
        record("ma_measure_cube", std::abs(v - 4.0) <= 1e-9, std::abs(v - 4.0));
    }
    {
        const ConvexityVerdict h = check_convex_hessian(Field::from_source("-(x^2)"),
                                                        Region{Box{-1, 1, -1, 1, -1, 1}, 9});
        const ConvexityVerdict s = check_convex_segments(
            Field::from_source("-(((x^2+y^2)^2+t^2))"), Region{Box{-1, 1, -1, 1, -1, 1}, 9},
            500, seed);
        record("falsification", h.status == Status::Fail && s.status == Status::Fail, 0.0);
    }

    json doc{{"schema_version", 1},
             {"command", "verify"},
             {"status", all_ok ? "pass" : "fail"},
             {"checks", checks}};
    std::string csv = "name,pass,worst\n";
    for (const auto& c : checks)
        csv += c["name"].get<std::string>() + "," + (c["pass"].get<bool>() ? "1" : "0") + "," +
               num(c["worst"].get<double>()) + "\n";
    out.emit(doc, csv);
    return all_ok ? kExitPass : kExitMathFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Convex analysis on the Heisenberg group H^1"};
    app.require_subcommand(1);
    app.set_config("--config");

    std::string field_src, z_src, profile_src, profile2_src, mode;
    std::string box_str = "-1:1,-1:1,-1:1";
    std::string at_str = "0,0,0", from_str = "0,0,0", to_str = "1,0,0", p_str = "0,0";
    std::string rule = "gauss";
    Output out;
    int grid = 21, samples = 500, dirs = 360, nr = 256, n = 100, order = 5, subdivisions = 8;
    int threads = 0;
    double eps = 1e-3, t_slice = 0.0, R_circle = 1.0;
    uint64_t seed = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", out.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--output", out.path, "output path (default stdout)");
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--threads", threads, "parallelism bound (0 = HEIS_THREADS or 1)");
        cmd->add_option("--box", box_str, "region box x0:x1,y0:y1,t0:t1");
        cmd->add_option("--grid", grid, "grid points per axis");
    };

    auto* conv = app.add_subcommand("convexity", "weak H-convexity tests");
    conv->add_option("--mode", mode, "hessian | segments | radial")->default_val("hessian");
    conv->add_option("--field", field_src, "field expression in x,y,t");
    conv->add_option("--radial-z", z_src, "radial z(t) expression");
    conv->add_option("--samples", samples, "segment samples");
    add_common(conv);

    auto* sub = app.add_subcommand("subdiff", "H-subdifferential verification/reconstruction");
    sub->add_option("--mode", mode, "verify | reconstruct")->default_val("reconstruct");
    sub->add_option("--field", field_src, "field expression");
    sub->add_option("--at", at_str, "base point x,y,t");
    sub->add_option("--p", p_str, "candidate subgradient a,b");
    sub->add_option("--dirs", dirs, "angular directions");
    sub->add_option("--samples", samples, "plane samples for verify");
    add_common(sub);

    auto* nm = app.add_subcommand("normalmap", "radial H-normal-map images");
    nm->add_option("--mode", mode, "circle | disc | monotonicity | inclusion")
        ->default_val("circle");
    nm->add_option("--radial-z", z_src, "radial z(t) expression");
    nm->add_option("--profile", profile_src, "radial profile U(r,t)");
    nm->add_option("--profile2", profile2_src, "second radial profile (inclusion)");
    nm->add_option("--t", t_slice, "t slice");
    nm->add_option("--R", R_circle, "circle/disc radius");
    nm->add_option("--nr", nr, "r-grid size");
    add_common(nm);

    auto* ma = app.add_subcommand("mameasure", "Monge-Ampere density and measure");
    ma->add_option("--mode", mode, "density | integrate | identity")->default_val("density");
    ma->add_option("--field", field_src, "field expression");
    ma->add_option("--at", at_str, "evaluation point x,y,t");
    ma->add_option("--rule", rule, "gauss | midpoint");
    ma->add_option("--order", order, "Gauss-Legendre points per axis");
    ma->add_option("--subdivisions", subdivisions, "cells per axis");
    add_common(ma);

    auto* rock = app.add_subcommand("rockafellar", "horizontal chains and reconstruction");
    rock->add_option("--mode", mode, "build | reconstruct")->default_val("reconstruct");
    rock->add_option("--field", field_src, "field expression");
    rock->add_option("--from", from_str, "start point x,y,t");
    rock->add_option("--to", to_str, "end point x,y,t");
    rock->add_option("--n", n, "pieces per segment (build)");
    rock->add_option("--eps", eps, "gap tolerance (reconstruct)");
    add_common(rock);

    auto* ver = app.add_subcommand("verify", "full invariant suite");
    add_common(ver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    if (threads == 0) {
        if (const char* env = std::getenv("HEIS_THREADS")) threads = std::atoi(env);
        if (threads <= 0) threads = 1;
    }

    try {
        const Box box = parse_box(box_str);
        if (conv->parsed())
            return run_convexity(mode, field_src, z_src, box, grid, samples, seed, out);
        if (sub->parsed())
            return run_subdiff(mode, field_src, parse_point(at_str), parse_hvector(p_str), box,
                               dirs, samples, seed, out);
        if (nm->parsed())
            return run_normalmap(mode, z_src, profile_src, profile2_src, t_slice, R_circle, nr,
                                 box, grid, out);
        if (ma->parsed())
            return run_mameasure(mode, field_src, parse_point(at_str), box, rule, order,
                                 subdivisions, out);
        if (rock->parsed())
            return run_rockafellar(mode, field_src, parse_point(from_str), parse_point(to_str),
                                   n, eps, out);
        if (ver->parsed()) return run_verify(seed, out);
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "expression error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
