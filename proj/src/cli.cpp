#include "affcurv/cli.hpp"

#include "affcurv/catalog.hpp"
#include "affcurv/geometry.hpp"
#include "affcurv/manifest.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

namespace affcurv {

namespace {

Json matrix_json(const Mat& a) {
    Json rows = Json::array();
    for (int i = 0; i < a.rows(); ++i) rows.push_back(to_json(Vec(a.row(i).transpose())));
    return rows;
}

CatalogEntry load_entry(const RunConfig& c) {
    if (!c.manifest.empty() && !c.entry.empty()) throw InputError("--entry and --manifest are exclusive");
    if (!c.manifest.empty()) return load_manifest(c.manifest);
    if (!c.entry.empty()) return catalog_entry(c.entry);
    if (c.command == "kossowski" || c.command == "gauss-scan") return catalog_entry("sigma_kossowski");
    throw InputError(c.command + " needs --entry or --manifest");
}

TransversalFrame select_frame(const CatalogEntry& e, const RunConfig& c) {
    if (c.frame.empty()) return e.frame;
    if (c.frame == "alternative") {
        if (!e.alternative_frame) throw InputError(e.name + " has no alternative frame");
        return *e.alternative_frame;
    }
    return frame_by_name(c.frame, e.atlas.ambient_dim());
}

UnitEllipsoid select_ellipsoid(int m, const RunConfig& c) {
    return c.zeta_shear == 0.0 ? UnitEllipsoid::standard(m) : UnitEllipsoid::sheared(m, c.zeta_shear);
}

TacConfig tac_config(const RunConfig& c) {
    TacConfig t;
    t.sample_count = c.samples;
    t.seed = c.seed;
    t.search.seed_resolution = c.resolution;
    t.search.grad_tol = c.grad_tol;
    t.search.morse_tol = c.morse_tol;
    t.search.dedup_rel = c.dedup_rel;
    t.search.max_newton = c.max_newton;
    t.max_rejection_rate = c.max_rejection;
    t.exec = c.serial ? Execution::serial : Execution::parallel;
    return t;
}

Json rejections_json(const TacReport& r) {
    return Json{{"non_morse", r.non_morse_rejections}, {"draws", r.draws}, {"rate", r.rejection_rate()}};
}

void write_diagnostics(const RunConfig& c, const TacReport& r) {
    if (c.diagnostics.empty()) return;
    std::ofstream out(c.diagnostics);
    if (!out) throw InputError("cannot write " + c.diagnostics);
    write_diagnostics_jsonl(r, out);
}

struct Outcome {
    Json result;
    Json rejections = nullptr;
    std::string csv;  // set when the command has a CSV form
    int code = 0;
};

Outcome cmd_list() {
    Outcome o;
    o.result = Json::array();
    for (const std::string& name : catalog_names()) o.result.push_back(to_json(catalog_entry(name)));
    return o;
}

Outcome cmd_tac(const RunConfig& c, const CatalogEntry& e) {
    const TacReport r = estimate_tau(e.atlas, select_frame(e, c), select_ellipsoid(e.atlas.ambient_dim(), c),
                                     tac_config(c));
    write_diagnostics(c, r);
    Outcome o;
    o.result = to_json(r);
    o.rejections = rejections_json(r);
    std::ostringstream csv;
    write_histogram_csv(r, csv);
    o.csv = csv.str();
    return o;
}

Outcome cmd_certify(const RunConfig& c, const CatalogEntry& e) {
    const MinimalityCertificate cert = certify_minimal(
        e.atlas, select_frame(e, c), select_ellipsoid(e.atlas.ambient_dim(), c), tac_config(c));
    write_diagnostics(c, cert.report);
    Outcome o;
    o.result = to_json(cert);
    o.rejections = rejections_json(cert.report);
    std::ostringstream csv;
    write_histogram_csv(cert.report, csv);
    o.csv = csv.str();
    return o;
}

Outcome cmd_convexity(const RunConfig& c, const CatalogEntry& e) {
    const int n = e.atlas.param_dim();
    const HullInfo hull = affine_hull_dim(e.atlas, c.hull_resolution, c.rank_tol);
    std::optional<ReducedImmersion> current;
    int reductions = 0;
    const TransversalFrame frame = select_frame(e, c);
    while (true) {
        const Atlas& a = current ? current->atlas : e.atlas;
        const TransversalFrame& f = current ? current->frame : frame;
        if (a.ambient_dim() <= hull.dim || f.rank() < 2) break;
        const HullInfo h = current ? affine_hull_dim(a, c.hull_resolution, c.rank_tol) : hull;
        current.emplace(reduce(a, f, h));
        ++reductions;
    }
    const Atlas& a = current ? current->atlas : e.atlas;
    const TransversalFrame& f = current ? current->frame : frame;

    Outcome o;
    o.result = Json{{"hull", to_json(hull)}, {"reductions", reductions}};
    if (a.ambient_dim() != n + 1) {
        o.result["convex"] = false;
        o.result["convexity"] = nullptr;
        o.result["reason"] = "image spans an affine subspace of codimension above one";
        return o;
    }
    const ConvexityReport r = convexity_certify(a, f, select_ellipsoid(a.ambient_dim(), c), c.sample_resolution,
                                                c.supp_tol, c.serial ? Execution::serial : Execution::parallel);
    o.result["convex"] = r.convex;
    o.result["convexity"] = to_json(r);
    return o;
}

Outcome cmd_reduce(const RunConfig& c, const CatalogEntry& e) {
    const HullInfo hull = affine_hull_dim(e.atlas, c.hull_resolution, c.rank_tol);
    const ReducedImmersion red = reduce(e.atlas, select_frame(e, c), hull);
    Outcome o;
    o.result = Json{{"hull", to_json(hull)},
                    {"n", red.atlas.param_dim()},
                    {"m", red.atlas.ambient_dim()},
                    {"frame", red.frame.id()},
                    {"xi", to_json(red.xi)},
                    {"xi_index", red.xi_index},
                    {"kappa", red.kappa},
                    {"basis", matrix_json(red.basis)},
                    {"base_point", to_json(red.base)},
                    {"equiaffine", to_json(red.check)}};
    return o;
}

Outcome cmd_theorem(const RunConfig& c, const CatalogEntry& e) {
    TheoremConfig t;
    t.tac = tac_config(c);
    t.hull_resolution = c.hull_resolution;
    t.convexity_resolution = c.sample_resolution;
    t.rank_tol = c.rank_tol;
    t.supp_tol = c.supp_tol;
    const TheoremVerdict v =
        main_theorem_check(e.atlas, select_frame(e, c), select_ellipsoid(e.atlas.ambient_dim(), c), t);
    write_diagnostics(c, v.minimality.report);
    Outcome o;
    o.result = to_json(v);
    o.rejections = rejections_json(v.minimality.report);
    o.code = v.agreement ? 0 : 2;
    return o;
}

Outcome cmd_kossowski(const RunConfig& c, const CatalogEntry& e) {
    Outcome o;
    const KossowskiReport r = kossowski_check(e, c.grid == 0 ? 2001 : c.grid, c.collar);
    o.result = to_json(r);
    o.code = r.beta_positive ? 0 : 2;
    return o;
}

Outcome cmd_gauss_scan(const RunConfig& c, const CatalogEntry& e) {
    if (e.atlas.param_dim() != 2 || e.atlas.ambient_dim() != 3) throw InputError("gauss-scan needs a surface in R^3");
    int index = 0;
    if (!c.chart.empty()) {
        index = e.atlas.chart_index(c.chart);
        if (index < 0) throw InputError("unknown chart " + c.chart);
    }
    const Chart& chart = e.atlas.chart(index);
    const int g = c.grid == 0 ? 64 : c.grid;
    if (g < 2) throw InputError("--grid must be at least 2");
    const std::vector<int> counts{g, g};
    const std::vector<Vec> params = grid_points(chart.domain(), counts);
    const std::vector<GaussScanRow> rows =
        gauss_scan(chart, select_frame(e, c), select_ellipsoid(3, c), params);

    Outcome o;
    Json list = Json::array();
    for (const GaussScanRow& row : rows) {
        list.push_back(Json{{"u", row.u[0]},
                            {"v", row.u[1]},
                            {"G", row.G_plus},
                            {"G_minus", row.G_minus},
                            {"sigma_min", row.sigma_min}});
    }
    o.result = Json{{"chart", chart.id()}, {"grid", g}, {"rows", list}};
    std::ostringstream csv;
    write_gauss_scan_csv(rows, csv);
    o.csv = csv.str();
    return o;
}

Outcome dispatch(RunConfig& c) {
    if (c.command == "list") return cmd_list();
    const CatalogEntry e = load_entry(c);
    if (c.resolution == 0) c.resolution = e.seed_resolution;
    if (c.sample_resolution == 0) c.sample_resolution = e.sample_resolution;
    if (c.command == "tac") return cmd_tac(c, e);
    if (c.command == "certify-minimal") return cmd_certify(c, e);
    if (c.command == "convexity") return cmd_convexity(c, e);
    if (c.command == "reduce") return cmd_reduce(c, e);
    if (c.command == "theorem") return cmd_theorem(c, e);
    if (c.command == "kossowski") return cmd_kossowski(c, e);
    if (c.command == "gauss-scan") return cmd_gauss_scan(c, e);
    throw InputError("unknown command " + c.command);
}

void validate(const RunConfig& c) {
    if (c.format != "json" && c.format != "csv") throw InputError("--format must be json or csv");
    if (c.samples < 1) throw InputError("--samples must be positive");
    if (c.resolution < 0 || c.sample_resolution < 0 || c.hull_resolution < 2) throw InputError("bad resolution");
    if (!(c.grad_tol > 0 && c.morse_tol > 0 && c.dedup_rel > 0 && c.supp_tol > 0 && c.rank_tol > 0)) {
        throw InputError("tolerances must be positive");
    }
    if (c.max_newton < 1) throw InputError("--max-newton must be positive");
    if (c.threads < 0) throw InputError("--threads must be non-negative");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    f << text;
}

}  // namespace

Json to_json(const RunConfig& c) {
    return Json{{"command", c.command},
                {"entry", c.entry},
                {"manifest", c.manifest},
                {"frame", c.frame},
                {"samples", c.samples},
                {"seed", c.seed},
                {"resolution", c.resolution},
                {"sample_resolution", c.sample_resolution},
                {"hull_resolution", c.hull_resolution},
                {"grad_tol", c.grad_tol},
                {"morse_tol", c.morse_tol},
                {"dedup_rel", c.dedup_rel},
                {"supp_tol", c.supp_tol},
                {"rank_tol", c.rank_tol},
                {"max_newton", c.max_newton},
                {"max_rejection", c.max_rejection},
                {"zeta_shear", c.zeta_shear},
                {"chart", c.chart},
                {"grid", c.grid},
                {"collar", c.collar},
                {"format", c.format}};
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::input:
        case ErrorKind::domain:
            return 1;
        case ErrorKind::verdict:
            return 2;
        case ErrorKind::degenerate:
        case ErrorKind::pathology:
            return 3;
    }
    return 3;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    bool no_timing = false;
    CLI::App app{"Total absolute curvature and convexity of equiaffine immersions", "affcurv"};
    app.set_config("--config", "", "Read options from a key = value file");
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--entry", c.entry, "Catalog entry name (see the list command)");
    app.add_option("--manifest", c.manifest, "Atlas manifest file instead of a catalog entry");
    app.add_option("--frame", c.frame, "Transversal frame override, or 'alternative'");
    app.add_option("--samples", c.samples, "Accepted Morse draws")->capture_default_str();
    app.add_option("--seed", c.seed, "Random seed")->capture_default_str();
    app.add_option("--resolution", c.resolution, "Critical-point seed grid per axis (0: entry default)");
    app.add_option("--sample-resolution", c.sample_resolution, "Convexity sampling per axis (0: entry default)");
    app.add_option("--hull-resolution", c.hull_resolution, "Affine hull sampling per axis")->capture_default_str();
    app.add_option("--grad-tol", c.grad_tol, "Newton gradient tolerance")->capture_default_str();
    app.add_option("--morse-tol", c.morse_tol, "Hessian degeneracy tolerance")->capture_default_str();
    app.add_option("--dedup-rel", c.dedup_rel, "Critical point merge radius / diameter")->capture_default_str();
    app.add_option("--supp-tol", c.supp_tol, "Supporting hyperplane slack / diameter")->capture_default_str();
    app.add_option("--rank-tol", c.rank_tol, "Affine hull rank tolerance")->capture_default_str();
    app.add_option("--max-newton", c.max_newton, "Newton iteration cap")->capture_default_str();
    app.add_option("--max-rejection", c.max_rejection, "Tolerated non-Morse rejection rate")->capture_default_str();
    app.add_option("--zeta-shear", c.zeta_shear, "Shear of the zeta basis (0: standard ellipsoid)");
    app.add_option("--chart", c.chart, "gauss-scan chart id");
    app.add_option("--grid", c.grid, "kossowski u-grid size / gauss-scan nodes per axis");
    app.add_option("--collar", c.collar, "kossowski collar width")->capture_default_str();
    app.add_option("--out", c.out, "Report path (default: standard output)");
    app.add_option("--format", c.format, "json or csv")->capture_default_str();
    app.add_option("--diagnostics", c.diagnostics, "Per-draw JSON lines path");
    app.add_option("--plot", c.plot, "CSV plot data path");
    app.add_option("--threads", c.threads, "OpenMP threads (0: runtime default)");
    app.add_flag("--serial", c.serial, "Use the serial reference kernels");
    app.add_flag("--no-timing", no_timing, "Omit the timing object");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"list", "Catalog entries with known answers"},
        {"tac", "Estimate the total absolute curvature"},
        {"certify-minimal", "Decide whether every Morse height function has two critical points"},
        {"convexity", "Certify convexity, reducing codimension first when possible"},
        {"reduce", "One codimension reduction step"},
        {"theorem", "Minimality versus convex hypersurface; exit 2 on disagreement"},
        {"kossowski", "Degenerate-metric checks on the Kossowski example"},
        {"gauss-scan", "G and sigma_min of the Gauss map differential over a chart grid"}};
    for (const auto& [name, help] : commands) {
        app.add_subcommand(name, help)->callback([&c, name = name] { c.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }
    c.timing = !no_timing;

    try {
        validate(c);
        if (c.threads > 0) set_threads(c.threads);
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o = dispatch(c);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        Json report{{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
                    {"command", c.command},
                    {"config", to_json(c)},
                    {"seed", c.seed},
                    {"result", o.result},
                    {"rejections", o.rejections}};
        if (c.timing) {
            report["timing"] = Json{{"wall_seconds", wall},
                                    {"execution", c.serial ? "serial" : "parallel"},
                                    {"threads", c.serial ? 1 : max_threads()}};
        }

        if (c.format == "csv") {
            if (o.csv.empty()) throw InputError(c.command + " has no CSV form");
            emit(o.csv, c.out, out);
        } else {
            emit(report.dump(2) + "\n", c.out, out);
        }
        if (!c.plot.empty()) emit_plot_data(report, c.plot);
        if (o.code == 2) err << "affcurv: minimality and convex-hypersurface verdicts disagree\n";
        return o.code;
    } catch (const Error& e) {
        err << "affcurv: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "affcurv: " << e.what() << "\n";
        return 3;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"affcurv"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace affcurv
