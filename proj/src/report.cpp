#include "affcurv/report.hpp"

#include "affcurv/error.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace affcurv {

namespace {

std::string num(double v) {
    std::ostringstream s;
    s << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return s.str();
}

Json optional_json(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const Vec& v) {
    Json a = Json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Json to_json(const DrawDiagnostic& d) {
    return Json{{"draw", d.draw},
                {"zeta_coefficients", to_json(d.coefficients)},
                {"seeds", d.seeds},
                {"converged", d.converged},
                {"diverged", d.diverged},
                {"critical_points", d.count},
                {"index_sum", d.index_sum},
                {"morse", d.morse},
                {"refinements", d.refinements},
                {"rejected", !d.morse}};
}

Json to_json(const TacReport& r) {
    Json hist = Json::array();
    for (const auto& [count, freq] : r.histogram) hist.push_back(Json{{"count", count}, {"frequency", freq}});
    return Json{{"tau_estimate", r.tau_estimate},
                {"stderr", r.std_error},
                {"histogram", hist},
                {"non_morse_rejections", r.non_morse_rejections},
                {"rejection_rate", r.rejection_rate()},
                {"sample_count", r.sample_count},
                {"draws", r.draws},
                {"ellipsoid", r.ellipsoid_id},
                {"frame", r.frame_id},
                {"euler_characteristic", optional_json(r.euler_characteristic)},
                {"index_sum_mismatches", r.index_sum_mismatches},
                {"refined_draws", r.refined_draws},
                {"equiaffine_max_nabla_theta", r.equiaffine_max < 0 ? Json(nullptr) : Json(r.equiaffine_max)},
                {"equiaffine_warning", r.equiaffine_warning}};
}

Json to_json(const MinimalityCertificate& c) {
    Json witness = nullptr;
    if (c.witness) {
        witness = Json{{"draw", c.witness->draw},
                       {"phi", to_json(c.witness->phi.coeffs())},
                       {"critical_points", c.witness->count}};
    }
    return Json{{"minimal", c.minimal}, {"witness", witness}, {"tau", to_json(c.report)}};
}

Json to_json(const HullInfo& h) {
    return Json{{"dimension", h.dim}, {"singular_values", to_json(h.singular_values)}, {"base_point", to_json(h.base)}};
}

Json to_json(const ConvexityReport& r) {
    Json worst = nullptr;
    if (r.worst_sample >= 0) {
        worst = Json{{"sample", r.worst_sample},
                     {"chart", r.worst_chart},
                     {"u", to_json(r.worst_u)},
                     {"violation", r.worst_violation}};
    }
    return Json{{"convex", r.convex},
                {"supporting_fraction", r.supporting_fraction},
                {"samples", r.samples},
                {"worst", worst}};
}

Json to_json(const EquiaffineReport& r) {
    return Json{{"max_nabla_theta", r.max_nabla_theta},
                {"min_abs_theta", r.min_abs_theta},
                {"max_abs_theta", r.max_abs_theta},
                {"max_residual", r.max_residual},
                {"samples", r.samples}};
}

Json to_json(const TheoremVerdict& v) {
    Json j{{"n", v.n},
           {"m", v.m},
           {"minimal", v.minimality.minimal},
           {"hull_dim", v.hull.dim},
           {"hull_is_hyperplane", v.hull_is_hyperplane},
           {"convex", v.convex},
           {"agreement", v.agreement},
           {"reductions", v.reductions},
           {"tau_preserved", v.tau_preserved ? Json(*v.tau_preserved) : Json(nullptr)},
           {"minimality", to_json(v.minimality)},
           {"hull", to_json(v.hull)},
           {"reduced_tau", v.reduced_tau ? to_json(*v.reduced_tau) : Json(nullptr)},
           {"reduced_equiaffine_max", v.reduced_equiaffine_max < 0 ? Json(nullptr) : Json(v.reduced_equiaffine_max)},
           {"convexity", v.convexity ? to_json(*v.convexity) : Json(nullptr)}};
    return j;
}

Json to_json(const KossowskiReport& r) {
    return Json{{"beta_positive", r.beta_positive},
                {"lambda_at_0", r.lambda_at_0},
                {"dlambda_at_0", r.dlambda_at_0},
                {"diagnostics",
                 {{"beta_min", r.beta_min},
                  {"beta_min_u", r.beta_min_u},
                  {"dlambda_closed_form", r.dlambda_closed_form},
                  {"det_alpha_vs_u2_beta_max_rel_error", r.det_alpha_max_rel_error},
                  {"det_alpha_vs_u2_beta_worst_u", r.det_alpha_worst_u},
                  {"det_alpha_matches_u2_beta", r.det_alpha_matches},
                  {"det_alpha_vs_u2_beta_over_E2_max_rel_error", r.det_alpha_e2_max_rel_error},
                  {"grid", r.grid},
                  {"collar", r.collar},
                  {"v", r.v}}}};
}

Json to_json(const KnownTruth& k) {
    return Json{{"tau", k.tau ? Json(*k.tau) : Json(nullptr)},
                {"convex", k.convex ? Json(*k.convex) : Json(nullptr)},
                {"hull_dim", optional_json(k.hull_dim)},
                {"betti", k.betti},
                {"degeneracy_locus", k.degeneracy_locus ? Json(*k.degeneracy_locus) : Json(nullptr)}};
}

Json to_json(const CatalogEntry& e) {
    Json charts = Json::array();
    for (const Chart& c : e.atlas.charts()) {
        Json periodic = Json::array();
        for (bool p : c.domain().periodic) periodic.push_back(p);
        charts.push_back(Json{{"id", c.id()},
                              {"domain_lo", to_json(c.domain().lo)},
                              {"domain_hi", to_json(c.domain().hi)},
                              {"periodic", periodic},
                              {"orientation", c.orientation()}});
    }
    return Json{{"name", e.name},
                {"description", e.description},
                {"n", e.atlas.param_dim()},
                {"m", e.atlas.ambient_dim()},
                {"frame", e.frame.id()},
                {"charts", charts},
                {"seed_resolution", e.seed_resolution},
                {"sample_resolution", e.sample_resolution},
                {"known", to_json(e.known)}};
}

void write_diagnostics_jsonl(const TacReport& r, std::ostream& out) {
    for (const DrawDiagnostic& d : r.diagnostics) out << to_json(d).dump() << '\n';
}

void write_histogram_csv(const TacReport& r, std::ostream& out) {
    out << "count,frequency\n";
    for (const auto& [count, freq] : r.histogram) out << count << ',' << freq << '\n';
}

void write_gauss_scan_csv(const std::vector<GaussScanRow>& rows, std::ostream& out) {
    out << "u,v,G,sigma_min\n";
    for (const GaussScanRow& row : rows) {
        out << num(row.u[0]) << ',' << num(row.u.size() > 1 ? row.u[1] : 0.0) << ',' << num(row.G_plus) << ','
            << num(row.sigma_min) << '\n';
    }
}

void emit_plot_data(const Json& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    const std::string command = report.value("command", std::string());
    const Json& result = report.contains("result") ? report.at("result") : Json();
    if (command == "gauss-scan") {
        out << "u,v,G,sigma_min\n";
        for (const Json& row : result.value("rows", Json::array())) {
            out << num(row.at("u")) << ',' << num(row.at("v")) << ',' << num(row.at("G")) << ','
                << num(row.at("sigma_min")) << '\n';
        }
    } else {
        out << "count,frequency\n";
        Json hist = Json::array();
        if (result.contains("histogram")) hist = result.at("histogram");
        else if (result.contains("tau")) hist = result.at("tau").value("histogram", Json::array());
        for (const Json& h : hist) out << h.at("count").get<int>() << ',' << h.at("frequency").get<int>() << '\n';
    }
    if (!out) throw InputError("failed writing " + path);
}

}  // namespace affcurv
