#include "affcurv/catalog.hpp"

#include "affcurv/error.hpp"
#include "affcurv/forms.hpp"

#include <numbers>

namespace affcurv {

namespace {

constexpr double pi = std::numbers::pi;

Box box(std::vector<double> lo, std::vector<double> hi, std::vector<bool> periodic) {
    return {Eigen::Map<Vec>(lo.data(), static_cast<Eigen::Index>(lo.size())),
            Eigen::Map<Vec>(hi.data(), static_cast<Eigen::Index>(hi.size())), std::move(periodic)};
}

Chart analytic_chart(std::string id, const Form& form, Box domain, int orientation, std::optional<Box> valid) {
    return Chart(std::move(id), form.ambient_dim, std::move(domain), AnalyticSource{form.map}, orientation,
                 std::move(valid));
}

// Polar margin of the spherical charts; the rotated copy covers the excised caps.
constexpr double kMargin = 0.3;
constexpr double kValidMargin = 0.05;

std::vector<Chart> sphere2_charts(const Form& a, const Form& b) {
    const Box dom = box({kMargin, -pi}, {pi - kMargin, pi}, {false, true});
    const Box val = box({kValidMargin, -pi}, {pi - kValidMargin, pi}, {false, true});
    return {analytic_chart("polar", a, dom, 1, val), analytic_chart("rotated", b, dom, 1, val)};
}

CatalogEntry sphere_n2() {
    Atlas atlas("sphere_centroaffine_n2",
                sphere2_charts(sphere_form(2), linear_image(sphere_form(2), pole_rotation3())), {1, 0, 1});
    CatalogEntry e{"sphere_centroaffine_n2",
                   "unit sphere in R^3 with the centro-affine transversal field xi = f",
                   std::move(atlas),
                   position_frame(),
                   euclidean_normal_frame(+1),
                   {2.0, true, 3, {1, 0, 1}, std::nullopt}};
    return e;
}

CatalogEntry sphere_n3() {
    const Box dom = box({kMargin, kMargin, -pi}, {pi - kMargin, pi - kMargin, pi}, {false, false, true});
    const Box val = box({kValidMargin, kValidMargin, -pi}, {pi - kValidMargin, pi - kValidMargin, pi},
                        {false, false, true});
    std::vector<Chart> charts{analytic_chart("polar", sphere_form(3), dom, 1, val),
                              analytic_chart("permuted", linear_image(sphere_form(3), pole_permutation4()), dom, 1,
                                             val)};
    Atlas atlas("sphere_centroaffine_n3", std::move(charts), {1, 0, 0, 1});
    CatalogEntry e{"sphere_centroaffine_n3",
                   "unit 3-sphere in R^4 with the centro-affine transversal field xi = f",
                   std::move(atlas),
                   position_frame(),
                   std::nullopt,
                   {2.0, true, 4, {1, 0, 0, 1}, std::nullopt}};
    e.seed_resolution = 20;
    e.sample_resolution = 14;
    return e;
}

CatalogEntry sphere_in_r4() {
    Mat embed = Mat::Zero(4, 3);
    embed.topRows(3).setIdentity();
    const Form a = linear_image(sphere_form(2), embed);
    const Form b = linear_image(linear_image(sphere_form(2), pole_rotation3()), embed);
    Atlas atlas("sphere_in_R4", sphere2_charts(a, b), {1, 0, 1});
    CatalogEntry e{"sphere_in_R4",
                   "unit sphere in the hyperplane x_4 = 0 of R^4, frame (outward normal, e_4)",
                   std::move(atlas),
                   normal_plus_constant_frame(Vec::Unit(4, 3)),
                   std::nullopt,
                   {2.0, true, 3, {1, 0, 1}, std::nullopt}};
    return e;
}

CatalogEntry torus() {
    const Box dom = box({-pi, -pi}, {pi, pi}, {true, true});
    std::vector<Chart> charts{analytic_chart("main", torus_form(2.0, 1.0), dom, -1, std::nullopt)};
    Atlas atlas("torus_revolution", std::move(charts), {1, 2, 1});
    CatalogEntry e{"torus_revolution",
                   "torus of revolution with radii R = 2, a = 1 and the outward unit normal",
                   std::move(atlas),
                   euclidean_normal_frame(+1),
                   std::nullopt,
                   {4.0, false, 3, {1, 2, 1}, std::nullopt}};
    return e;
}

CatalogEntry dumbbell() {
    Atlas atlas("dumbbell", sphere2_charts(dumbbell_form(false), dumbbell_form(true)), {1, 0, 1});
    CatalogEntry e{"dumbbell",
                   "sphere squeezed to a neck: (x W(z), y W(z), z), W(z) = 1 - 0.6 exp(-8 z^2)",
                   std::move(atlas),
                   euclidean_normal_frame(+1),
                   std::nullopt,
                   {std::nullopt, false, 3, {1, 0, 1}, std::nullopt}};
    return e;
}

CatalogEntry sigma_entry() {
    const double top = 0.49;  // |E(0.49)| ~ 0.5, inside the caps
    const Box dom = box({-sigma::u_max, -pi}, {top, pi}, {false, true});
    const Box val = box({-0.95, -pi}, {sigma::u_max - 5e-4, pi}, {false, true});
    const Box cap = box({-0.7, -0.7}, {0.7, 0.7}, {false, false});
    const Box cap_val = box({-1.1, -1.1}, {1.1, 1.1}, {false, false});
    std::vector<Chart> charts{analytic_chart("f_plus", sigma_form(+1), dom, -1, val),
                              analytic_chart("f_minus", sigma_form(-1), dom, 1, val),
                              analytic_chart("cap_top", sigma_cap_form(+1), cap, 1, cap_val),
                              analytic_chart("cap_bottom", sigma_cap_form(-1), cap, -1, cap_val)};
    Atlas atlas("sigma_kossowski", std::move(charts), {1, 0, 1});
    CatalogEntry e{"sigma_kossowski",
                   "convex surface (z - r)^4 + (z + r)^4 = 16 with the transversal field of the Kossowski example",
                   std::move(atlas),
                   sigma::frame(),
                   std::nullopt,
                   {2.0, true, 3, {1, 0, 1}, std::string("u = 0 on f_plus and f_minus (two circles)")}};
    return e;
}

}  // namespace

std::vector<std::string> catalog_names() {
    return {"sphere_centroaffine_n2", "sphere_centroaffine_n3", "sphere_in_R4",
            "sigma_kossowski",        "torus_revolution",       "dumbbell"};
}

CatalogEntry catalog_entry(const std::string& name) {
    if (name == "sphere_centroaffine_n2") return sphere_n2();
    if (name == "sphere_centroaffine_n3") return sphere_n3();
    if (name == "sphere_in_R4") return sphere_in_r4();
    if (name == "sigma_kossowski") return sigma_entry();
    if (name == "torus_revolution") return torus();
    if (name == "dumbbell") return dumbbell();
    throw InputError("unknown catalog entry: " + name);
}

namespace sigma {

namespace {
Taylor2 at(double u) { return Taylor2::variable(u, 0); }
}  // namespace

double E(double u) { return sigma_E(Taylor2(u)).v; }
double F(double u) { return sigma_F(Taylor2(u)).v; }
double dE(double u) { return sigma_E(at(u)).g[0]; }
double dF(double u) { return sigma_F(at(u)).g[0]; }
double delta(double u) { return std::hypot(dE(u), dF(u)); }

Vec xi(double u, double v, int sign) {
    const double d = delta(u);
    Vec x(3);
    x << dF(u) * std::cos(v), dF(u) * std::sin(v), -(sign >= 0 ? 1.0 : -1.0) * dE(u);
    return x / d;
}

double beta(double u) {
    const double q = 1.0 - u * u * u * u;
    const double r = std::pow(q, 0.25);
    const double r3 = std::pow(q, 0.75);
    const double d = delta(u);
    return 6.0 / (d * d * std::pow(q, 13.0 / 4.0)) * (-u + r) * (-1.0 + u * u * u * u + u * r3) *
           (-1.0 + u * u * u * r + u * r3);
}

TransversalFrame frame() {
    const TransversalFrame inward = euclidean_normal_frame(-1);
    return TransversalFrame("sigma_xi", 1, [inward](const Chart& chart, const Vec& u, const ImmersionJet& jet) {
        if (chart.id() == "f_plus") return FrameValues{xi(u[0], u[1], +1), 1.0};
        if (chart.id() == "f_minus") return FrameValues{xi(u[0], u[1], -1), 1.0};
        return inward.eval(chart, u, jet);
    });
}

}  // namespace sigma

double sigma_det_alpha(const CatalogEntry& entry, double u, double v) {
    const int c = entry.atlas.chart_index("f_plus");
    if (c < 0) throw InputError("sigma_det_alpha: entry has no f_plus chart");
    const Chart& chart = entry.atlas.chart(c);
    Vec p(2);
    p << u, v;
    const ImmersionJet jet = chart.eval_jet(p);
    const FundamentalData fd = decompose(jet, entry.frame.eval(chart, p, jet));
    return fd.alpha_at(0, 0, 0) * fd.alpha_at(0, 1, 1) - fd.alpha_at(0, 0, 1) * fd.alpha_at(0, 0, 1);
}

KossowskiReport kossowski_check(const CatalogEntry& entry, int grid, double collar, double lambda_step) {
    if (grid < 3 || grid % 2 == 0) throw InputError("kossowski_check: grid must be odd and at least 3");
    KossowskiReport rep;
    rep.grid = grid;
    rep.collar = collar;

    auto lambda = [&](double u) {
        const double d = sigma_det_alpha(entry, u, rep.v);
        return (u < 0 ? -1.0 : 1.0) * std::sqrt(std::abs(d));
    };

    const double reach = sigma::u_max - collar;
    const int half = grid / 2;
    rep.beta_positive = true;
    rep.beta_min = std::numeric_limits<double>::infinity();
    for (int k = -half; k <= half; ++k) {
        if (k == 0) continue;
        const double u = reach * k / half;
        const double det = sigma_det_alpha(entry, u, rep.v);
        const double b = det / (u * u);
        if (b < rep.beta_min) {
            rep.beta_min = b;
            rep.beta_min_u = u;
        }
        if (!(b > 0.0)) rep.beta_positive = false;

        const double closed = u * u * sigma::beta(u);
        const double rel = std::abs(det - closed) / std::abs(closed);
        if (rel > rep.det_alpha_max_rel_error) {
            rep.det_alpha_max_rel_error = rel;
            rep.det_alpha_worst_u = u;
        }
        const double e = sigma::E(u);
        const double rel_e2 = std::abs(det - closed / (e * e)) / std::abs(closed / (e * e));
        rep.det_alpha_e2_max_rel_error = std::max(rep.det_alpha_e2_max_rel_error, rel_e2);
    }
    rep.det_alpha_matches = rep.det_alpha_max_rel_error <= 1e-6;
    rep.lambda_at_0 = lambda(0.0);
    rep.dlambda_at_0 = (lambda(lambda_step) - lambda(-lambda_step)) / (2.0 * lambda_step);
    rep.dlambda_closed_form = std::sqrt(sigma::beta(0.0));
    if (!rep.beta_positive) {
        throw VerdictError("kossowski_check: beta <= 0 at u = " + std::to_string(rep.beta_min_u));
    }
    return rep;
}

}  // namespace affcurv
